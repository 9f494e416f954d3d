#pragma once

#include <memory>
#include <map>
#include <random>
#include <vector>

#include "ncbv/ncbv.hpp"

namespace ncbv::testing {

using ncbv::ElementShape;
using ncbv::random_cyclic;
using ncbv::random_polynomial;
using ncbv::random_space;
using ncbv::small_rational;

/// Two letters x (degree 0) and ξ (degree -1) with ω(x,ξ) = 1.
inline SpacePtr plane() {
  return std::make_shared<GradedSymplecticSpace>(
      std::vector<std::string>{"x", "ξ"}, std::vector<int>{0, -1},
      ScalarMatrix{{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}});
}

/// The plane with d*ξ = -x.
inline SpacePtr plane_with_differential() {
  auto s = std::make_shared<GradedSymplecticSpace>(*plane());
  s->set_differential({{}, {{0, Scalar(-1)}}});
  return s;
}

inline int sign(int exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace ncbv::testing
