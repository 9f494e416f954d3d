#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "ncbv/ainfinity.hpp"
#include "ncbv/element.hpp"
#include "ncbv/frobenius.hpp"

namespace ncbv {

using Json = nlohmann::ordered_json;

inline Json space_to_json(const GradedSymplecticSpace& s) {
  Json letters = Json::array();
  for (Letter l = 0; l < s.size(); ++l) letters.push_back({{"name", s.name(l)}, {"degree", s.degree(l)}});
  Json pairing = Json::array();
  for (const auto& row : s.pairing()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(format_scalar(v));
    pairing.push_back(std::move(r));
  }
  return {{"letters", std::move(letters)}, {"pairing", std::move(pairing)}};
}

inline SpacePtr space_from_json(const Json& j) {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (const auto& l : j.at("letters")) {
    names.push_back(l.at("name").get<std::string>());
    degrees.push_back(l.at("degree").get<int>());
  }
  ScalarMatrix pairing;
  for (const auto& row : j.at("pairing")) {
    auto& r = pairing.emplace_back();
    for (const auto& v : row) r.push_back(parse_scalar(v.get<std::string>()));
  }
  return std::make_shared<GradedSymplecticSpace>(std::move(names), std::move(degrees),
                                                 std::move(pairing));
}

inline Json element_to_json(const Element& e) {
  Json out = Json::array();
  for (const auto& [m, c] : e.terms()) {
    Json words = Json::array();
    for (const auto& w : m.words) {
      Json letters = Json::array();
      for (Letter l : w.letters) letters.push_back(e.space().name(l));
      words.push_back(std::move(letters));
    }
    out.push_back({{"gamma", m.gamma_power},
                   {"nu", m.nu_power},
                   {"words", std::move(words)},
                   {"coeff", format_scalar(c)}});
  }
  return out;
}

/// Parses the term list produced by element_to_json. Letters are looked up by
/// name; raw words are canonicalized, so hand-written input need not be.
inline Element element_from_json(const Json& j, SpacePtr space, Flavor flavor) {
  Element e(space, flavor);
  for (const auto& t : j) {
    std::vector<RawWord> raw;
    for (const auto& w : t.at("words")) {
      auto& r = raw.emplace_back();
      for (const auto& name : w) {
        auto l = space->find(name.get<std::string>());
        if (!l) throw std::invalid_argument("unknown letter " + name.get<std::string>());
        r.push_back(*l);
      }
    }
    const unsigned gamma = t.value("gamma", 0u), nu = t.value("nu", 0u);
    const Scalar c = parse_scalar(t.at("coeff").get<std::string>());
    if (flavor == Flavor::cyclic) {
      e.add_raw(gamma, nu, raw, c);
      continue;
    }
    if (gamma || nu) throw std::invalid_argument("commutative terms carry no γ or ν");
    std::vector<Letter> letters;
    for (const auto& r : raw) {
      if (r.size() != 1) throw std::invalid_argument("commutative terms are products of letters");
      letters.push_back(r[0]);
    }
    e.add_product(letters, c);
  }
  return e;
}

inline Json scalars_to_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_scalar(x));
  return out;
}

inline std::vector<Scalar> scalars_from_json(const Json& j) {
  std::vector<Scalar> out;
  for (const auto& x : j) out.push_back(parse_scalar(x.get<std::string>()));
  return out;
}

inline Json matrix_to_json(const ScalarMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(scalars_to_json(row));
  return out;
}

inline ScalarMatrix matrix_from_json(const Json& j) {
  ScalarMatrix out;
  for (const auto& row : j) out.push_back(scalars_from_json(row));
  return out;
}

/// {basis, degrees, letters, pairing, maps: {"k": flat table}, unit?}. Table
/// entry (i_1..i_k, j) sits at ((i_1·n + i_2)·n + …)·n + j.
inline Json ainfinity_to_json(const CyclicAInfinity& a) {
  Json maps = Json::object();
  for (const auto& [k, t] : a.maps()) maps[std::to_string(k)] = scalars_to_json(t);
  Json j{{"basis", a.basis()},
         {"degrees", a.degrees()},
         {"letters", a.letter_names()},
         {"pairing", matrix_to_json(a.pairing())},
         {"maps", std::move(maps)}};
  if (a.unit()) j["unit"] = scalars_to_json(*a.unit());
  return j;
}

inline CyclicAInfinity ainfinity_from_json(const Json& j) {
  CyclicAInfinity a(j.at("basis").get<std::vector<std::string>>(), j.at("degrees").get<std::vector<int>>(),
                    matrix_from_json(j.at("pairing")),
                    j.contains("letters") ? j.at("letters").get<std::vector<std::string>>() : std::vector<std::string>{});
  for (const auto& [k, t] : j.at("maps").items()) a.set_map(static_cast<unsigned>(std::stoul(k)), scalars_from_json(t));
  if (j.contains("unit")) a.set_unit(scalars_from_json(j.at("unit")));
  a.validate();
  return a;
}

/// {mult: [a][b] → coefficient vector of e_a e_b, pairing, unit}.
inline Json frobenius_to_json(const FrobeniusAlgebra& f) {
  Json mult = Json::array();
  for (std::size_t a = 0; a < f.dim(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < f.dim(); ++b) row.push_back(scalars_to_json(f.multiply(f.basis(a), f.basis(b))));
    mult.push_back(std::move(row));
  }
  return {{"mult", std::move(mult)}, {"pairing", matrix_to_json(f.pairing())}, {"unit", scalars_to_json(f.unit())}};
}

inline FrobeniusAlgebra frobenius_from_json(const Json& j) {
  FrobeniusAlgebra::Table mult;
  for (const auto& row : j.at("mult")) {
    auto& r = mult.emplace_back();
    for (const auto& v : row) r.push_back(scalars_from_json(v));
  }
  return FrobeniusAlgebra(std::move(mult), matrix_from_json(j.at("pairing")), scalars_from_json(j.at("unit")));
}

}  // namespace ncbv
