#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace ncbv {

/// Worker count: NCBV_THREADS when set to a positive integer, otherwise the
/// available hardware parallelism.
inline unsigned worker_threads() {
  if (const char* env = std::getenv("NCBV_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ncbv
