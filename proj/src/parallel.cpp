#include "ergrates/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ergrates {

std::size_t worker_count() {
  if (const char* env = std::getenv("ERGRATES_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
      // Fall through to the hardware default on malformed values.
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace ergrates
