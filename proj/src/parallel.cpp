#include "redblue/parallel.hpp"

#include <cstdlib>

namespace redblue {

int default_worker_count() {
  if (const char* env = std::getenv("REDBLUE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace redblue
