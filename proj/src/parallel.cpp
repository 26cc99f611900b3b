#include "schur2/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace schur2 {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCHUR2_WORKERS")) {
    int v = 0;
    const auto res = std::from_chars(env, env + std::strlen(env), v);
    if (res.ec == std::errc{} && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace schur2
