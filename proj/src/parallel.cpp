#include "toa/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toa::par {

int max_threads() {
#ifdef _OPENMP
  int cap = 0;
  if (const char* env = std::getenv("TOA_THREADS")) {
    cap = std::atoi(env);
    if (cap < 0) cap = 0;
  }
  const int avail = omp_get_max_threads();
  return (cap == 0) ? avail : (cap < avail ? cap : avail);
#else
  return 1;
#endif
}

}  // namespace toa::par
