#pragma once

namespace toa::par {

// Thread cap for the OpenMP kernels.  TOA_THREADS=0 or unset means "use all";
// any positive value caps the team size.  Returns 1 when built without OpenMP.
int max_threads();

}  // namespace toa::par
