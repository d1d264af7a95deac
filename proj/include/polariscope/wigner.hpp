#pragma once

#include "polariscope/half_int.hpp"

namespace polariscope {

// Clebsch-Gordan coefficient <j1,m1; j2,m2 | J,M> in the
// Condon-Shortley phase convention.  Returns 0 when m1+m2 != M or the
// (j1,j2,J) triangle condition fails.  Throws std::domain_error for
// projections that are invalid for their spins (|m| > j or parity
// mismatch).
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M);

// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}.  Invalid triads return 0 by
// convention.
double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5,
                HalfInt j6);

}  // namespace polariscope
