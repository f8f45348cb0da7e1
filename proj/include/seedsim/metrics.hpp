#pragma once

#include <limits>

namespace seedsim {

// Relative coverage gain of a sequential run over its paired single-stage
// reference. Undefined (NaN) when the reference covered nothing; such
// records are excluded from aggregates and counted separately.
inline double coverage_ref(double cov_seq, double cov_ss) {
  if (!(cov_ss > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (cov_seq - cov_ss) / cov_ss;
}

// Relative duration change, same convention. A single-stage run whose last
// activation is stage 0 has duration 0 and yields NaN here.
inline double duration_ref(double dur_seq, double dur_ss) {
  if (!(dur_ss > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (dur_seq - dur_ss) / dur_ss;
}

}  // namespace seedsim
