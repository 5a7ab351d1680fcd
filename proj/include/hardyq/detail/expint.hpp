#pragma once

#include <complex>

namespace hardyq::detail {

// Principal-branch exponential integral E1(z) = int_1^inf exp(-z*t)/t dt,
// valid for |arg z| < pi (z not on the negative real axis, z != 0).
// Power series for small |z|, modified-Lentz continued fraction otherwise.
std::complex<double> expint_e1(std::complex<double> z);

}  // namespace hardyq::detail
