#pragma once

#include <complex>
#include <vector>

namespace hardyq::detail {

using cplx = std::complex<double>;

// Unnormalized DFT, any length:  X_j = sum_k x_k exp(-+ 2*pi*i*j*k/n),
// minus sign for inverse=false. Power-of-two lengths run radix-2 in place;
// other lengths go through Bluestein's chirp convolution.
std::vector<cplx> dft(std::vector<cplx> x, bool inverse);

}  // namespace hardyq::detail
