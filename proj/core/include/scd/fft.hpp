#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace scd {

/// In-place iterative radix-2 FFT, unnormalized forward convention
/// (X[k] = sum_n x[n] exp(-2 pi i n k / N)). Size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);

/// Forward transform of a real frame zero-padded to fft_size.
std::vector<std::complex<double>> fft_real(const std::vector<double>& frame,
                                           std::size_t fft_size);

bool is_power_of_two(std::size_t n);

} // namespace scd
