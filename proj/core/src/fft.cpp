#include "scd/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scd {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

void fft_inplace(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<std::complex<double>> fft_real(const std::vector<double>& frame,
                                           std::size_t fft_size) {
    if (frame.size() > fft_size)
        throw std::invalid_argument("fft_real: frame longer than fft size");
    std::vector<std::complex<double>> data(fft_size);
    for (std::size_t i = 0; i < frame.size(); ++i) data[i] = frame[i];
    fft_inplace(data);
    return data;
}

} // namespace scd
