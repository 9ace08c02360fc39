#include "scd/window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scd {

std::vector<double> make_window(WindowKind kind, std::size_t size) {
    if (kind != WindowKind::hamming)
        throw std::invalid_argument("make_window: unknown window kind");
    if (size < 2)
        throw std::invalid_argument("make_window: size must be >= 2");

    std::vector<double> w(size);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(size - 1);
    for (std::size_t n = 0; n < size; ++n)
        w[n] = 0.54 - 0.46 * std::cos(step * static_cast<double>(n));
    return w;
}

} // namespace scd
