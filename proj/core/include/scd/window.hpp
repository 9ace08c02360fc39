#pragma once

#include <cstddef>
#include <vector>

namespace scd {

enum class WindowKind { hamming };

/// Analysis window weights. Hamming: w[n] = 0.54 - 0.46 cos(2 pi n / (size-1)).
std::vector<double> make_window(WindowKind kind, std::size_t size);

} // namespace scd
