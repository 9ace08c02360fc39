#pragma once

#include <span>

namespace scd {

/// Kahan compensated accumulator. Normalization and entropy sums run over
/// up to ~10^4 terms and feed tolerances down to 1e-12, where naive
/// summation error is already visible.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double kahan_sum(std::span<const double> values) {
    KahanSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

} // namespace scd
