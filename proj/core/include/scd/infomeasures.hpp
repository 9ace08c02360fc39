#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "scd/spectrogram.hpp"

namespace scd {

/// All entropies and divergences are in bits (log base 2).
using EntropyBits = double;

/// Rényi order. Nonnegative; exactly 0 routes to support counting and
/// exactly 1 to the Shannon/Kullback closed forms.
class Alpha {
public:
    explicit Alpha(double value) : value_(value) {
        if (!(value >= 0.0) || value > 1e12)
            throw std::invalid_argument("Alpha: order must be finite and >= 0");
    }
    double value() const { return value_; }

private:
    double value_;
};

/// Thrown by renyi_divergence when q has mass on a bin where p is zero.
struct SupportMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rényi entropy of a unit-sum density, H_a = log2(sum p^a) / (1 - a).
///
/// a = 0 counts the nonzero entries, a = 1 is Shannon entropy with
/// 0 log 0 = 0. For a > 8 the power sum is evaluated in log space with
/// the largest entry factored out, so tiny spectrogram coefficients
/// raised to large orders do not underflow.
EntropyBits renyi_entropy(std::span<const double> density, Alpha alpha);

inline EntropyBits renyi_entropy(const ProbFrame& frame, Alpha alpha) {
    return renyi_entropy(std::span<const double>(frame.values), alpha);
}

/// Rényi information I_a(q, p) = log2(sum q^a / p^(a-1)) / (a - 1),
/// Kullback divergence at a = 1. Bins where q is zero contribute
/// nothing; q mass on a zero bin of p is an error. Evaluated relative to
/// q's own sum so that I(p, p) is exactly zero for every order.
EntropyBits renyi_divergence(std::span<const double> q,
                             std::span<const double> p, Alpha alpha);

inline EntropyBits renyi_divergence(const ProbFrame& q, const ProbFrame& p,
                                    Alpha alpha) {
    return renyi_divergence(std::span<const double>(q.values),
                            std::span<const double>(p.values), alpha);
}

/// Lattice-corrected block entropy: Rényi entropy of the jointly
/// normalized block plus log2(a b), where a and b are the time and
/// frequency steps of the sampling grid. The correction keeps the value
/// stable across hop and FFT size changes.
EntropyBits block_entropy(const ProbBlock& block, double time_step_s,
                          double freq_step_hz, Alpha alpha);

/// Expected entropy after appending one spectrally coherent frame to a
/// block of length frames: current + log2((L+1)/L).
EntropyBits predicted_entropy(EntropyBits current, std::size_t length);

/// True iff the two frames hold the same coefficient multiset within
/// tol, which makes their entropies equal at every order. Test-suite
/// surface.
bool is_rearrangement(std::span<const double> frame_a,
                      std::span<const double> frame_b, double tol = 1e-12);

/// Raise every entry to at least relative_floor / size and renormalize;
/// applied to both densities ahead of divergence evaluation since real
/// spectrogram frames never share exact zero sets.
std::vector<double> floor_density(std::span<const double> density,
                                  double relative_floor);

} // namespace scd
