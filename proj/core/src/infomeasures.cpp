#include "scd/infomeasures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scd/numeric.hpp"

namespace scd {
namespace {

constexpr double kUnitSumTolerance = 1e-9;
// Above this order, direct pow() underflows on small coefficients.
constexpr double kLogSpaceOrder = 8.0;

void validate_density(std::span<const double> p, const char* who) {
    for (double v : p)
        if (!(v >= 0.0))
            throw std::invalid_argument(std::string(who) +
                                        ": negative or NaN density entry");
    const double total = kahan_sum(p);
    if (std::abs(total - 1.0) > kUnitSumTolerance)
        throw std::invalid_argument(std::string(who) +
                                    ": density does not sum to one");
}

EntropyBits shannon_entropy(std::span<const double> p) {
    KahanSum acc;
    for (double v : p)
        if (v > 0.0) acc.add(-v * std::log2(v));
    return acc.value();
}

EntropyBits power_sum_entropy(std::span<const double> p, double alpha) {
    KahanSum acc;
    for (double v : p)
        if (v > 0.0) acc.add(std::pow(v, alpha));
    return std::log2(acc.value()) / (1.0 - alpha);
}

EntropyBits log_space_entropy(std::span<const double> p, double alpha) {
    double lmax = -std::numeric_limits<double>::infinity();
    for (double v : p)
        if (v > 0.0) lmax = std::max(lmax, std::log2(v));
    KahanSum acc;
    for (double v : p)
        if (v > 0.0) acc.add(std::exp2(alpha * (std::log2(v) - lmax)));
    return (alpha * lmax + std::log2(acc.value())) / (1.0 - alpha);
}

} // namespace

EntropyBits renyi_entropy(std::span<const double> density, Alpha alpha) {
    validate_density(density, "renyi_entropy");
    const double a = alpha.value();
    if (a == 0.0) {
        std::size_t support = 0;
        for (double v : density)
            if (v > 0.0) ++support;
        return std::log2(static_cast<double>(support));
    }
    if (a == 1.0) return shannon_entropy(density);
    if (a > kLogSpaceOrder) return log_space_entropy(density, a);
    return power_sum_entropy(density, a);
}

EntropyBits renyi_divergence(std::span<const double> q,
                             std::span<const double> p, Alpha alpha) {
    if (q.size() != p.size())
        throw std::invalid_argument("renyi_divergence: length mismatch");
    validate_density(q, "renyi_divergence(q)");
    validate_density(p, "renyi_divergence(p)");
    for (std::size_t k = 0; k < q.size(); ++k)
        if (q[k] > 0.0 && p[k] == 0.0)
            throw SupportMismatchError(
                "renyi_divergence: q has mass where p is zero");

    const double a = alpha.value();
    if (a == 1.0) {
        KahanSum acc;
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k] > 0.0)
                acc.add(q[k] * (std::log2(q[k]) - std::log2(p[k])));
        return acc.value();
    }

    // Terms are written q_k * 2^((a-1)(log2 q_k - log2 p_k)) with the
    // largest exponent factored out, and the result is taken relative to
    // q's own sum accumulated in the same order. When q == p every
    // exponent is exactly zero and the two sums are identical, so the
    // divergence comes out as exact zero even for orders close to one.
    std::vector<double> exponents;
    exponents.reserve(q.size());
    double emax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k] <= 0.0) continue;
        const double e = (a - 1.0) * (std::log2(q[k]) - std::log2(p[k]));
        exponents.push_back(e);
        emax = std::max(emax, e);
    }
    KahanSum weighted, reference;
    std::size_t i = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k] <= 0.0) continue;
        weighted.add(q[k] * std::exp2(exponents[i++] - emax));
        reference.add(q[k]);
    }
    return (emax + std::log2(weighted.value()) - std::log2(reference.value())) /
           (a - 1.0);
}

EntropyBits block_entropy(const ProbBlock& block, double time_step_s,
                          double freq_step_hz, Alpha alpha) {
    if (!(time_step_s > 0.0) || !(freq_step_hz > 0.0))
        throw std::invalid_argument("block_entropy: lattice steps must be positive");
    return renyi_entropy(std::span<const double>(block.values), alpha) +
           std::log2(time_step_s * freq_step_hz);
}

EntropyBits predicted_entropy(EntropyBits current, std::size_t length) {
    if (length < 1)
        throw std::invalid_argument("predicted_entropy: block length must be >= 1");
    const double l = static_cast<double>(length);
    return current + std::log2((l + 1.0) / l);
}

bool is_rearrangement(std::span<const double> frame_a,
                      std::span<const double> frame_b, double tol) {
    if (frame_a.size() != frame_b.size()) return false;
    std::vector<double> a(frame_a.begin(), frame_a.end());
    std::vector<double> b(frame_b.begin(), frame_b.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

std::vector<double> floor_density(std::span<const double> density,
                                  double relative_floor) {
    if (!(relative_floor >= 0.0))
        throw std::invalid_argument("floor_density: floor must be >= 0");
    const double eps = relative_floor / static_cast<double>(density.size());
    std::vector<double> out(density.begin(), density.end());
    for (double& v : out) v = std::max(v, eps);
    const double total = kahan_sum(out);
    for (double& v : out) v /= total;
    return out;
}

} // namespace scd
