#pragma once

#include <cstdint>

namespace scd {

/// Seeded generator used for every random fixture in the project.
///
/// The algorithm is splitmix64 (Steele/Lea/Flood mixing constants), chosen
/// because it is trivial to re-implement bit-exactly in any language, so
/// frozen test fixtures stay portable. Uniform doubles take the top 53 bits
/// of the state; normals come from Box-Muller on two uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform on [-amplitude, amplitude].
    double uniform_signed(double amplitude);

    /// Standard normal draw (Box-Muller, polar-free form).
    double normal();

private:
    std::uint64_t state_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

} // namespace scd
