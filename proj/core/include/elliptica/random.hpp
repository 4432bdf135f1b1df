#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace elliptica {

// Seeded generator shared by every randomized routine. Only the raw 64-bit
// engine output is used so that draws are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : m_engine(seed ^ 0x9e3779b97f4a7c15ULL) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return m_engine(); }

    // Standard complex normal (Box-Muller), unit variance per component.
    std::complex<double> normal_complex();

    std::complex<double> uniform_disc(double radius);

private:
    std::mt19937_64 m_engine;
};

} // namespace elliptica
