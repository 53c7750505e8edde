#ifndef FOCIR_RNG_HPP
#define FOCIR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace focir {

// Seeded random source. mt19937_64 gives a portable bit stream; the
// derived draws below are implemented by hand because the standard
// distributions are implementation-defined and would break bitwise
// reproducibility of checkpoints across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; draws two uniforms per call, no cached spare
    double normal(double mean, double stddev) {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // uniform index in [0, n) via multiply-high (no modulo bias worth caring about here,
    // but keeps the draw count at exactly one u64 per index)
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace focir

#endif
