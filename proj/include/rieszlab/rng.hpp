#ifndef RIESZLAB_RNG_HPP
#define RIESZLAB_RNG_HPP

// Seeded random source with platform-independent draws.
//
// The engine is mt19937_64 (bit-exact by the standard). Distributions are
// implemented here rather than taken from <random>, whose algorithms are
// implementation-defined:
//   uniform  - top 53 bits, zero rejected, so the value lies in (0, 1)
//   normal   - Marsaglia polar method, second variate cached
//   gamma    - Marsaglia-Tsang squeeze/rejection; shape < 1 uses
//              Gamma(shape + 1) * U^{1/shape}
//
// Independent streams: Rng(seed, stream) mixes both through SplitMix64.
// The samplers give every draw index its own stream, so output does not
// depend on how draws are spread over threads.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

namespace rieszlab {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed ^ splitmix64(stream + 0x5851F42D4C957F2Dull))) {}

    double uniform() {
        for (;;) {
            const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double normal() {
        if (spare_) {
            const double s = *spare_;
            spare_.reset();
            return s;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        return u * f;
    }

    // Gamma(shape, scale 1).
    double gamma(double shape) {
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0);
            return g * std::pow(uniform(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace rieszlab

#endif
