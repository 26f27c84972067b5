#pragma once

#include <cmath>
#include <cstdint>

#include "asianjump/errors.hpp"

namespace asianjump::detail {

// splitmix64: tiny, well-mixed generator used both to derive per-batch seeds
// and as the uniform source inside a batch.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0,1): top 53 bits, nudged away from 0
    double next_uniform() {
        const double u = (next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    g.next_u64();
    return g.next_u64();
}

// Box-Muller with the sine value cached, so draws come in deterministic pairs.
struct NormalSampler {
    SplitMix64* gen;
    double cached = 0.0;
    bool have_cached = false;

    explicit NormalSampler(SplitMix64& g) : gen(&g) {}

    double next() {
        if (have_cached) {
            have_cached = false;
            return cached;
        }
        const double u1 = gen->next_uniform();
        const double u2 = gen->next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        cached = radius * std::sin(angle);
        have_cached = true;
        return radius * std::cos(angle);
    }

    void reset_pair() { have_cached = false; }
};

// Knuth's product-of-uniforms Poisson; fine for the small means (lambda*T)
// used here.
inline int poisson_draw(SplitMix64& gen, double mean) {
    if (mean < 0.0) fail(ErrorCode::domain, "poisson mean must be >= 0");
    if (mean == 0.0) return 0;
    const double limit = std::exp(-mean);
    int count = 0;
    double product = gen.next_uniform();
    while (product > limit) {
        ++count;
        product *= gen.next_uniform();
    }
    return count;
}

// Marsaglia-Tsang for shape >= 1; for shape < 1 the standard boost
// Gamma(a) = Gamma(a+1) * U^{1/a}, with the power taken as exp(log(u)/a) to
// survive the very small shapes a gamma-clock step produces. Shapes below
// 1e-12 underflow that too; the caller should coarsen the time grid.
inline double gamma_draw(SplitMix64& gen, NormalSampler& normal, double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) fail(ErrorCode::domain, "gamma shape/scale must be > 0");
    if (shape < 1e-12)
        fail(ErrorCode::domain,
             "gamma shape below 1e-12: increase dt*nu (fewer steps) to keep the clock sampler stable");

    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::exp(std::log(gen.next_uniform()) / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal.next();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = gen.next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v * scale;
    }
}

}  // namespace asianjump::detail
