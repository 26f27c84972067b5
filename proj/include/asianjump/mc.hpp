#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "asianjump/models.hpp"

namespace asianjump {

struct MCConfig {
    long n_paths = 100000;
    int n_steps = 100;       // time grid steps per path
    std::uint64_t seed = 0;
    long batch_size = 4096;  // paths per work unit; the RNG stream is per batch
    bool antithetic = false; // mirror the Gaussian draws within each pair of paths

    void validate() const;   // n_paths >= 1000, n_steps >= 2, batch_size >= 2
};

struct MCResult {
    double price = 0.0;
    double std_err = 0.0;
    long n_paths = 0;
    int n_steps = 0;
    std::uint64_t seed = 0;
    double terminal_mean = 0.0;  // sample mean of S_T (martingale diagnostic)
};

// Per-path summary handed to the sink: trapezoid average over the N+1 grid
// values, the terminal spot, and the jump count (0 for the VG clock).
struct PathStats {
    double average = 0.0;
    double terminal = 0.0;
    int jump_count = 0;
};

struct ConvergencePoint {
    double maturity = 0.0;
    double scaled_price = 0.0;    // price / T
    double scaled_std_err = 0.0;  // std error / T
    double asym_scaled = 0.0;     // leading-order prediction / T at this maturity
};

// Log-Euler simulation. Per-step drift (r - q - compensator - sigma(S)^2/2)*dt
// on the log; compound-Poisson kinds draw the path's jump count over [0,T],
// uniform jump times, and sizes from the jump distribution, applied at the end
// of the containing grid step; VG steps add a gamma-subordinated increment
// Gamma(dt/nu, nu) with theta*dG + sigma_vg*sqrt(dG)*Z. The sink is invoked in
// path order. Results are a pure function of (model, T, cfg): each batch owns
// an RNG stream derived from (seed, batch index), so the worker count
// (capped by ASIANJUMP_THREADS; 0 or unset = hardware default) never changes
// the numbers. Generic-density jumps have no sampler here -> unsupported.
void simulate_paths(const ModelSpec& model, double maturity, const MCConfig& cfg,
                    const std::function<void(long path_index, const PathStats&)>& sink);

// Discounted sample mean of the payoff with its sample standard error.
// Supports all four payoffs: fixed call/put on the average, floating call
// (kappa*S_T - A)^+ and floating put (A - kappa*S_T)^+.
MCResult mc_price(const ModelSpec& model, const Instrument& inst, const MCConfig& cfg);

// Maturity sweep of (1/T)-scaled MC prices next to the same-scaled
// leading-order prediction (coefficient out of the money, atm
// coefficient*sqrt(T)/T at the money). In-the-money instruments have no
// leading-order coefficient -> regime error. The instrument's own maturity
// field is ignored.
std::vector<ConvergencePoint> convergence_study(const ModelSpec& model, const Instrument& inst,
                                                const std::vector<double>& maturities,
                                                const MCConfig& cfg);

}  // namespace asianjump
