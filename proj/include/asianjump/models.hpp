#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "asianjump/errors.hpp"

namespace asianjump {

struct MarketSpec {
    double s0 = 0.0;  // spot (currency, > 0)
    double r = 0.0;   // risk-free rate (1/year)
    double q = 0.0;   // dividend yield (1/year)

    void validate() const;
};

enum class DiffusionKind { constant, local };

struct DiffusionSpec {
    DiffusionKind kind = DiffusionKind::constant;
    double sigma_const = 0.0;  // 1/sqrt(year); sigma=0 permitted for pure-jump runs (flagged)
    // Local-volatility handle S -> sigma(S) with declared bounds. The handle is
    // assumed measurable and bounded within [sigma_lo, sigma_hi]; smoothness is a
    // documented contract on the caller, not a runtime check.
    std::function<double(double)> local_vol;
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;

    static DiffusionSpec constant(double sigma);
    static DiffusionSpec local(std::function<double(double)> vol, double lo, double hi);

    double vol_at(double s) const;
    void validate() const;
};

struct MertonJumps {
    double lambda = 0.0;     // intensity (1/year), >= 0
    double jump_mean = 0.0;  // mean log-jump
    double jump_sd = 0.0;    // log-jump std, > 0
};

struct DoubleExpJumps {
    double lambda = 0.0;  // intensity (1/year), >= 0
    double p_up = 0.0;    // up-jump probability in [0,1]
    double eta1 = 0.0;    // up-tail decay, > 1 (finite compensator)
    double eta2 = 0.0;    // down-tail decay, > 0
};

// Derived pure-jump parameters of the VG process written in CGMY form (Y=0).
struct CGMYParams {
    double c = 0.0;
    double g = 0.0;
    double m = 0.0;
    double y = 0.0;
};

struct VGJumps {
    double sigma_vg = 0.0;  // > 0
    double nu = 0.0;        // gamma-clock variance rate, > 0
    double theta = 0.0;     // drift of the subordinated Brownian motion

    CGMYParams cgmy() const;  // C = 1/nu, G = 1/eta_n, M = 1/eta_p
};

// Round-trip helper for the CGMY(Y=0) <-> VG parameter map.
VGJumps vg_from_cgmy(double c, double g, double m);

// Compound Poisson with a user-supplied jump-size density. The density handle
// must be a normalized pdf; tail-decay exponents must be declared so quadrature
// can truncate the infinite ranges with an analytic bound (an exponential
// moment of order > 2 is required by the validity assumptions anyway).
struct GenericCPJumps {
    double lambda = 0.0;
    std::function<double(double)> density;
    double up_decay = 0.0;    // p(y) <~ e^{-up_decay*y} as y -> +inf
    double down_decay = 0.0;  // p(y) <~ e^{+down_decay*y} as y -> -inf
    // Optional tabulation (strictly increasing grid + density values). When
    // present it is the serializable representation; the density handle is
    // then the linear interpolant of the table (zero outside the grid).
    std::vector<double> table_y;
    std::vector<double> table_p;
};

using JumpSpec = std::variant<MertonJumps, DoubleExpJumps, VGJumps, GenericCPJumps>;

void validate(const JumpSpec& jumps);

struct ModelSpec {
    MarketSpec market;
    DiffusionSpec diffusion;
    JumpSpec jumps;

    void validate() const;
};

enum class Style { fixed, floating };
enum class PutCall { call, put };

struct Instrument {
    Style style = Style::fixed;
    PutCall putcall = PutCall::call;
    double strike = 0.0;    // K (currency) for fixed style, kappa (dimensionless) for floating
    double maturity = 0.0;  // T (years), > 0

    void validate() const;
};

// Total drift adjustment entering the continuous part: lambda*(E[e^Y]-1) for
// compound-Poisson kinds, -(1/nu)*log(1-(theta+sigma_vg^2/2)*nu) for VG.
double compensator(const JumpSpec& jumps);

// Levy density nu(y): lambda*p(y) for compound-Poisson kinds; for VG,
// C e^{-|y|/eta_n}/|y| (y<0) and C e^{-y/eta_p}/y (y>0). y=0 for VG ->
// singularity (domain error).
double levy_density(const JumpSpec& jumps, double y);

enum class CheckLevel { pass, warn, fail };

struct AssumptionCheck {
    std::string name;
    CheckLevel level = CheckLevel::pass;
    std::string detail;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;

    bool all_passed() const;   // no warn, no fail
    bool usable() const;       // no fail (warnings allowed, e.g. sigma=0)
    std::string summary() const;
};

// Diagnostic only -- never throws. Hard failures (fail level) are the moment /
// tail conditions the asymptotic formulas need; sigma=0 is reported as a
// warning because the pure-jump tables use it deliberately.
AssumptionReport check_assumptions(const ModelSpec& model);

}  // namespace asianjump
