#include "asianjump/models.hpp"

#include <cmath>
#include <sstream>

#include "asianjump/quadrature.hpp"

namespace asianjump {

void MarketSpec::validate() const {
    if (!(s0 > 0.0) || !std::isfinite(s0))
        fail(ErrorCode::invalid_argument, "market: spot must be finite and > 0");
    if (!std::isfinite(r) || !std::isfinite(q))
        fail(ErrorCode::invalid_argument, "market: rates must be finite");
}

DiffusionSpec DiffusionSpec::constant(double sigma) {
    DiffusionSpec d;
    d.kind = DiffusionKind::constant;
    d.sigma_const = sigma;
    return d;
}

DiffusionSpec DiffusionSpec::local(std::function<double(double)> vol, double lo, double hi) {
    DiffusionSpec d;
    d.kind = DiffusionKind::local;
    d.local_vol = std::move(vol);
    d.sigma_lo = lo;
    d.sigma_hi = hi;
    return d;
}

double DiffusionSpec::vol_at(double s) const {
    if (kind == DiffusionKind::constant) return sigma_const;
    const double v = local_vol(s);
    if (!std::isfinite(v) || v < sigma_lo || v > sigma_hi) {
        std::ostringstream msg;
        msg << "local vol handle returned " << v << " at s=" << s << ", outside declared bounds ["
            << sigma_lo << ", " << sigma_hi << "]";
        fail(ErrorCode::invalid_argument, msg.str());
    }
    return v;
}

void DiffusionSpec::validate() const {
    if (kind == DiffusionKind::constant) {
        if (!std::isfinite(sigma_const) || sigma_const < 0.0)
            fail(ErrorCode::invalid_argument, "diffusion: sigma must be finite and >= 0");
        return;
    }
    if (!local_vol) fail(ErrorCode::invalid_argument, "diffusion: local kind needs a vol handle");
    if (!(sigma_lo > 0.0) || !(sigma_hi >= sigma_lo) || !std::isfinite(sigma_hi))
        fail(ErrorCode::invalid_argument,
             "diffusion: local kind needs bounds 0 < sigma_lo <= sigma_hi < inf");
}

CGMYParams VGJumps::cgmy() const {
    // w solves the tail-decay quadratic; eta_n/eta_p are the down/up decay scales
    const double w = std::sqrt(0.25 * theta * theta * nu * nu + 0.5 * sigma_vg * sigma_vg * nu);
    const double eta_n = w - 0.5 * theta * nu;
    const double eta_p = w + 0.5 * theta * nu;
    return CGMYParams{1.0 / nu, 1.0 / eta_n, 1.0 / eta_p, 0.0};
}

VGJumps vg_from_cgmy(double c, double g, double m) {
    if (!(c > 0.0) || !(g > 0.0) || !(m > 0.0))
        fail(ErrorCode::invalid_argument, "vg_from_cgmy requires c, g, m > 0");
    VGJumps vg;
    vg.nu = 1.0 / c;
    const double eta_n = 1.0 / g;
    const double eta_p = 1.0 / m;
    vg.theta = (eta_p - eta_n) / vg.nu;
    vg.sigma_vg = std::sqrt(2.0 * eta_p * eta_n / vg.nu);
    return vg;
}

void validate(const JumpSpec& jumps) {
    std::visit(
        [](const auto& j) {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                if (!(j.lambda >= 0.0) || !std::isfinite(j.lambda))
                    fail(ErrorCode::invalid_argument, "merton: lambda must be >= 0");
                if (!(j.jump_sd > 0.0) || !std::isfinite(j.jump_sd))
                    fail(ErrorCode::invalid_argument, "merton: jump_sd must be > 0");
                if (!std::isfinite(j.jump_mean))
                    fail(ErrorCode::invalid_argument, "merton: jump_mean must be finite");
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                if (!(j.lambda >= 0.0) || !std::isfinite(j.lambda))
                    fail(ErrorCode::invalid_argument, "double_exp: lambda must be >= 0");
                if (!(j.p_up >= 0.0 && j.p_up <= 1.0))
                    fail(ErrorCode::invalid_argument, "double_exp: p_up must lie in [0, 1]");
                if (!(j.eta1 > 1.0))
                    fail(ErrorCode::invalid_argument,
                         "double_exp: eta1 must be > 1 (finite mean of e^Y)");
                if (!(j.eta2 > 0.0))
                    fail(ErrorCode::invalid_argument, "double_exp: eta2 must be > 0");
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                if (!(j.sigma_vg > 0.0) || !std::isfinite(j.sigma_vg))
                    fail(ErrorCode::invalid_argument, "vg: sigma_vg must be > 0");
                if (!(j.nu > 0.0) || !std::isfinite(j.nu))
                    fail(ErrorCode::invalid_argument, "vg: nu must be > 0");
                if (!std::isfinite(j.theta))
                    fail(ErrorCode::invalid_argument, "vg: theta must be finite");
                if (!((j.theta + 0.5 * j.sigma_vg * j.sigma_vg) * j.nu < 1.0))
                    fail(ErrorCode::invalid_argument,
                         "vg: (theta + sigma_vg^2/2)*nu must be < 1 for the martingale "
                         "correction to exist");
            } else {
                if (!(j.lambda >= 0.0) || !std::isfinite(j.lambda))
                    fail(ErrorCode::invalid_argument, "generic: lambda must be >= 0");
                if (!j.density)
                    fail(ErrorCode::invalid_argument, "generic: density handle required");
                if (!(j.up_decay > 1.0))
                    fail(ErrorCode::invalid_argument,
                         "generic: up_decay must be > 1 (finite mean of e^Y)");
                if (!(j.down_decay > 0.0))
                    fail(ErrorCode::invalid_argument, "generic: down_decay must be > 0");
                if (j.table_y.size() != j.table_p.size())
                    fail(ErrorCode::invalid_argument, "generic: table_y/table_p size mismatch");
            }
        },
        jumps);
}

void ModelSpec::validate() const {
    market.validate();
    diffusion.validate();
    asianjump::validate(jumps);
}

void Instrument::validate() const {
    if (!(strike > 0.0) || !std::isfinite(strike))
        fail(ErrorCode::invalid_argument, "instrument: strike must be finite and > 0");
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        fail(ErrorCode::invalid_argument, "instrument: maturity must be finite and > 0");
}

double compensator(const JumpSpec& jumps) {
    return std::visit(
        [](const auto& j) -> double {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                return j.lambda * std::expm1(j.jump_mean + 0.5 * j.jump_sd * j.jump_sd);
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                const double mean_exp = j.p_up * j.eta1 / (j.eta1 - 1.0) +
                                        (1.0 - j.p_up) * j.eta2 / (j.eta2 + 1.0);
                return j.lambda * (mean_exp - 1.0);
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                const double arg = 1.0 - (j.theta + 0.5 * j.sigma_vg * j.sigma_vg) * j.nu;
                if (!(arg > 0.0))
                    fail(ErrorCode::domain,
                         "vg compensator undefined: (theta + sigma_vg^2/2)*nu >= 1");
                return -std::log(arg) / j.nu;
            } else {
                if (j.lambda == 0.0) return 0.0;
                // numeric E[e^Y - 1] over the declared-decay tails
                const double up_span = quadrature::truncate_upper(j.up_decay - 1.0, 1e-14);
                const double dn_span = quadrature::truncate_upper(j.down_decay, 1e-14);
                const auto integrand = [&](double y) { return std::expm1(y) * j.density(y); };
                quadrature::QuadConfig qc;
                qc.abs_tol = 1e-12;
                const double v = quadrature::integrate_1d(integrand, -dn_span, up_span, qc).value;
                return j.lambda * v;
            }
        },
        jumps);
}

double levy_density(const JumpSpec& jumps, double y) {
    return std::visit(
        [y](const auto& j) -> double {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                static const double inv_sqrt_2pi = 0.3989422804014326779399460599343819;
                const double z = (y - j.jump_mean) / j.jump_sd;
                return j.lambda * inv_sqrt_2pi / j.jump_sd * std::exp(-0.5 * z * z);
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                if (y >= 0.0) return j.lambda * j.p_up * j.eta1 * std::exp(-j.eta1 * y);
                return j.lambda * (1.0 - j.p_up) * j.eta2 * std::exp(j.eta2 * y);
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                if (y == 0.0) fail(ErrorCode::domain, "vg levy density is singular at y = 0");
                const CGMYParams p = j.cgmy();
                if (y > 0.0) return p.c * std::exp(-p.m * y) / y;
                return p.c * std::exp(p.g * y) / (-y);
            } else {
                return j.lambda * j.density(y);
            }
        },
        jumps);
}

bool AssumptionReport::all_passed() const {
    for (const auto& c : checks)
        if (c.level != CheckLevel::pass) return false;
    return true;
}

bool AssumptionReport::usable() const {
    for (const auto& c : checks)
        if (c.level == CheckLevel::fail) return false;
    return true;
}

std::string AssumptionReport::summary() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        const char* tag = c.level == CheckLevel::pass ? "pass"
                          : c.level == CheckLevel::warn ? "warn"
                                                        : "fail";
        out << "[" << tag << "] " << c.name << ": " << c.detail << "\n";
    }
    return out.str();
}

AssumptionReport check_assumptions(const ModelSpec& model) {
    AssumptionReport report;
    const auto add = [&](std::string name, CheckLevel level, std::string detail) {
        report.checks.push_back({std::move(name), level, std::move(detail)});
    };

    // basic parameter sanity, reported rather than thrown
    try {
        model.validate();
        add("parameters", CheckLevel::pass, "all parameter constraints hold");
    } catch (const Error& e) {
        add("parameters", CheckLevel::fail, e.what());
        return report;  // no point checking structure on broken parameters
    }

    // diffusion level at the spot; the sqrt(T) at-the-money coefficient
    // degenerates when it vanishes
    const double sig0 = model.diffusion.vol_at(model.market.s0);
    if (sig0 > 0.0) {
        add("diffusion_at_spot", CheckLevel::pass, "sigma(s0) > 0");
    } else {
        add("diffusion_at_spot", CheckLevel::warn,
            "sigma(s0) = 0: pure-jump model; the at-the-money sqrt(T) coefficient vanishes and "
            "at-the-money prices are O(T)");
    }

    // second exponential moment of the jump sizes: the short-maturity analysis
    // needs E[e^{2Y}] < inf on the up side
    std::visit(
        [&](const auto& j) {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                add("jump_tail_moment", CheckLevel::pass,
                    "normal jump sizes: all exponential moments finite");
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                if (j.eta1 > 2.0)
                    add("jump_tail_moment", CheckLevel::pass, "eta1 > 2: E[e^{2Y}] finite");
                else
                    add("jump_tail_moment", CheckLevel::fail,
                        "eta1 <= 2: E[e^{2Y}] infinite; the asymptotic error bounds do not apply");
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                if (2.0 * (j.theta + j.sigma_vg * j.sigma_vg) * j.nu < 1.0)
                    add("jump_tail_moment", CheckLevel::pass,
                        "2(theta + sigma_vg^2)nu < 1: E[e^{2X_1}] finite");
                else
                    add("jump_tail_moment", CheckLevel::fail,
                        "2(theta + sigma_vg^2)nu >= 1: second exponential moment infinite");
            } else {
                if (j.up_decay > 2.0)
                    add("jump_tail_moment", CheckLevel::pass, "up_decay > 2: E[e^{2Y}] finite");
                else
                    add("jump_tail_moment", CheckLevel::fail,
                        "up_decay <= 2: second exponential moment of the declared tail infinite");
            }
        },
        model.jumps);

    // the martingale drift correction must be computable
    try {
        const double c = compensator(model.jumps);
        std::ostringstream detail;
        detail << "compensator = " << c;
        add("martingale_correction", CheckLevel::pass, detail.str());
    } catch (const Error& e) {
        add("martingale_correction", CheckLevel::fail, e.what());
    }

    return report;
}

}  // namespace asianjump
