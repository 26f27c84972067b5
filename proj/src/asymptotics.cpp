#include "asianjump/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace asianjump {

namespace {

using specfun::exp_int_e1;
using specfun::hyp2f1_restricted;
using specfun::log_integral;
using specfun::norm_cdf;

constexpr double kPi = 3.14159265358979323846264338327950288;

// Tail geometry of the jump measure, used to truncate the open integration
// ranges of the generic quadrature route.
struct TailInfo {
    bool gaussian = false;
    double g_alpha = 0.0;
    double g_delta = 0.0;
    double up_rate = 0.0;    // decay of e^y * nu(y) as y -> +inf
    double down_rate = 0.0;  // decay of nu(y) as y -> -inf
};

TailInfo tail_info(const JumpSpec& jumps) {
    return std::visit(
        [](const auto& j) -> TailInfo {
            using T = std::decay_t<decltype(j)>;
            TailInfo ti;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                ti.gaussian = true;
                ti.g_alpha = j.jump_mean;
                ti.g_delta = j.jump_sd;
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                ti.up_rate = j.eta1 - 1.0;
                ti.down_rate = j.eta2;
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                const CGMYParams p = j.cgmy();
                ti.up_rate = p.m - 1.0;  // m > 1 is implied by the validated clock condition
                ti.down_rate = p.g;
            } else {
                ti.up_rate = j.up_decay - 1.0;
                ti.down_rate = j.down_decay;
            }
            return ti;
        },
        jumps);
}

double upper_cut(const TailInfo& ti, double anchor, double tail_eps) {
    if (ti.gaussian)
        return std::max(anchor, ti.g_alpha + ti.g_delta * ti.g_delta) + 14.0 * ti.g_delta;
    return anchor + quadrature::truncate_upper(ti.up_rate, tail_eps);
}

double lower_cut(const TailInfo& ti, double anchor, double tail_eps) {
    if (ti.gaussian) return std::min(anchor, ti.g_alpha) - 14.0 * ti.g_delta;
    return anchor - quadrature::truncate_upper(ti.down_rate, tail_eps);
}

// ---------------------------------------------------------------------------
// generic route: double integral of payoff * levy density over the exercise
// region, transfer-time variable t on the outside
// ---------------------------------------------------------------------------

enum class Shape { fixed_call, fixed_put, float_call, float_put };

double coeff_quad(const ModelSpec& model, Shape shape, double strike, const AsymConfig& cfg) {
    const double s0 = model.market.s0;
    const double eps = cfg.quad.tail_eps;
    const TailInfo ti = tail_info(model.jumps);
    const auto nu = [&](double y) { return levy_density(model.jumps, y); };

    double t_lo = 0.0, t_hi = 1.0;
    std::function<double(double, double)> f;
    std::function<std::pair<double, double>(double)> ylim;

    switch (shape) {
        case Shape::fixed_call: {
            const double k = strike;
            f = [=](double t, double y) {
                return ((s0 - k) + s0 * (1.0 - t) * std::expm1(y)) * nu(y);
            };
            ylim = [=](double t) -> std::pair<double, double> {
                const double num = k - s0 * t;
                const double den = s0 * (1.0 - t);
                if (!(num > 0.0) || !(den > 0.0)) return {0.0, 0.0};
                const double ystar = std::log(num / den);
                return {ystar, upper_cut(ti, ystar, eps)};
            };
            break;
        }
        case Shape::fixed_put: {
            const double k = strike;
            t_hi = std::min(k / s0, 1.0);
            f = [=](double t, double y) {
                return ((k - s0) - s0 * (1.0 - t) * std::expm1(y)) * nu(y);
            };
            ylim = [=](double t) -> std::pair<double, double> {
                const double num = k - s0 * t;
                const double den = s0 * (1.0 - t);
                if (!(num > 0.0) || !(den > 0.0)) return {0.0, 0.0};
                const double ystar = std::log(num / den);
                return {lower_cut(ti, ystar, eps), ystar};
            };
            break;
        }
        case Shape::float_call: {
            const double kappa = strike;
            t_lo = std::max(1.0 - kappa, 0.0);
            f = [=](double t, double y) {
                return s0 * ((kappa - 1.0) + (kappa - 1.0 + t) * std::expm1(y)) * nu(y);
            };
            ylim = [=](double t) -> std::pair<double, double> {
                const double g = kappa - 1.0 + t;
                if (!(g > 0.0) || !(t > 0.0)) return {0.0, 0.0};
                const double ly0 = std::log(t) - std::log(g);
                return {ly0, upper_cut(ti, ly0, eps)};
            };
            break;
        }
        case Shape::float_put: {
            const double kappa = strike;
            f = [=](double t, double y) {
                return s0 * ((1.0 - kappa) - (kappa - 1.0 + t) * std::expm1(y)) * nu(y);
            };
            ylim = [=](double t) -> std::pair<double, double> {
                if (!(t > 0.0)) return {0.0, 0.0};
                const double g = kappa - 1.0 + t;
                const double ly0 = std::log(t) - std::log(g);
                return {lower_cut(ti, ly0, eps), ly0};
            };
            break;
        }
    }

    return quadrature::integrate_2d_iterated(f, t_lo, t_hi, ylim, cfg.quad).value;
}

// ---------------------------------------------------------------------------
// Merton: inner integral reduces to normal cdfs, leaving a 1d t-integral
// ---------------------------------------------------------------------------

double merton_coeff(const MertonJumps& j, double s0, double strike, Shape shape,
                    const AsymConfig& cfg) {
    const double alpha = j.jump_mean;
    const double delta = j.jump_sd;
    const double efac = std::exp(alpha + 0.5 * delta * delta);

    std::function<double(double)> integrand;
    double t_lo = 0.0, t_hi = 1.0, scale = j.lambda;

    switch (shape) {
        case Shape::fixed_call: {
            const double k = strike;
            integrand = [=](double t) {
                const double num = k - s0 * t;
                const double den = s0 * (1.0 - t);
                if (!(num > 0.0) || !(den > 0.0)) return 0.0;
                const double ystar = std::log(num / den);
                const double i1 = norm_cdf((alpha - ystar) / delta);
                const double i2 = efac * norm_cdf((alpha + delta * delta - ystar) / delta);
                return (s0 * t - k) * i1 + s0 * (1.0 - t) * i2;
            };
            break;
        }
        case Shape::fixed_put: {
            const double k = strike;
            t_hi = std::min(k / s0, 1.0);
            integrand = [=](double t) {
                const double num = k - s0 * t;
                const double den = s0 * (1.0 - t);
                if (!(num > 0.0) || !(den > 0.0)) return 0.0;
                const double ystar = std::log(num / den);
                const double i3 = norm_cdf((ystar - alpha) / delta);
                const double i4 = efac * norm_cdf((ystar - alpha - delta * delta) / delta);
                return (k - s0 * t) * i3 - s0 * (1.0 - t) * i4;
            };
            break;
        }
        case Shape::float_call: {
            const double kappa = strike;
            t_lo = std::max(1.0 - kappa, 0.0);
            scale = j.lambda * s0;
            integrand = [=](double t) {
                const double g = kappa - 1.0 + t;
                if (!(g > 0.0) || !(t > 0.0)) return 0.0;
                const double ly0 = std::log(t) - std::log(g);
                const double i1 = norm_cdf((alpha - ly0) / delta);
                const double i2 = efac * norm_cdf((alpha + delta * delta - ly0) / delta);
                return g * i2 - t * i1;
            };
            break;
        }
        case Shape::float_put: {
            const double kappa = strike;
            scale = j.lambda * s0;
            integrand = [=](double t) {
                if (!(t > 0.0)) return 0.0;
                const double g = kappa - 1.0 + t;
                const double ly0 = std::log(t) - std::log(g);
                const double i3 = norm_cdf((ly0 - alpha) / delta);
                const double i4 = efac * norm_cdf((ly0 - alpha - delta * delta) / delta);
                return t * i3 - g * i4;
            };
            break;
        }
    }

    if (scale == 0.0) return 0.0;
    return scale * quadrature::integrate_1d(integrand, t_lo, t_hi, cfg.quad).value;
}

// ---------------------------------------------------------------------------
// double-exponential: fixed strikes collapse to a Gauss hypergeometric value;
// floating strikes keep an elementary 1d integrand
// ---------------------------------------------------------------------------

double kou_coeff(const DoubleExpJumps& j, double s0, double strike, Shape shape,
                 const AsymConfig& cfg) {
    switch (shape) {
        case Shape::fixed_call: {
            const double z = s0 / strike;  // <= 1 in the call regime
            const double pre =
                j.lambda * j.p_up * s0 / ((j.eta1 - 1.0) * (j.eta1 + 1.0));
            if (pre == 0.0) return 0.0;
            return pre * std::pow(z, j.eta1 - 1.0) *
                   hyp2f1_restricted(j.eta1 - 1.0, z, cfg.specfun);
        }
        case Shape::fixed_put: {
            const double k = strike / s0;  // <= 1 in the put regime
            const double pre =
                j.lambda * (1.0 - j.p_up) * s0 / ((j.eta2 + 1.0) * (j.eta2 + 2.0));
            if (pre == 0.0) return 0.0;
            return pre * std::pow(k, j.eta2 + 2.0) * hyp2f1_restricted(j.eta2, k, cfg.specfun);
        }
        case Shape::float_call: {
            const double kappa = strike;
            const double scale = j.lambda * j.p_up * s0;
            if (scale == 0.0) return 0.0;
            const auto integrand = [=](double t) {
                const double g = kappa - 1.0 + t;
                if (!(g > 0.0) || !(t > 0.0)) return 0.0;
                const double ratio = g / t;  // e^{-ly0}
                return g * j.eta1 / (j.eta1 - 1.0) * std::pow(ratio, j.eta1 - 1.0) -
                       t * std::pow(ratio, j.eta1);
            };
            return scale *
                   quadrature::integrate_1d(integrand, std::max(1.0 - kappa, 0.0), 1.0, cfg.quad)
                       .value;
        }
        case Shape::float_put: {
            const double kappa = strike;
            const double scale = j.lambda * (1.0 - j.p_up) * s0;
            if (scale == 0.0) return 0.0;
            const auto integrand = [=](double t) {
                if (!(t > 0.0)) return 0.0;
                const double g = kappa - 1.0 + t;
                const double ratio = t / g;  // e^{ly0}
                return t * std::pow(ratio, j.eta2) -
                       g * j.eta2 / (j.eta2 + 1.0) * std::pow(ratio, j.eta2 + 1.0);
            };
            return scale * quadrature::integrate_1d(integrand, 0.0, 1.0, cfg.quad).value;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// variance gamma: inner integrals reduce to the log-integral li; exactly at
// the money the t-integral collapses to an arctanh
// ---------------------------------------------------------------------------

double vg_coeff(const VGJumps& j, double s0, double strike, Shape shape, bool at_boundary,
                const AsymConfig& cfg) {
    const CGMYParams p = j.cgmy();
    const double c = p.c, g_par = p.g, m_par = p.m;

    if (at_boundary) {
        // one-sided limits at K=s0 / kappa=1; fixed and floating agree
        if (shape == Shape::fixed_call || shape == Shape::float_call)
            return s0 * c * specfun::arctanh(1.0 / (2.0 * m_par - 1.0));
        return s0 * c * specfun::arctanh(1.0 / (2.0 * g_par + 1.0));
    }

    const auto neg_c_li = [&](double x, double a) {
        return -c * log_integral(std::pow(x, a), cfg.specfun);
    };

    std::function<double(double)> integrand;
    double t_lo = 0.0, t_hi = 1.0;

    switch (shape) {
        case Shape::fixed_call: {
            const double k = strike;
            integrand = [=](double t) {
                const double num = s0 * (1.0 - t);
                const double den = k - s0 * t;
                if (!(num > 0.0) || !(den > 0.0)) return 0.0;
                const double ratio = num / den;
                return (s0 * t - k) * neg_c_li(ratio, m_par) +
                       s0 * (1.0 - t) * neg_c_li(ratio, m_par - 1.0);
            };
            break;
        }
        case Shape::fixed_put: {
            const double k = strike;
            t_hi = k / s0;
            integrand = [=](double t) {
                const double num = k - s0 * t;
                const double den = s0 * (1.0 - t);
                if (!(num > 0.0) || !(den > 0.0)) return 0.0;
                const double ratio = num / den;
                return (k - s0 * t) * neg_c_li(ratio, g_par) -
                       s0 * (1.0 - t) * neg_c_li(ratio, g_par + 1.0);
            };
            break;
        }
        case Shape::float_call: {
            const double kappa = strike;
            t_lo = 1.0 - kappa;
            integrand = [=](double t) {
                const double g = kappa - 1.0 + t;
                if (!(g > 0.0) || !(t > 0.0)) return 0.0;
                const double ratio = g / t;
                return s0 * (g * neg_c_li(ratio, m_par - 1.0) - t * neg_c_li(ratio, m_par));
            };
            break;
        }
        case Shape::float_put: {
            const double kappa = strike;
            integrand = [=](double t) {
                if (!(t > 0.0)) return 0.0;
                const double g = kappa - 1.0 + t;
                const double ratio = t / g;
                return s0 * (t * neg_c_li(ratio, g_par) - g * neg_c_li(ratio, g_par + 1.0));
            };
            break;
        }
    }

    return quadrature::integrate_1d(integrand, t_lo, t_hi, cfg.quad).value;
}

// ---------------------------------------------------------------------------

AsymCoeff make_otm(double value, const std::string& method) {
    AsymCoeff out;
    out.regime = Regime::otm;
    out.method = method;
    if (value <= 0.0) {
        // a vanishing limit (no jump mass reaches the money, or lambda = 0);
        // tiny negatives are quadrature roundoff
        out.value = 0.0;
        out.degenerate = true;
    } else {
        out.value = value;
    }
    return out;
}

AsymCoeff dispatch_coeff(const ModelSpec& model, Shape shape, double strike, bool at_boundary,
                         const AsymConfig& cfg) {
    const double s0 = model.market.s0;

    // the forced 2d route also handles the at-the-money boundary: the payoff
    // vanishes linearly where the VG density blows up like 1/|y|, so the
    // combined integrand stays bounded
    if (cfg.force_quadrature) {
        return make_otm(coeff_quad(model, shape, strike, cfg), "quadrature");
    }

    return std::visit(
        [&](const auto& j) -> AsymCoeff {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                return make_otm(merton_coeff(j, s0, strike, shape, cfg), "closed_form");
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                return make_otm(kou_coeff(j, s0, strike, shape, cfg), "closed_form");
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                return make_otm(vg_coeff(j, s0, strike, shape, at_boundary, cfg),
                                at_boundary ? "limit" : "closed_form");
            } else {
                return make_otm(coeff_quad(model, shape, strike, cfg), "quadrature");
            }
        },
        model.jumps);
}

void check_fixed_regime(PutCall pc, double s0, double strike, bool allow_boundary) {
    if (!(strike > 0.0) || !std::isfinite(strike))
        fail(ErrorCode::invalid_argument, "strike must be finite and > 0");
    const Moneyness m = classify_fixed(pc, s0, strike);
    if (m == Moneyness::otm) return;
    if (m == Moneyness::atm && allow_boundary) return;
    std::ostringstream msg;
    if (m == Moneyness::atm) {
        msg << "strike equals the spot: the short-maturity price is sqrt(T)-order; "
               "use the at-the-money coefficient";
    } else {
        msg << "strike is " << (pc == PutCall::call ? "below" : "above")
            << " the spot: the " << (pc == PutCall::call ? "call" : "put")
            << " is in the money and has no O(T) out-of-the-money coefficient";
    }
    fail(ErrorCode::regime, msg.str());
}

void check_floating_regime(PutCall pc, double kappa, bool allow_boundary) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        fail(ErrorCode::invalid_argument, "kappa must be finite and > 0");
    const Moneyness m = classify_floating(pc, kappa);
    if (m == Moneyness::otm) return;
    if (m == Moneyness::atm && allow_boundary) return;
    std::ostringstream msg;
    if (m == Moneyness::atm) {
        msg << "kappa = 1: the short-maturity price is sqrt(T)-order; "
               "use the at-the-money coefficient";
    } else {
        msg << "kappa " << (pc == PutCall::call ? "> 1" : "< 1") << ": the floating "
            << (pc == PutCall::call ? "call" : "put")
            << " is in the money and has no O(T) out-of-the-money coefficient";
    }
    fail(ErrorCode::regime, msg.str());
}

}  // namespace

Moneyness classify_fixed(PutCall pc, double s0, double strike) {
    if (strike == s0) return Moneyness::atm;
    if (pc == PutCall::call) return strike > s0 ? Moneyness::otm : Moneyness::itm;
    return strike < s0 ? Moneyness::otm : Moneyness::itm;
}

Moneyness classify_floating(PutCall pc, double kappa) {
    if (kappa == 1.0) return Moneyness::atm;
    if (pc == PutCall::call) return kappa < 1.0 ? Moneyness::otm : Moneyness::itm;
    return kappa > 1.0 ? Moneyness::otm : Moneyness::itm;
}

AsymCoeff otm_call_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg) {
    model.validate();
    check_fixed_regime(PutCall::call, model.market.s0, strike, cfg.allow_boundary);
    return dispatch_coeff(model, Shape::fixed_call, strike, strike == model.market.s0, cfg);
}

AsymCoeff otm_put_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg) {
    model.validate();
    check_fixed_regime(PutCall::put, model.market.s0, strike, cfg.allow_boundary);
    return dispatch_coeff(model, Shape::fixed_put, strike, strike == model.market.s0, cfg);
}

AsymCoeff otm_float_call_coeff(const ModelSpec& model, double kappa, const AsymConfig& cfg) {
    model.validate();
    check_floating_regime(PutCall::call, kappa, cfg.allow_boundary);
    return dispatch_coeff(model, Shape::float_call, kappa, kappa == 1.0, cfg);
}

AsymCoeff otm_float_put_coeff(const ModelSpec& model, double kappa, const AsymConfig& cfg) {
    model.validate();
    check_floating_regime(PutCall::put, kappa, cfg.allow_boundary);
    return dispatch_coeff(model, Shape::float_put, kappa, kappa == 1.0, cfg);
}

AsymCoeff atm_coeff(const ModelSpec& model) {
    model.validate();
    const double sig0 = model.diffusion.vol_at(model.market.s0);
    AsymCoeff out;
    out.regime = Regime::atm;
    out.method = "closed_form";
    out.value = sig0 * model.market.s0 * std::sqrt(1.0 / (6.0 * kPi));
    out.degenerate = (sig0 == 0.0);
    return out;
}

double atm_asian_european_ratio() { return 1.0 / std::sqrt(3.0); }

AsymCoeff european_otm_call_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg) {
    model.validate();
    check_fixed_regime(PutCall::call, model.market.s0, strike, false);
    const double s0 = model.market.s0;
    const double m = std::log(strike / s0);

    if (!cfg.force_quadrature) {
        const double value = std::visit(
            [&](const auto& j) -> double {
                using T = std::decay_t<decltype(j)>;
                if constexpr (std::is_same_v<T, MertonJumps>) {
                    const double efac = std::exp(j.jump_mean + 0.5 * j.jump_sd * j.jump_sd);
                    return j.lambda *
                           (s0 * efac *
                                norm_cdf((j.jump_mean + j.jump_sd * j.jump_sd - m) / j.jump_sd) -
                            strike * norm_cdf((j.jump_mean - m) / j.jump_sd));
                } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                    return j.lambda * j.p_up / (j.eta1 - 1.0) * s0 *
                           std::pow(s0 / strike, j.eta1 - 1.0);
                } else if constexpr (std::is_same_v<T, VGJumps>) {
                    const CGMYParams p = j.cgmy();
                    return p.c * (s0 * exp_int_e1((p.m - 1.0) * m, cfg.specfun) -
                                  strike * exp_int_e1(p.m * m, cfg.specfun));
                } else {
                    return -1.0;  // no closed form; quadrature below
                }
            },
            model.jumps);
        if (value >= 0.0 || !std::holds_alternative<GenericCPJumps>(model.jumps))
            return make_otm(value, "closed_form");
    }

    const TailInfo ti = tail_info(model.jumps);
    const auto integrand = [&](double y) {
        return ((s0 - strike) + s0 * std::expm1(y)) * levy_density(model.jumps, y);
    };
    const double hi = upper_cut(ti, m, cfg.quad.tail_eps);
    return make_otm(quadrature::integrate_1d(integrand, m, hi, cfg.quad).value, "quadrature");
}

AsymCoeff european_otm_put_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg) {
    model.validate();
    check_fixed_regime(PutCall::put, model.market.s0, strike, false);
    const double s0 = model.market.s0;
    const double m = std::log(strike / s0);  // < 0

    if (!cfg.force_quadrature) {
        const double value = std::visit(
            [&](const auto& j) -> double {
                using T = std::decay_t<decltype(j)>;
                if constexpr (std::is_same_v<T, MertonJumps>) {
                    const double efac = std::exp(j.jump_mean + 0.5 * j.jump_sd * j.jump_sd);
                    return j.lambda *
                           (strike * norm_cdf((m - j.jump_mean) / j.jump_sd) -
                            s0 * efac *
                                norm_cdf((m - j.jump_mean - j.jump_sd * j.jump_sd) / j.jump_sd));
                } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                    return j.lambda * (1.0 - j.p_up) / (j.eta2 + 1.0) * strike *
                           std::pow(strike / s0, j.eta2);
                } else if constexpr (std::is_same_v<T, VGJumps>) {
                    const CGMYParams p = j.cgmy();
                    return p.c * (strike * exp_int_e1(p.g * (-m), cfg.specfun) -
                                  s0 * exp_int_e1((p.g + 1.0) * (-m), cfg.specfun));
                } else {
                    return -1.0;
                }
            },
            model.jumps);
        if (value >= 0.0 || !std::holds_alternative<GenericCPJumps>(model.jumps))
            return make_otm(value, "closed_form");
    }

    const TailInfo ti = tail_info(model.jumps);
    const auto integrand = [&](double y) {
        return ((strike - s0) - s0 * std::expm1(y)) * levy_density(model.jumps, y);
    };
    const double lo = lower_cut(ti, m, cfg.quad.tail_eps);
    return make_otm(quadrature::integrate_1d(integrand, lo, m, cfg.quad).value, "quadrature");
}

}  // namespace asianjump
