#include "asianjump/approx.hpp"

#include <cmath>
#include <cstdio>

#include "asianjump/specfun.hpp"

namespace asianjump {

namespace {

using specfun::norm_cdf;

double black_on_forward(double forward, double strike, double vol, double maturity,
                        double discount, PutCall pc) {
    const double stdev = vol * std::sqrt(maturity);
    if (!(stdev > 0.0)) {
        const double intrinsic =
            pc == PutCall::call ? std::max(forward - strike, 0.0) : std::max(strike - forward, 0.0);
        return discount * intrinsic;
    }
    const double d1 = std::log(forward / strike) / stdev + 0.5 * stdev;
    const double d2 = d1 - stdev;
    if (pc == PutCall::call)
        return discount * (forward * norm_cdf(d1) - strike * norm_cdf(d2));
    return discount * (strike * norm_cdf(-d2) - forward * norm_cdf(-d1));
}

}  // namespace

double avg_forward(const MarketSpec& market, double maturity) {
    market.validate();
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        fail(ErrorCode::invalid_argument, "avg_forward requires maturity > 0");
    const double drift = market.r - market.q;
    if (std::abs(drift) * maturity < 1e-12) return market.s0;
    return market.s0 * std::expm1(drift * maturity) / (drift * maturity);
}

double sigma_ln(const DiffusionSpec& diffusion, double k, double s0) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorCode::domain, "sigma_ln requires moneyness > 0");
    const double sigma = diffusion.vol_at(s0);
    const double lk = std::log(k);
    if (std::abs(lk) > 0.5)
        std::fprintf(stderr,
                     "warning: sigma_ln at |log k| = %.3f; the cubic series is only meant for "
                     "moderate moneyness\n",
                     std::abs(lk));
    const double poly =
        1.0 + lk / 10.0 - 23.0 / 2100.0 * lk * lk + lk * lk * lk / 3500.0;
    return sigma / std::sqrt(3.0) * poly;
}

double bs_asian_diffusive(const MarketSpec& market, const DiffusionSpec& diffusion, PutCall pc,
                          double strike, double maturity) {
    market.validate();
    diffusion.validate();
    if (!(strike > 0.0) || !std::isfinite(strike))
        fail(ErrorCode::invalid_argument, "bs_asian_diffusive requires strike > 0");
    const double forward = avg_forward(market, maturity);
    const double vol = sigma_ln(diffusion, strike / market.s0, market.s0);
    const double discount = std::exp(-market.r * maturity);
    return black_on_forward(forward, strike, vol, maturity, discount, pc);
}

ApproxPrice approx_price(const ModelSpec& model, const Instrument& inst, const AsymConfig& cfg) {
    model.validate();
    inst.validate();
    if (inst.style == Style::floating)
        fail(ErrorCode::unsupported,
             "the Black-form approximation needs a positive underlier and does not apply to "
             "floating strikes; use the floating otm coefficient or Monte Carlo");

    const double s0 = model.market.s0;
    const double strike = inst.strike;
    const double maturity = inst.maturity;
    const double discount = std::exp(-model.market.r * maturity);
    const double parity_rhs = discount * (avg_forward(model.market, maturity) - strike);

    AsymConfig boundary_cfg = cfg;
    boundary_cfg.allow_boundary = true;

    ApproxPrice out;
    out.sigma_ln_used = sigma_ln(model.diffusion, strike / s0, s0);

    if (strike >= s0) {
        // call side is out of the money (one-sided at the boundary)
        const double a = otm_call_coeff(model, strike, boundary_cfg).value;
        const double bs_call =
            bs_asian_diffusive(model.market, model.diffusion, PutCall::call, strike, maturity);
        const double call_total = bs_call + a * maturity;
        if (inst.putcall == PutCall::call) {
            out.total = call_total;
            out.diffusive = bs_call;
            out.jump_term = a * maturity;
            out.side_used = SideUsed::call_direct;
            return out;
        }
        if (strike == s0) {
            // at the money the put side carries its own one-sided coefficient
            const double ap = otm_put_coeff(model, strike, boundary_cfg).value;
            const double bs_put =
                bs_asian_diffusive(model.market, model.diffusion, PutCall::put, strike, maturity);
            out.total = bs_put + ap * maturity;
            out.diffusive = bs_put;
            out.jump_term = ap * maturity;
            out.side_used = SideUsed::put_direct;
            return out;
        }
        out.total = call_total - parity_rhs;
        out.diffusive = bs_call - parity_rhs;
        out.jump_term = a * maturity;
        out.side_used = SideUsed::via_parity;
        return out;
    }

    // strike < s0: the put side is out of the money
    const double a = otm_put_coeff(model, strike, boundary_cfg).value;
    const double bs_put =
        bs_asian_diffusive(model.market, model.diffusion, PutCall::put, strike, maturity);
    const double put_total = bs_put + a * maturity;
    if (inst.putcall == PutCall::put) {
        out.total = put_total;
        out.diffusive = bs_put;
        out.jump_term = a * maturity;
        out.side_used = SideUsed::put_direct;
        return out;
    }
    out.total = put_total + parity_rhs;
    out.diffusive = bs_put + parity_rhs;
    out.jump_term = a * maturity;
    out.side_used = SideUsed::via_parity;
    return out;
}

double implied_vol(double price, const MarketSpec& market, PutCall pc, double strike,
                   double maturity) {
    market.validate();
    if (!(strike > 0.0) || !std::isfinite(strike))
        fail(ErrorCode::invalid_argument, "implied_vol requires strike > 0");
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        fail(ErrorCode::invalid_argument, "implied_vol requires maturity > 0");
    if (!(price > 0.0) || !std::isfinite(price))
        fail(ErrorCode::no_solution, "implied_vol requires a positive price");

    const double forward = avg_forward(market, maturity);
    const double discount = std::exp(-market.r * maturity);
    const auto value_at = [&](double vol) {
        return black_on_forward(forward, strike, vol, maturity, discount, pc);
    };

    double lo = 1e-6, hi = 5.0;
    const double p_lo = value_at(lo);
    const double p_hi = value_at(hi);
    if (price < p_lo)
        fail(ErrorCode::no_solution, "price is below the zero-volatility bound of the Black form");
    if (price > p_hi)
        fail(ErrorCode::no_solution,
             "price exceeds the Black-form bound at the top of the volatility bracket");

    // bisection: the Black price is strictly increasing in vol on the bracket.
    // Run the interval down to ~1e-14 so the root is pinned in vol, not only
    // in price (the vega can be tiny far from the money).
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 120 && hi - lo > 1e-14; ++iter) {
        mid = 0.5 * (lo + hi);
        if (value_at(mid) < price)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace asianjump
