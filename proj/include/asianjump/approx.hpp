#pragma once

#include <string>

#include "asianjump/asymptotics.hpp"
#include "asianjump/models.hpp"

namespace asianjump {

enum class SideUsed { call_direct, put_direct, via_parity };

struct ApproxPrice {
    double total = 0.0;
    double diffusive = 0.0;      // Black-form part with the log-normal proxy vol
    double jump_term = 0.0;      // jump coefficient * maturity
    SideUsed side_used = SideUsed::call_direct;
    double sigma_ln_used = 0.0;  // proxy vol that produced the diffusive part
};

struct SmilePoint {
    double k = 0.0;            // moneyness K/s0
    double implied_vol = 0.0;  // annualized vol of the average
    std::string source;        // "approx" | "mc"
};

// Arithmetic-average forward E[A_T] = s0*(e^{(r-q)T}-1)/((r-q)T); the analytic
// limit s0 is used when |r-q|*T < 1e-12.
double avg_forward(const MarketSpec& market, double maturity);

// Equivalent log-normal volatility of the average: sigma(s0)/sqrt(3) times a
// cubic polynomial in log k. The cubic truncation degrades beyond |log k| ~ 0.5
// (callers may warn); k <= 0 is a domain error.
double sigma_ln(const DiffusionSpec& diffusion, double k, double s0);

// Black-form diffusive component on the average forward with vol
// sigma_ln(K/s0): e^{-rT}[A(T)Phi(d1) - K Phi(d2)] for calls, parity mirror
// for puts. sigma(s0)=0 degenerates to the discounted intrinsic value.
double bs_asian_diffusive(const MarketSpec& market, const DiffusionSpec& diffusion, PutCall pc,
                          double strike, double maturity);

// Short-maturity analytic price for fixed strikes: diffusive Black form plus
// jump coefficient * T. K>=s0 prices the call directly and the put through
// put-call parity C - P = e^{-rT}(A(T) - K); K<=s0 mirrors. K=s0 prices the
// requested side with its own one-sided coefficient (both sides "direct",
// the documented two-fold ambiguity at the money). Floating style is
// unsupported: the average-minus-spot underlier can go negative, so the
// Black form does not apply.
ApproxPrice approx_price(const ModelSpec& model, const Instrument& inst, const AsymConfig& cfg = {});

// Implied vol of the average: inverts bs_asian_diffusive-form Black pricing by
// bisection on [1e-6, 5] to 1e-10 in price. Prices outside the attainable
// Black range raise no_solution.
double implied_vol(double price, const MarketSpec& market, PutCall pc, double strike,
                   double maturity);

}  // namespace asianjump
