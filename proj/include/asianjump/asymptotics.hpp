#pragma once

#include <string>

#include "asianjump/models.hpp"
#include "asianjump/quadrature.hpp"
#include "asianjump/specfun.hpp"

namespace asianjump {

enum class Regime { otm, atm };
enum class Moneyness { itm, atm, otm };

struct AsymCoeff {
    double value = 0.0;       // leading-order coefficient: price ~ value*T (otm) or value*sqrt(T) (atm)
    Regime regime = Regime::otm;
    std::string method;       // "closed_form" | "quadrature" | "limit"
    bool degenerate = false;  // atm with sigma(s0)=0: coefficient vanishes, price is O(T)
};

struct AsymConfig {
    quadrature::QuadConfig quad;
    specfun::SpecFunConfig specfun;
    // Force the Levy-density double-integral route even where a closed form
    // exists; the two paths cross-validate each other.
    bool force_quadrature = false;
    // Allow evaluating the otm formulas exactly at the money (K=s0 resp.
    // kappa=1), returning the one-sided limit of that side. Off by default:
    // the strict ops reject the boundary with a regime error.
    bool allow_boundary = false;
};

// Moneyness classification for a fixed-strike instrument: otm means the
// short-maturity payoff limit is zero (K>s0 for calls, K<s0 for puts).
Moneyness classify_fixed(PutCall pc, double s0, double strike);
// Floating style: kappa<1 is otm for calls, kappa>1 otm for puts, kappa=1 atm.
Moneyness classify_floating(PutCall pc, double kappa);

// Jump-driven O(T) coefficients for out-of-the-money fixed strikes. Strict
// regime: calls need K>s0, puts K<s0 (domain error otherwise). Closed forms
// for Merton (normal cdf integrals over transfer time) and double-exponential
// (Gauss hypergeometric); VG and generic densities go through adaptive
// quadrature of the Levy-measure double integral.
AsymCoeff otm_call_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg = {});
AsymCoeff otm_put_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg = {});

// Floating-strike analogues in the strike fraction kappa: calls need kappa<1,
// puts kappa>1. Values scale linearly in s0.
AsymCoeff otm_float_call_coeff(const ModelSpec& model, double kappa, const AsymConfig& cfg = {});
AsymCoeff otm_float_put_coeff(const ModelSpec& model, double kappa, const AsymConfig& cfg = {});

// At-the-money coefficient: price ~ sigma(s0)*s0*sqrt(T/(6*pi)), identical for
// calls and puts and for fixed (K=s0) and floating (kappa=1) styles. Jumps do
// not enter at leading order. sigma(s0)=0 -> degenerate flag set, value 0.
AsymCoeff atm_coeff(const ModelSpec& model);

// Ratio of the atm Asian coefficient to the atm European coefficient
// sigma(s0)*s0/sqrt(2*pi): exactly 1/sqrt(3), independent of the model.
double atm_asian_european_ratio();

// Leading O(T) coefficients of the *European* option under the same models,
// for the short-maturity Asian/European comparison. Same strict otm regime.
AsymCoeff european_otm_call_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg = {});
AsymCoeff european_otm_put_coeff(const ModelSpec& model, double strike, const AsymConfig& cfg = {});

}  // namespace asianjump
