#pragma once

#include "asianjump/errors.hpp"

namespace asianjump::specfun {

struct SpecFunConfig {
    double tol = 1e-13;      // relative termination tolerance for series / continued fractions
    int max_terms = 100000;  // iteration cap

    void validate() const;  // tol in (0, 1e-6], max_terms >= 100
};

// Standard normal CDF. Absolute error well below 1e-12 (erfc-backed).
double norm_cdf(double x);

// Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0.
// Series for x <= 1, modified-Lentz continued fraction for x > 1.
double exp_int_e1(double x, const SpecFunConfig& cfg = {});

// Logarithmic integral li(z) = int_0^z dt/log t on [0,1): li(0)=0, negative and
// decreasing on (0,1). Computed as li(z) = Ei(log z) = -E1(-log z).
// z < 0 or z >= 1 -> domain error (li diverges at 1; larger z never needed here).
double log_integral(double z, const SpecFunConfig& cfg = {});

// Restricted Gauss hypergeometric 2F1(1, b; b+3; z) for b > 0 and z in [0,1].
// c-a-b = 2 > 0 so the series converges on the closed interval; z=1 evaluates
// to (b+2)/2 by the Gauss summation theorem. Near z=1 the plain series tail
// only decays like n^-3, so that neighborhood uses a partial-fraction
// rearrangement whose remaining sum carries a (1-z)^2 prefactor and therefore
// needs only absolute accuracy at the boundary.
double hyp2f1_restricted(double b, double z, const SpecFunConfig& cfg = {});

// Inverse hyperbolic tangent, 0.5*log((1+x)/(1-x)); |x| >= 1 -> domain error.
double arctanh(double x);

}  // namespace asianjump::specfun
