#pragma once

#include <functional>
#include <utility>

#include "asianjump/errors.hpp"

namespace asianjump::quadrature {

struct QuadConfig {
    double abs_tol = 1e-10;   // absolute tolerance (callers scale by problem size)
    double rel_tol = 1e-9;    // relative tolerance
    int max_depth = 48;       // bisection depth cap per subinterval
    double tail_eps = 1e-12;  // permitted truncated tail mass for infinite ranges

    void validate() const;  // tolerances in (0, 1e-4], max_depth >= 30
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (G7,K15): repeatedly bisects the subinterval
// with the largest error estimate until sum(err) <= max(abs_tol, rel_tol*|value|).
// Exceeding the refinement budget throws a non_converged Error carrying the
// best estimate reached.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadConfig& cfg = {});

// Smallest y_max with analytic tail bound int_{y_max}^inf e^{-rate*t} dt =
// e^{-rate*y_max}/rate <= tail_eps. decay_rate <= 0 -> domain error (the
// integrand must have a genuine exponential tail for truncation to be valid).
double truncate_upper(double decay_rate, double tail_eps);

// Iterated double integral: outer adaptive pass over t in [t_lo, t_hi], inner
// adaptive pass over y in [y_limits(t).first, y_limits(t).second]. Inner ranges
// with lo >= hi contribute zero -- that is how callers encode endpoints where
// the inner region analytically vanishes (e.g. a lower limit diverging to +inf).
QuadResult integrate_2d_iterated(const std::function<double(double, double)>& f,
                                 double t_lo, double t_hi,
                                 const std::function<std::pair<double, double>(double)>& y_limits,
                                 const QuadConfig& cfg = {});

}  // namespace asianjump::quadrature
