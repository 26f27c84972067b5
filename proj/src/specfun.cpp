#include "asianjump/specfun.hpp"

#include <cmath>
#include <string>

#include "asianjump/errors.hpp"

namespace asianjump::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

}  // namespace

void SpecFunConfig::validate() const {
    if (!(tol > 0.0) || tol > 1e-6)
        fail(ErrorCode::invalid_argument, "specfun tol must lie in (0, 1e-6]");
    if (max_terms < 100) fail(ErrorCode::invalid_argument, "specfun max_terms must be >= 100");
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double exp_int_e1(double x, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(x > 0.0)) fail(ErrorCode::domain, "exp_int_e1 requires x > 0");

    if (x <= 1.0) {
        // power series: E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k/(k k!)
        double sum = -kEulerGamma - std::log(x);
        double pow_term = 1.0;  // x^k / k!
        for (int k = 1; k <= cfg.max_terms; ++k) {
            pow_term *= x / k;
            const double term = ((k & 1) ? pow_term : -pow_term) / k;
            sum += term;
            if (std::abs(term) < cfg.tol * std::abs(sum)) return sum;
        }
        fail(ErrorCode::non_converged, "exp_int_e1 series did not converge");
    }

    // modified Lentz on the continued fraction
    // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
    const double tiny = 1e-300;
    double f = x + 1.0;
    if (f == 0.0) f = tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        const double a = -static_cast<double>(n) * n;
        const double b = x + 2.0 * n + 1.0;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < cfg.tol) return std::exp(-x) / f;
    }
    fail(ErrorCode::non_converged, "exp_int_e1 continued fraction did not converge");
}

double log_integral(double z, const SpecFunConfig& cfg) {
    if (!(z >= 0.0) || z >= 1.0)
        fail(ErrorCode::domain, "log_integral is restricted to z in [0, 1)");
    if (z == 0.0) return 0.0;
    return -exp_int_e1(-std::log(z), cfg);
}

namespace {

// With a=1 and c=b+3 the nth term is z^n b(b+1)(b+2)/((b+n)(b+n+1)(b+n+2));
// partial fractions plus the shift S(beta) = 1/beta + z S(beta+1) collapse the
// whole sum to
//   F = (b+2)(1 - b(1-z))/2 + (b(b+1)(b+2)/2) (1-z)^2 S(b+2),
// with S(beta) = sum z^n/(n+beta). The (1-z)^2 factor tames the z->1 region
// where the direct series crawls: S only needs absolute accuracy there.
double hyp2f1_near_unit(double b, double z, const SpecFunConfig& cfg) {
    const double prefactor = 0.5 * b * (b + 1.0) * (b + 2.0) * (1.0 - z) * (1.0 - z);
    const double leading = 0.5 * (b + 2.0) * (1.0 - b * (1.0 - z));
    const double s_tol = cfg.tol * 0.5 * (b + 2.0) / prefactor;

    double s = 0.0;
    double zn = 1.0;
    for (int n = 0; n <= cfg.max_terms; ++n) {
        s += zn / (n + b + 2.0);
        zn *= z;
        // geometric tail bound: remaining terms < zn * z/(1-z) / (n+b+3)
        if (zn / ((1.0 - z) * (n + b + 3.0)) < s_tol) return leading + prefactor * s;
    }
    fail(ErrorCode::non_converged, "hyp2f1 tail sum did not converge", leading + prefactor * s);
}

}  // namespace

double hyp2f1_restricted(double b, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(b > 0.0)) fail(ErrorCode::domain, "hyp2f1_restricted requires b > 0");
    if (!(z >= 0.0 && z <= 1.0)) fail(ErrorCode::domain, "hyp2f1_restricted requires z in [0, 1]");

    if (z == 1.0) {
        // Gauss: 2F1(1,b;b+3;1) = Gamma(b+3)Gamma(2)/(Gamma(b+2)Gamma(3)) = (b+2)/2
        return 0.5 * (b + 2.0);
    }
    if (z > 0.95) return hyp2f1_near_unit(b, z, cfg);

    // plain series: term ratio (b+n)/(b+3+n) * z
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n <= cfg.max_terms; ++n) {
        term *= (b + n) / (b + 3.0 + n) * z;
        sum += term;
        if (term < cfg.tol * sum) return sum;
    }
    fail(ErrorCode::non_converged, "hyp2f1_restricted series did not converge");
}

double arctanh(double x) {
    if (!(std::abs(x) < 1.0)) fail(ErrorCode::domain, "arctanh requires |x| < 1");
    return std::atanh(x);
}

}  // namespace asianjump::specfun
