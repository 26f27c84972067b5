#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "asianjump/errors.hpp"
#include "asianjump/quadrature.hpp"
#include "asianjump/specfun.hpp"

using namespace asianjump;
using namespace asianjump::specfun;

TEST_CASE("norm_cdf basics") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // 97.5% quantile, frozen from an independent erfc evaluation
    CHECK(norm_cdf(1.959964) == doctest::Approx(0.975000000904).epsilon(1e-11));
    for (double x : {0.3, 1.0, 2.0, 5.0})
        CHECK(norm_cdf(x) + norm_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_cdf(-10.0) < 1e-20);
    CHECK(norm_cdf(10.0) >= 1.0 - 1e-15);
    CHECK(norm_cdf(0.5) > norm_cdf(0.4));
}

TEST_CASE("norm_cdf against a cumulative trapezoid of the density") {
    // 10^6-interval trapezoid of phi on [-8, 8], compared at 20 grid nodes
    const long n = 1000000;
    const double a = -8.0, b = 8.0;
    const double h = (b - a) / n;
    const double inv_sqrt_2pi = 0.3989422804014327;
    auto phi = [&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); };

    long double cum = 0.0L;
    double prev = phi(a);
    long next_check = 50000;
    int checked = 0;
    for (long i = 1; i <= n; ++i) {
        const double x = a + i * h;
        const double cur = phi(x);
        cum += 0.5L * (prev + cur) * h;
        prev = cur;
        if (i == next_check) {
            // the trapezoid starts at -8 where the cdf is ~6.2e-16, well below
            // the 1e-9 comparison tolerance
            CHECK(std::abs(norm_cdf(x) - static_cast<double>(cum)) <= 1e-9);
            ++checked;
            next_check += 50000;
        }
    }
    CHECK(checked == 20);
}

TEST_CASE("exponential integral E1") {
    // frozen against an independent series / continued-fraction evaluation
    CHECK(exp_int_e1(0.5) == doctest::Approx(0.559773594776161).epsilon(1e-13));
    CHECK(exp_int_e1(1.0) == doctest::Approx(0.219383934395520).epsilon(1e-13));
    CHECK(exp_int_e1(2.0) == doctest::Approx(0.048900510708061).epsilon(1e-13));
    CHECK(exp_int_e1(10.0) == doctest::Approx(4.156968929685324636e-06).epsilon(1e-13));

    // the series and the continued fraction meet continuously at x = 1
    CHECK(std::abs(exp_int_e1(1.0 - 1e-12) - exp_int_e1(1.0 + 1e-12)) <= 1e-12);

    CHECK_THROWS_AS(exp_int_e1(0.0), Error);
    CHECK_THROWS_AS(exp_int_e1(-1.0), Error);
    try {
        exp_int_e1(-1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain);
    }
}

TEST_CASE("logarithmic integral li") {
    CHECK(log_integral(0.0) == 0.0);
    // frozen against -E1(-log z) computed with an independent implementation
    CHECK(log_integral(0.1) == doctest::Approx(-0.032389789593291).epsilon(1e-13));
    CHECK(log_integral(0.5) == doctest::Approx(-0.378671043061088).epsilon(1e-13));
    CHECK(log_integral(0.9) == doctest::Approx(-1.775800683423525).epsilon(1e-13));

    // decreasing on (0, 1): the integrand 1/log t is negative there
    double last = 0.0;
    for (double z = 0.1; z < 0.95; z += 0.1) {
        const double v = log_integral(z);
        CHECK(v < last);
        last = v;
    }

    for (double bad : {-0.1, 1.0, 1.5}) CHECK_THROWS_AS(log_integral(bad), Error);
}

TEST_CASE("li agrees with direct quadrature of 1/log t") {
    for (double z = 0.1; z < 0.95; z += 0.1) {
        const auto q = quadrature::integrate_1d(
            [](double t) { return t > 0.0 ? 1.0 / std::log(t) : 0.0; }, 0.0, z);
        CHECK(log_integral(z) == doctest::Approx(q.value).epsilon(1e-8));
    }
}

namespace {

// brute-force long-double partial sum of 2F1(1, b; b+3; z); the term ratio is
// z*(b+n)/(b+3+n) so plain summation converges everywhere on [0, 1)
double hyp2f1_bruteforce(double b, double z) {
    long double sum = 0.0L, term = 1.0L;
    for (long n = 0; n < 5000000; ++n) {
        sum += term;
        term *= static_cast<long double>(z) * (b + n) / (b + 3.0 + n);
        if (term < 1e-24L * sum) break;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("restricted 2F1 special points") {
    for (double b : {1.0, 5.5, 24.0}) CHECK(hyp2f1_restricted(b, 0.0) == 1.0);
    // z = 1 sums in closed form to (b+2)/2
    for (double b : {1.0, 2.5, 24.0, 25.0})
        CHECK(hyp2f1_restricted(b, 1.0) == doctest::Approx(0.5 * (b + 2.0)).epsilon(1e-15));
    // frozen values, one on each side of the series/near-unit split
    CHECK(hyp2f1_restricted(24.0, 1.0 / 1.05) == doctest::Approx(7.432890816948394).epsilon(1e-12));
    CHECK(hyp2f1_restricted(25.0, 0.9) == doctest::Approx(5.426269118892260).epsilon(1e-12));
}

TEST_CASE("restricted 2F1 against brute-force summation") {
    for (double b : {1.0, 3.5, 10.0, 20.0, 30.0}) {
        for (double z : {0.0, 0.25, 0.5, 0.9, 0.99}) {
            const double got = hyp2f1_restricted(b, z);
            CHECK(got == doctest::Approx(hyp2f1_bruteforce(b, z)).epsilon(1e-10));
            CHECK(got >= 1.0);
        }
    }
    // the near-unit rearrangement specifically, up against the boundary
    for (double z : {0.952381, 0.96, 0.99, 0.999}) {
        CHECK(hyp2f1_restricted(24.0, z) ==
              doctest::Approx(hyp2f1_bruteforce(24.0, z)).epsilon(1e-10));
    }
    // extreme z: terms decay like z^n/n, so grant a bigger iteration budget
    SpecFunConfig wide;
    wide.max_terms = 3000000;
    CHECK(hyp2f1_restricted(24.0, 0.9999, wide) ==
          doctest::Approx(hyp2f1_bruteforce(24.0, 0.9999)).epsilon(1e-10));
}

TEST_CASE("restricted 2F1 domain") {
    CHECK_THROWS_AS(hyp2f1_restricted(0.0, 0.5), Error);
    CHECK_THROWS_AS(hyp2f1_restricted(-1.0, 0.5), Error);
    CHECK_THROWS_AS(hyp2f1_restricted(2.0, -0.1), Error);
    CHECK_THROWS_AS(hyp2f1_restricted(2.0, 1.1), Error);
}

TEST_CASE("arctanh") {
    CHECK(arctanh(0.0) == 0.0);
    CHECK(arctanh(0.5) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
    CHECK(arctanh(-0.3) == doctest::Approx(-arctanh(0.3)).epsilon(1e-15));
    CHECK(std::tanh(arctanh(0.8)) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(arctanh(1.0), Error);
    CHECK_THROWS_AS(arctanh(-1.2), Error);
}

TEST_CASE("specfun config validation") {
    SpecFunConfig bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.tol = 1e-13;
    bad.max_terms = 10;
    CHECK_THROWS_AS(bad.validate(), Error);
}
