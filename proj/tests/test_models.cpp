#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "asianjump/errors.hpp"
#include "asianjump/model_io.hpp"
#include "asianjump/models.hpp"
#include "fixtures.hpp"

using namespace asianjump;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected an Error");
}

}  // namespace

TEST_CASE("market and diffusion validation") {
    MarketSpec m{0.0, 0.0, 0.0};
    CHECK(code_of([&] { m.validate(); }) == ErrorCode::invalid_argument);
    m = {-5.0, 0.0, 0.0};
    CHECK_THROWS_AS(m.validate(), Error);
    m = {100.0, std::nan(""), 0.0};
    CHECK_THROWS_AS(m.validate(), Error);
    m = {100.0, 0.05, 0.01};
    CHECK_NOTHROW(m.validate());

    CHECK_THROWS_AS(DiffusionSpec::constant(-0.1).validate(), Error);
    CHECK_NOTHROW(DiffusionSpec::constant(0.0).validate());  // pure jump is legal

    DiffusionSpec local;
    local.kind = DiffusionKind::local;
    CHECK_THROWS_AS(local.validate(), Error);  // no handle
    local = DiffusionSpec::local([](double s) { return 0.2 + 1.0 / s; }, 0.1, 0.5);
    CHECK_NOTHROW(local.validate());
    CHECK(local.vol_at(10.0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(DiffusionSpec::local([](double) { return 0.2; }, 0.5, 0.1).validate(), Error);
}

TEST_CASE("jump parameter validation") {
    CHECK_THROWS_AS(validate(JumpSpec{MertonJumps{-1.0, 0.0, 0.3}}), Error);
    CHECK_THROWS_AS(validate(JumpSpec{MertonJumps{1.0, 0.0, 0.0}}), Error);
    CHECK_NOTHROW(validate(JumpSpec{MertonJumps{0.0, 0.0, 0.3}}));  // lambda=0 is legal

    CHECK_THROWS_AS(validate(JumpSpec{DoubleExpJumps{3.0, 1.4, 25.0, 25.0}}), Error);
    // eta1 must exceed 1 or the compensator E[e^Y] diverges
    CHECK_THROWS_AS(validate(JumpSpec{DoubleExpJumps{3.0, 0.6, 1.0, 25.0}}), Error);
    CHECK_THROWS_AS(validate(JumpSpec{DoubleExpJumps{3.0, 0.6, 25.0, 0.0}}), Error);
    CHECK_NOTHROW(validate(JumpSpec{DoubleExpJumps{3.0, 0.6, 25.0, 25.0}}));

    CHECK_THROWS_AS(validate(JumpSpec{VGJumps{0.0, 0.1, -0.3}}), Error);
    CHECK_THROWS_AS(validate(JumpSpec{VGJumps{0.4, -0.1, -0.3}}), Error);
    // gamma-clock exponential moment: (theta + sigma^2/2)*nu must stay below 1
    CHECK(code_of([] { validate(JumpSpec{VGJumps{1.0, 2.0, 0.5}}); }) ==
          ErrorCode::invalid_argument);
    CHECK_NOTHROW(validate(JumpSpec{VGJumps{0.4344, 0.1083, -0.3726}}));

    GenericCPJumps g;
    g.lambda = 1.0;
    CHECK_THROWS_AS(validate(JumpSpec{g}), Error);  // density handle required
    g.density = [](double) { return 0.5; };
    g.up_decay = 0.0;
    g.down_decay = 3.0;
    CHECK_THROWS_AS(validate(JumpSpec{g}), Error);
    g.up_decay = 3.0;
    CHECK_NOTHROW(validate(JumpSpec{g}));
    g.table_y = {0.0, 1.0};
    g.table_p = {0.5};
    CHECK_THROWS_AS(validate(JumpSpec{g}), Error);  // size mismatch
}

TEST_CASE("instrument validation") {
    Instrument inst{Style::fixed, PutCall::call, 1000.0, 1.0 / 52.0};
    CHECK_NOTHROW(inst.validate());
    inst.strike = 0.0;
    CHECK_THROWS_AS(inst.validate(), Error);
    inst.strike = 1000.0;
    inst.maturity = 0.0;
    CHECK_THROWS_AS(inst.validate(), Error);
}

TEST_CASE("compensators") {
    // frozen: lambda*(e^{mean + sd^2/2} - 1) for the normal jump law
    CHECK(compensator(make_merton_model().jumps) ==
          doctest::Approx(-0.049507440003).epsilon(1e-10));
    // frozen: 3*(0.6*25/24 + 0.4*25/26 - 1)
    CHECK(compensator(make_double_exp_model().jumps) ==
          doctest::Approx(0.028846153846).epsilon(1e-10));
    // frozen: -(1/nu)*log(1 - (theta + sigma^2/2)*nu)
    CHECK(compensator(make_vg_model().jumps) == doctest::Approx(-0.274138276550).epsilon(1e-10));

    CHECK(compensator(JumpSpec{MertonJumps{0.0, -0.39, 0.339}}) == 0.0);
}

TEST_CASE("tabulated generic density reproduces the closed compensator") {
    // tabulate the normal jump density of the merton set and integrate it
    const double mean = -0.39, sd = 0.339;
    GenericCPJumps g;
    g.lambda = 0.175;
    g.up_decay = 5.0;  // gaussian tails decay faster than any declared exponential
    g.down_decay = 5.0;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double y = mean - 8.0 * sd + 16.0 * sd * i / (n - 1);
        g.table_y.push_back(y);
        g.table_p.push_back(std::exp(-0.5 * (y - mean) * (y - mean) / (sd * sd)) /
                            (sd * std::sqrt(2.0 * 3.14159265358979323846)));
    }
    g.density = [mean, sd](double y) {
        return std::exp(-0.5 * (y - mean) * (y - mean) / (sd * sd)) /
               (sd * std::sqrt(2.0 * 3.14159265358979323846));
    };
    CHECK(compensator(JumpSpec{g}) == doctest::Approx(-0.049507440003).epsilon(1e-6));
}

TEST_CASE("levy densities") {
    const double pi = 3.14159265358979323846;
    const auto merton = make_merton_model().jumps;
    CHECK(levy_density(merton, -0.39) ==
          doctest::Approx(0.175 / (0.339 * std::sqrt(2.0 * pi))).epsilon(1e-13));

    const auto kou = make_double_exp_model().jumps;
    CHECK(levy_density(kou, 0.1) ==
          doctest::Approx(3.0 * 0.6 * 25.0 * std::exp(-2.5)).epsilon(1e-13));
    CHECK(levy_density(kou, -0.1) ==
          doctest::Approx(3.0 * 0.4 * 25.0 * std::exp(-2.5)).epsilon(1e-13));

    const auto vg = make_vg_model().jumps;
    const auto cgmy = std::get<VGJumps>(vg).cgmy();
    CHECK(levy_density(vg, 0.05) ==
          doctest::Approx(cgmy.c * std::exp(-cgmy.m * 0.05) / 0.05).epsilon(1e-12));
    CHECK(levy_density(vg, -0.05) ==
          doctest::Approx(cgmy.c * std::exp(-cgmy.g * 0.05) / 0.05).epsilon(1e-12));
    CHECK(code_of([&] { levy_density(vg, 0.0); }) == ErrorCode::domain);
}

TEST_CASE("vg cgmy map and round trip") {
    const VGJumps vg{0.4344, 0.1083, -0.3726};
    const auto p = vg.cgmy();
    // frozen from the quadratic for the gamma-exponential tail rates
    CHECK(p.c == doctest::Approx(9.233610341644).epsilon(1e-10));
    CHECK(p.g == doctest::Approx(8.113213497531).epsilon(1e-10));
    CHECK(p.m == doctest::Approx(12.062268776673).epsilon(1e-10));
    CHECK(p.y == 0.0);

    const VGJumps back = vg_from_cgmy(p.c, p.g, p.m);
    CHECK(back.sigma_vg == doctest::Approx(vg.sigma_vg).epsilon(1e-12));
    CHECK(back.nu == doctest::Approx(vg.nu).epsilon(1e-12));
    CHECK(back.theta == doctest::Approx(vg.theta).epsilon(1e-12));

    CHECK_THROWS_AS(vg_from_cgmy(-1.0, 8.0, 12.0), Error);
}

TEST_CASE("assumption report levels") {
    auto report = check_assumptions(make_merton_model());
    CHECK(report.all_passed());
    CHECK(report.usable());
    CHECK(!report.summary().empty());

    // pure-jump variant: usable but flagged
    auto pure = make_double_exp_model(0.0);
    report = check_assumptions(pure);
    CHECK(report.usable());
    CHECK(!report.all_passed());

    // vg with an infinite second exponential moment: hard fail, not usable
    ModelSpec bad = make_vg_model();
    bad.jumps = VGJumps{0.9, 0.8, 0.5};  // (theta+sigma^2/2)nu<1 but 2(theta+sigma^2)nu>=1
    report = check_assumptions(bad);
    CHECK(!report.usable());

    // heavy up-tail double-exponential: compensator exists but error bounds don't
    ModelSpec heavy = make_double_exp_model();
    heavy.jumps = DoubleExpJumps{3.0, 0.6, 1.5, 25.0};
    report = check_assumptions(heavy);
    CHECK(!report.usable());

    // broken parameters are reported, not thrown
    ModelSpec broken = make_merton_model();
    broken.market.s0 = -1.0;
    report = check_assumptions(broken);
    CHECK(!report.usable());
}

TEST_CASE("json round trip") {
    const ModelSpec m = make_merton_model();
    const std::string text = model_to_json_text(m);
    const ModelSpec back = model_from_json_text(text);
    CHECK(back.market.s0 == m.market.s0);
    CHECK(back.market.r == m.market.r);
    CHECK(back.diffusion.sigma_const == m.diffusion.sigma_const);
    const auto& j = std::get<MertonJumps>(back.jumps);
    CHECK(j.lambda == 0.175);
    CHECK(j.jump_mean == -0.39);
    CHECK(j.jump_sd == 0.339);

    // all three parametric kinds survive the trip
    for (const ModelSpec& spec : {make_double_exp_model(), make_vg_model()}) {
        const ModelSpec b = model_from_json_text(model_to_json_text(spec));
        CHECK(compensator(b.jumps) == doctest::Approx(compensator(spec.jumps)).epsilon(1e-15));
    }
}

TEST_CASE("json file round trip") {
    const std::string path = "model_io_roundtrip_tmp.json";
    save_model(make_vg_model(), path);
    const ModelSpec back = load_model(path);
    CHECK(std::get<VGJumps>(back.jumps).nu == doctest::Approx(0.1083).epsilon(1e-15));
    std::remove(path.c_str());

    CHECK(code_of([] { load_model("does_not_exist_anywhere.json"); }) == ErrorCode::io);
}

TEST_CASE("json failure modes") {
    CHECK(code_of([] { model_from_json_text("{ not json"); }) == ErrorCode::io);
    CHECK(code_of([] { model_from_json_text("[1,2,3]"); }) == ErrorCode::io);
    CHECK(code_of([] {
              model_from_json_text(R"({"market":{"s0":100,"r":0,"q":0},)"
                                   R"("diffusion":{"kind":"cubic","sigma":0.2},)"
                                   R"("jumps":{"kind":"merton","lambda":1,"jump_mean":0,"jump_sd":0.3}})");
          }) == ErrorCode::io);
    CHECK(code_of([] {
              model_from_json_text(R"({"market":{"s0":100,"r":0,"q":0},)"
                                   R"("diffusion":{"kind":"constant","sigma":0.2},)"
                                   R"("jumps":{"kind":"levy_flight","lambda":1}})");
          }) == ErrorCode::io);

    // a local-vol handle has no portable representation
    ModelSpec local = make_merton_model();
    local.diffusion = DiffusionSpec::local([](double) { return 0.2; }, 0.1, 0.3);
    CHECK(code_of([&] { model_to_json_text(local); }) == ErrorCode::unsupported);
}

TEST_CASE("tabulated generic density round trips through json") {
    GenericCPJumps g;
    g.lambda = 2.0;
    g.up_decay = 25.0;
    g.down_decay = 25.0;
    auto dexp_density = [](double y) {
        return y >= 0.0 ? 0.6 * 25.0 * std::exp(-25.0 * y) : 0.4 * 25.0 * std::exp(25.0 * y);
    };
    g.density = dexp_density;
    for (int i = 0; i <= 400; ++i) {
        const double y = -0.5 + i * 0.0025;
        g.table_y.push_back(y);
        g.table_p.push_back(dexp_density(y));
    }
    ModelSpec m = make_merton_model();
    m.jumps = g;

    const std::string text = model_to_json_text(m);
    const ModelSpec back = model_from_json_text(text);
    const auto& gb = std::get<GenericCPJumps>(back.jumps);
    CHECK(gb.table_y.size() == g.table_y.size());
    CHECK(gb.density);  // loader builds the interpolant
    CHECK(gb.density(0.1) == doctest::Approx(0.6 * 25.0 * std::exp(-2.5)).epsilon(1e-3));
    // reloaded density is the linear interpolant, so only quadrature-level
    // agreement is expected
    CHECK(compensator(back.jumps) == doctest::Approx(compensator(m.jumps)).epsilon(1e-5));
}
