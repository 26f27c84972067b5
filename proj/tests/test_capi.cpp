#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "asianjump.h"

namespace {

const char* kMertonJson = R"({
  "market": {"s0": 1000.0, "r": 0.0, "q": 0.0},
  "diffusion": {"kind": "constant", "sigma": 0.126},
  "jumps": {"kind": "merton", "lambda": 0.175, "jump_mean": -0.39, "jump_sd": 0.339}
})";

struct ModelGuard {
    aj_model* m = nullptr;
    ~ModelGuard() { aj_model_free(m); }
};

}  // namespace

TEST_CASE("version and null-argument handling") {
    REQUIRE(aj_version() != nullptr);
    CHECK(std::strcmp(aj_version(), "0.1.0") == 0);

    CHECK(aj_model_from_json(nullptr, nullptr) == AJ_EINVAL);
    CHECK(std::strlen(aj_last_error()) > 0);

    aj_model* out = nullptr;
    CHECK(aj_model_from_json(nullptr, &out) == AJ_EINVAL);
    CHECK(aj_model_load(nullptr, &out) == AJ_EINVAL);
    CHECK(aj_model_save(nullptr, "x.json") == AJ_EINVAL);
    CHECK(aj_otm_coeff(nullptr, AJ_FIXED, AJ_CALL, 1020.0, 0, 0, nullptr, nullptr, nullptr) ==
          AJ_EINVAL);
    aj_model_free(nullptr);  // must be a safe no-op
}

TEST_CASE("model lifecycle and info") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);
    REQUIRE(g.m != nullptr);

    double s0 = 0, r = 1, q = 1, sig = 0;
    CHECK(aj_model_info(g.m, &s0, &r, &q, &sig) == AJ_OK);
    CHECK(s0 == 1000.0);
    CHECK(r == 0.0);
    CHECK(q == 0.0);
    CHECK(sig == 0.126);

    // individual out-pointers are optional
    CHECK(aj_model_info(g.m, &s0, nullptr, nullptr, nullptr) == AJ_OK);
}

TEST_CASE("coefficients through the c boundary") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);

    double value = 0;
    int method = -1, degenerate = -1;
    REQUIRE(aj_otm_coeff(g.m, AJ_FIXED, AJ_CALL, 1020.0, 0, 0, &value, &method, &degenerate) ==
            AJ_OK);
    CHECK(value == doctest::Approx(1.783407156434).epsilon(1e-9));
    CHECK(method == AJ_METHOD_CLOSED_FORM);
    CHECK(degenerate == 0);

    REQUIRE(aj_otm_coeff(g.m, AJ_FIXED, AJ_CALL, 1020.0, 1, 0, &value, &method, nullptr) ==
            AJ_OK);
    CHECK(value == doctest::Approx(1.783407156434).epsilon(1e-6));
    CHECK(method == AJ_METHOD_QUADRATURE);

    REQUIRE(aj_otm_coeff(g.m, AJ_FLOATING, AJ_PUT, 1.1, 0, 0, &value, nullptr, nullptr) == AJ_OK);
    CHECK(value == doctest::Approx(18.995337639).epsilon(1e-9));

    // boundary needs the explicit opt-in
    CHECK(aj_otm_coeff(g.m, AJ_FIXED, AJ_CALL, 1000.0, 0, 0, &value, nullptr, nullptr) ==
          AJ_EREGIME);
    CHECK(std::strlen(aj_last_error()) > 0);
    REQUIRE(aj_otm_coeff(g.m, AJ_FIXED, AJ_CALL, 1000.0, 0, 1, &value, nullptr, nullptr) ==
            AJ_OK);
    CHECK(value == doctest::Approx(2.150277848976).epsilon(1e-9));

    double atm = 0;
    int atm_degenerate = -1;
    REQUIRE(aj_atm_coeff(g.m, &atm, &atm_degenerate) == AJ_OK);
    CHECK(atm == doctest::Approx(29.021508555592).epsilon(1e-12));
    CHECK(atm_degenerate == 0);

    double eur = 0;
    REQUIRE(aj_european_otm_coeff(g.m, AJ_CALL, 1040.0, 0, &eur) == AJ_OK);
    CHECK(eur == doctest::Approx(3.505883038751).epsilon(1e-9));
}

TEST_CASE("assumption report buffer protocol") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);

    size_t needed = 0;
    int usable = -1;
    REQUIRE(aj_check_assumptions(g.m, nullptr, 0, &needed, &usable) == AJ_OK);
    CHECK(needed > 2);
    CHECK(usable == 1);

    std::string buf(needed, '\0');
    size_t needed2 = 0;
    REQUIRE(aj_check_assumptions(g.m, buf.data(), buf.size(), &needed2, nullptr) == AJ_OK);
    CHECK(needed2 == needed);
    CHECK(buf[0] == '{');
    CHECK(buf.find("\"checks\"") != std::string::npos);
    CHECK(buf.find("\"usable\"") != std::string::npos);

    // a short buffer truncates without failing
    char tiny[8];
    REQUIRE(aj_check_assumptions(g.m, tiny, sizeof tiny, &needed2, nullptr) == AJ_OK);
    CHECK(needed2 == needed);
}

TEST_CASE("price decomposition and implied vol round trip") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);

    double total = 0, diffusive = 0, jump = 0, sln = 0;
    int side = -1;
    REQUIRE(aj_approx_price(g.m, AJ_CALL, 1020.0, 1.0 / 52.0, &total, &diffusive, &jump, &sln,
                            &side) == AJ_OK);
    CHECK(total == diffusive + jump);
    CHECK(side == AJ_SIDE_CALL_DIRECT);
    CHECK(sln > 0.0);

    REQUIRE(aj_approx_price(g.m, AJ_PUT, 1020.0, 1.0 / 52.0, &total, nullptr, nullptr, nullptr,
                            &side) == AJ_OK);
    CHECK(side == AJ_SIDE_VIA_PARITY);

    // invert the diffusive part: recovers the proxy vol it was priced with
    double vol = 0;
    REQUIRE(aj_implied_vol(g.m, AJ_CALL, 1020.0, 1.0 / 52.0, diffusive, &vol) == AJ_OK);
    CHECK(vol == doctest::Approx(sln).epsilon(1e-8));

    CHECK(aj_implied_vol(g.m, AJ_CALL, 1020.0, 1.0 / 52.0, -1.0, &vol) == AJ_ENOSOLUTION);
}

TEST_CASE("mc and convergence through the c boundary") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);

    aj_mc_config cfg{};
    cfg.n_paths = 20000;
    cfg.n_steps = 50;
    cfg.seed = 5;
    cfg.batch_size = 0;  // defaulted

    double p1 = 0, se1 = 0, p2 = 0, se2 = 0;
    REQUIRE(aj_mc_price(g.m, AJ_FIXED, AJ_CALL, 1020.0, 1.0 / 52.0, &cfg, &p1, &se1) == AJ_OK);
    REQUIRE(aj_mc_price(g.m, AJ_FIXED, AJ_CALL, 1020.0, 1.0 / 52.0, &cfg, &p2, &se2) == AJ_OK);
    CHECK(p1 == p2);
    CHECK(se1 == se2);
    CHECK(p1 > 0.0);
    CHECK(se1 > 0.0);

    const double maturities[2] = {1.0 / 12.0, 1.0 / 52.0};
    double scaled[2] = {0, 0}, ses[2] = {0, 0}, asym[2] = {0, 0};
    REQUIRE(aj_convergence(g.m, AJ_FIXED, AJ_CALL, 1020.0, maturities, 2, &cfg, scaled, ses,
                           asym) == AJ_OK);
    CHECK(asym[0] == doctest::Approx(1.783407156434).epsilon(1e-9));
    CHECK(asym[1] == doctest::Approx(1.783407156434).epsilon(1e-9));
    CHECK(scaled[0] > 0.0);
    CHECK(ses[1] > 0.0);

    CHECK(aj_mc_price(g.m, AJ_FIXED, AJ_CALL, 900.0, -1.0, &cfg, &p1, &se1) == AJ_EINVAL);
}

TEST_CASE("save and load round trip") {
    ModelGuard g;
    REQUIRE(aj_model_from_json(kMertonJson, &g.m) == AJ_OK);
    const char* path = "capi_roundtrip_tmp.json";
    REQUIRE(aj_model_save(g.m, path) == AJ_OK);

    ModelGuard h;
    REQUIRE(aj_model_load(path, &h.m) == AJ_OK);
    double a = 0, b = 0;
    REQUIRE(aj_otm_coeff(g.m, AJ_FIXED, AJ_PUT, 960.0, 0, 0, &a, nullptr, nullptr) == AJ_OK);
    REQUIRE(aj_otm_coeff(h.m, AJ_FIXED, AJ_PUT, 960.0, 0, 0, &b, nullptr, nullptr) == AJ_OK);
    CHECK(a == b);
    std::remove(path);

    aj_model* bad = nullptr;
    CHECK(aj_model_from_json("{ broken", &bad) == AJ_EIO);
    CHECK(bad == nullptr);
    CHECK(aj_model_load("no_such_file_here.json", &bad) == AJ_EIO);
}
