#pragma once

// Model constructions shared across the test suites. These are the three
// parameter sets the published tables use, so the frozen expectations in the
// tests refer to exactly these numbers.

#include "asianjump/models.hpp"

inline asianjump::ModelSpec make_merton_model() {
    asianjump::ModelSpec m;
    m.market = {1000.0, 0.0, 0.0};
    m.diffusion = asianjump::DiffusionSpec::constant(0.126);
    m.jumps = asianjump::MertonJumps{0.175, -0.39, 0.339};
    return m;
}

inline asianjump::ModelSpec make_double_exp_model(double sigma = 0.3) {
    asianjump::ModelSpec m;
    m.market = {1000.0, 0.0, 0.0};
    m.diffusion = asianjump::DiffusionSpec::constant(sigma);
    m.jumps = asianjump::DoubleExpJumps{3.0, 0.6, 25.0, 25.0};
    return m;
}

inline asianjump::ModelSpec make_vg_model() {
    asianjump::ModelSpec m;
    m.market = {1000.0, 0.0, 0.0};
    m.diffusion = asianjump::DiffusionSpec::constant(0.0051);
    m.jumps = asianjump::VGJumps{0.4344, 0.1083, -0.3726};
    return m;
}
