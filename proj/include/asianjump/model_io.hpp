#pragma once

#include <string>

#include "asianjump/models.hpp"

namespace asianjump {

// JSON model files carry {market, diffusion, jumps}. Diffusion is serialized
// only for kind=constant; a local-vol handle has no portable representation, so
// saving one raises unsupported. Generic jump densities are serialized as a
// tabulated grid and reloaded with linear interpolation (zero outside the
// grid), which preserves pricing within quadrature tolerance.
ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& model, const std::string& path);

ModelSpec model_from_json_text(const std::string& text);
std::string model_to_json_text(const ModelSpec& model);

}  // namespace asianjump
