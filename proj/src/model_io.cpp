#include "asianjump/model_io.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "asianjump/errors.hpp"

namespace asianjump {

namespace {

using nlohmann::json;

double require_number(const json& node, const char* section, const char* key) {
    if (!node.contains(key))
        fail(ErrorCode::io, std::string("model json: missing ") + section + "." + key);
    const json& v = node.at(key);
    if (!v.is_number())
        fail(ErrorCode::io, std::string("model json: ") + section + "." + key + " must be a number");
    return v.get<double>();
}

std::string require_string(const json& node, const char* section, const char* key) {
    if (!node.contains(key))
        fail(ErrorCode::io, std::string("model json: missing ") + section + "." + key);
    const json& v = node.at(key);
    if (!v.is_string())
        fail(ErrorCode::io, std::string("model json: ") + section + "." + key + " must be a string");
    return v.get<std::string>();
}

const json& require_object(const json& node, const char* key) {
    if (!node.contains(key)) fail(ErrorCode::io, std::string("model json: missing ") + key);
    const json& v = node.at(key);
    if (!v.is_object())
        fail(ErrorCode::io, std::string("model json: ") + key + " must be an object");
    return v;
}

std::vector<double> require_number_array(const json& node, const char* section, const char* key) {
    if (!node.contains(key))
        fail(ErrorCode::io, std::string("model json: missing ") + section + "." + key);
    const json& v = node.at(key);
    if (!v.is_array())
        fail(ErrorCode::io, std::string("model json: ") + section + "." + key + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            fail(ErrorCode::io,
                 std::string("model json: ") + section + "." + key + " must hold numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

// linear interpolant of a tabulated density, zero outside the grid
std::function<double(double)> make_table_density(std::vector<double> ys, std::vector<double> ps) {
    return [ys = std::move(ys), ps = std::move(ps)](double y) -> double {
        if (ys.empty() || y <= ys.front() || y >= ys.back()) return 0.0;
        const auto it = std::upper_bound(ys.begin(), ys.end(), y);
        const size_t hi = static_cast<size_t>(it - ys.begin());
        const size_t lo = hi - 1;
        const double w = (y - ys[lo]) / (ys[hi] - ys[lo]);
        return ps[lo] + w * (ps[hi] - ps[lo]);
    };
}

JumpSpec jumps_from_json(const json& node) {
    const std::string kind = require_string(node, "jumps", "kind");
    if (kind == "merton") {
        MertonJumps j;
        j.lambda = require_number(node, "jumps", "lambda");
        j.jump_mean = require_number(node, "jumps", "jump_mean");
        j.jump_sd = require_number(node, "jumps", "jump_sd");
        return j;
    }
    if (kind == "double_exp") {
        DoubleExpJumps j;
        j.lambda = require_number(node, "jumps", "lambda");
        j.p_up = require_number(node, "jumps", "p_up");
        j.eta1 = require_number(node, "jumps", "eta1");
        j.eta2 = require_number(node, "jumps", "eta2");
        return j;
    }
    if (kind == "vg") {
        VGJumps j;
        j.sigma_vg = require_number(node, "jumps", "sigma_vg");
        j.nu = require_number(node, "jumps", "nu");
        j.theta = require_number(node, "jumps", "theta");
        return j;
    }
    if (kind == "generic") {
        GenericCPJumps j;
        j.lambda = require_number(node, "jumps", "lambda");
        j.up_decay = require_number(node, "jumps", "up_decay");
        j.down_decay = require_number(node, "jumps", "down_decay");
        const json& density = require_object(node, "density");
        j.table_y = require_number_array(density, "jumps.density", "grid");
        j.table_p = require_number_array(density, "jumps.density", "values");
        if (j.table_y.size() != j.table_p.size() || j.table_y.size() < 2)
            fail(ErrorCode::io, "model json: jumps.density grid/values need equal length >= 2");
        if (!std::is_sorted(j.table_y.begin(), j.table_y.end()))
            fail(ErrorCode::io, "model json: jumps.density grid must be increasing");
        j.density = make_table_density(j.table_y, j.table_p);
        return j;
    }
    fail(ErrorCode::io, "model json: unknown jumps.kind '" + kind +
                            "' (expected merton | double_exp | vg | generic)");
}

}  // namespace

ModelSpec model_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::io, std::string("model json: parse failure: ") + e.what());
    }
    if (!root.is_object()) fail(ErrorCode::io, "model json: top level must be an object");

    ModelSpec model;
    const json& market = require_object(root, "market");
    model.market.s0 = require_number(market, "market", "s0");
    model.market.r = require_number(market, "market", "r");
    model.market.q = require_number(market, "market", "q");

    const json& diffusion = require_object(root, "diffusion");
    const std::string kind = require_string(diffusion, "diffusion", "kind");
    if (kind != "constant")
        fail(ErrorCode::io,
             "model json: only diffusion.kind = constant has a file representation; local-vol "
             "models are constructed through the library API");
    model.diffusion = DiffusionSpec::constant(require_number(diffusion, "diffusion", "sigma"));

    // "density" lives next to the scalar jump fields for the generic kind
    json jumps_node = require_object(root, "jumps");
    model.jumps = jumps_from_json(jumps_node);

    model.validate();
    return model;
}

std::string model_to_json_text(const ModelSpec& model) {
    if (model.diffusion.kind != DiffusionKind::constant)
        fail(ErrorCode::unsupported, "local-vol diffusion handles have no file representation");

    json root;
    root["market"] = {{"s0", model.market.s0}, {"r", model.market.r}, {"q", model.market.q}};
    root["diffusion"] = {{"kind", "constant"}, {"sigma", model.diffusion.sigma_const}};

    std::visit(
        [&root](const auto& j) {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, MertonJumps>) {
                root["jumps"] = {{"kind", "merton"},
                                 {"lambda", j.lambda},
                                 {"jump_mean", j.jump_mean},
                                 {"jump_sd", j.jump_sd}};
            } else if constexpr (std::is_same_v<T, DoubleExpJumps>) {
                root["jumps"] = {{"kind", "double_exp"},
                                 {"lambda", j.lambda},
                                 {"p_up", j.p_up},
                                 {"eta1", j.eta1},
                                 {"eta2", j.eta2}};
            } else if constexpr (std::is_same_v<T, VGJumps>) {
                root["jumps"] = {{"kind", "vg"},
                                 {"sigma_vg", j.sigma_vg},
                                 {"nu", j.nu},
                                 {"theta", j.theta}};
            } else {
                if (j.table_y.empty())
                    fail(ErrorCode::unsupported,
                         "generic jump density has no file representation without a tabulation");
                root["jumps"] = {{"kind", "generic"},
                                 {"lambda", j.lambda},
                                 {"up_decay", j.up_decay},
                                 {"down_decay", j.down_decay},
                                 {"density", {{"grid", j.table_y}, {"values", j.table_p}}}};
            }
        },
        model.jumps);

    return root.dump(2) + "\n";
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open model file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json_text(text);
}

void save_model(const ModelSpec& model, const std::string& path) {
    const std::string text = model_to_json_text(model);
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open model file for writing: " + path);
    out << text;
    if (!out) fail(ErrorCode::io, "write failure on model file: " + path);
}

}  // namespace asianjump
