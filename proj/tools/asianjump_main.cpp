// asianjump command-line front end. Talks to the library exclusively through
// the C interface; all numeric work lives behind that boundary.
#include <cinttypes>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "asianjump.h"

using nlohmann::json;

namespace {

struct ModelDeleter {
    void operator()(aj_model* m) const { aj_model_free(m); }
};
using ModelPtr = std::unique_ptr<aj_model, ModelDeleter>;

int report_failure(aj_status status) {
    std::fprintf(stderr, "error: %s\n", aj_last_error());
    if (status == AJ_EREGIME)
        std::fprintf(stderr,
                     "hint: at the money use `asym --regime atm`; in the money price the "
                     "opposite side with `price` (parity handles the rest)\n");
    return static_cast<int>(status);
}

ModelPtr load_model_or_exit(const std::string& path, int& exit_code) {
    aj_model* raw = nullptr;
    const aj_status status = aj_model_load(path.c_str(), &raw);
    if (status != AJ_OK) {
        exit_code = report_failure(status);
        return nullptr;
    }
    exit_code = 0;
    return ModelPtr(raw);
}

ModelPtr model_from_text(const char* text) {
    aj_model* raw = nullptr;
    if (aj_model_from_json(text, &raw) != AJ_OK) {
        std::fprintf(stderr, "internal: embedded model rejected: %s\n", aj_last_error());
        std::exit(AJ_EINTERNAL);
    }
    return ModelPtr(raw);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// every file-emitting command drops a sidecar describing the run
void write_manifest(const std::string& command, const std::string& model_path,
                    const json& params, const std::vector<std::string>& outputs) {
    if (outputs.empty()) return;
    json doc;
    doc["command"] = command;
    doc["model_path"] = model_path;
    doc["params"] = params;
    doc["outputs"] = outputs;
    doc["timestamp"] = iso_timestamp();
    const std::string path = outputs.front() + ".manifest.json";
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
    if (!out) std::fprintf(stderr, "warning: could not write %s\n", path.c_str());
}

int emit_json(const json& doc, const std::string& command, const std::string& model_path,
              const json& params, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text;
        if (!out) {
            std::fprintf(stderr, "error: could not write %s\n", out_path.c_str());
            return AJ_EIO;
        }
        write_manifest(command, model_path, params, {out_path});
    }
    return 0;
}

const char* method_name(int method) {
    switch (method) {
        case AJ_METHOD_QUADRATURE: return "quadrature";
        case AJ_METHOD_LIMIT: return "limit";
        default: return "closed_form";
    }
}

const char* side_name(int side) {
    switch (side) {
        case AJ_SIDE_CALL_DIRECT: return "call_direct";
        case AJ_SIDE_PUT_DIRECT: return "put_direct";
        default: return "via_parity";
    }
}

aj_mc_config make_mc_config(long paths, int steps, std::uint64_t seed, int antithetic) {
    aj_mc_config cfg{};
    cfg.n_paths = paths;
    cfg.n_steps = steps;
    cfg.seed = seed;
    cfg.batch_size = 0;  // library default
    cfg.antithetic = antithetic;
    return cfg;
}

// RFC 4180 wants CRLF row endings
void csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << "\r\n";
}

// ---- embedded table parameter sets -------------------------------------

const char* kMertonModel = R"({
  "market": { "s0": 1000.0, "r": 0.0, "q": 0.0 },
  "diffusion": { "kind": "constant", "sigma": 0.126 },
  "jumps": { "kind": "merton", "lambda": 0.175, "jump_mean": -0.39, "jump_sd": 0.339 }
})";

const char* kVGModel = R"({
  "market": { "s0": 1000.0, "r": 0.0, "q": 0.0 },
  "diffusion": { "kind": "constant", "sigma": 0.0051 },
  "jumps": { "kind": "vg", "sigma_vg": 0.4344, "nu": 0.1083, "theta": -0.3726 }
})";

std::string kou_model_text(double sigma) {
    std::ostringstream text;
    text << R"({
  "market": { "s0": 1000.0, "r": 0.0, "q": 0.0 },
  "diffusion": { "kind": "constant", "sigma": )"
         << sigma << R"( },
  "jumps": { "kind": "double_exp", "lambda": 3.0, "p_up": 0.6, "eta1": 25.0, "eta2": 25.0 }
})";
    return text.str();
}

struct TableFlags {
    long paths = 100000;
    int steps = 100;
    std::uint64_t seed = 0;
    std::string out_path;
};

int table_mjd(const TableFlags& flags) {
    const ModelPtr model = model_from_text(kMertonModel);
    const double maturity = 1.0 / 52.0;
    const aj_mc_config cfg = make_mc_config(flags.paths, flags.steps, flags.seed, 0);

    struct Row {
        double strike;
        aj_putcall side;
    };
    const Row rows[] = {{960, AJ_PUT}, {980, AJ_PUT},  {1000, AJ_PUT},
                        {1000, AJ_CALL}, {1020, AJ_CALL}, {1040, AJ_CALL}};

    std::ostringstream csv;
    csv_row(csv, {"strike", "putcall", "mc_price", "mc_std_err", "coeff_times_maturity",
                  "diffusive", "total"});
    std::printf("%8s %8s %10s %10s %10s %10s %10s\n", "K", "side", "MC", "StdErr", "a*T", "C_BS",
                "approx");
    for (const Row& row : rows) {
        double total = 0, diffusive = 0, jump_term = 0;
        aj_status status = aj_approx_price(model.get(), row.side, row.strike, maturity, &total,
                                           &diffusive, &jump_term, nullptr, nullptr);
        if (status != AJ_OK) return report_failure(status);
        double price = 0, std_err = 0;
        status = aj_mc_price(model.get(), AJ_FIXED, row.side, row.strike, maturity, &cfg, &price,
                             &std_err);
        if (status != AJ_OK) return report_failure(status);

        const char* side = row.side == AJ_PUT ? "put" : "call";
        csv_row(csv, {format_full(row.strike), side, format_full(price), format_full(std_err),
                      format_full(jump_term), format_full(diffusive), format_full(total)});
        std::printf("%8.0f %8s %10.4f %10.4f %10.4f %10.4f %10.4f\n", row.strike, side, price,
                    std_err, jump_term, diffusive, total);
    }

    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path, std::ios::binary);
        out << csv.str();
        if (!out) {
            std::fprintf(stderr, "error: could not write %s\n", flags.out_path.c_str());
            return AJ_EIO;
        }
        json params = {{"name", "mjd"}, {"paths", flags.paths}, {"steps", flags.steps},
                       {"seed", flags.seed}, {"maturity", maturity}};
        write_manifest("table", "(embedded)", params, {flags.out_path});
    }
    return 0;
}

int table_kou(const TableFlags& flags) {
    const double maturity = 1.0 / 52.0;
    const double s0 = 1000.0;
    const aj_mc_config cfg = make_mc_config(flags.paths, flags.steps, flags.seed, 0);
    const double sigmas[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    const double moneyness[] = {0.9, 0.95, 1.0, 1.05, 1.1};

    std::ostringstream csv;
    csv_row(csv, {"sigma", "k", "theory", "mc_price", "mc_std_err"});
    std::printf("%6s %6s %14s %10s %8s\n", "sigma", "k", "theory", "MC", "StdErr");
    for (double sigma : sigmas) {
        const ModelPtr model = model_from_text(kou_model_text(sigma).c_str());
        for (double k : moneyness) {
            const double strike = k * s0;
            const bool atm = k == 1.0;
            const aj_putcall side = k > 1.0 ? AJ_CALL : AJ_PUT;  // out-of-the-money side; put at k=1

            std::string theory_cell, printed;
            if (!atm) {
                double total = 0;
                const aj_status status = aj_approx_price(model.get(), side, strike, maturity,
                                                         &total, nullptr, nullptr, nullptr, nullptr);
                if (status != AJ_OK) return report_failure(status);
                theory_cell = format_full(total);
                printed = format_fixed(total, 3);
            } else {
                // at the money each side carries its own one-sided coefficient
                double put_total = 0, call_total = 0;
                aj_status status = aj_approx_price(model.get(), AJ_PUT, strike, maturity,
                                                   &put_total, nullptr, nullptr, nullptr, nullptr);
                if (status != AJ_OK) return report_failure(status);
                status = aj_approx_price(model.get(), AJ_CALL, strike, maturity, &call_total,
                                         nullptr, nullptr, nullptr, nullptr);
                if (status != AJ_OK) return report_failure(status);
                theory_cell = format_full(put_total) + "/" + format_full(call_total);
                const int dec = put_total < 1.0 ? 3 : 2;
                printed = format_fixed(put_total, dec) + "/" + format_fixed(call_total, dec);
            }

            double price = 0, std_err = 0;
            const aj_status status = aj_mc_price(model.get(), AJ_FIXED, side, strike, maturity,
                                                 &cfg, &price, &std_err);
            if (status != AJ_OK) return report_failure(status);

            csv_row(csv, {format_full(sigma), format_full(k), theory_cell, format_full(price),
                          format_full(std_err)});
            std::printf("%6.1f %6.2f %14s %10.3f %8.3f\n", sigma, k, printed.c_str(), price,
                        std_err);
        }
    }

    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path, std::ios::binary);
        out << csv.str();
        if (!out) {
            std::fprintf(stderr, "error: could not write %s\n", flags.out_path.c_str());
            return AJ_EIO;
        }
        json params = {{"name", "kou"}, {"paths", flags.paths}, {"steps", flags.steps},
                       {"seed", flags.seed}, {"maturity", maturity}};
        write_manifest("table", "(embedded)", params, {flags.out_path});
    }
    return 0;
}

// shared by the vg and float tables: coefficient column plus (1/T)-scaled MC
// columns at the three paper maturities
int table_scaled(const char* name, const ModelPtr& model, aj_style style, aj_putcall side,
                 const std::vector<double>& grid, double scale_strike, const TableFlags& flags) {
    const double maturities[] = {1.0 / 252.0, 1.0 / 52.0, 1.0 / 12.0};
    const aj_mc_config cfg = make_mc_config(flags.paths, flags.steps, flags.seed, 0);

    std::ostringstream csv;
    csv_row(csv, {"k", "asym_coeff", "scaled_mc_252", "scaled_se_252", "scaled_mc_52",
                  "scaled_se_52", "scaled_mc_12", "scaled_se_12"});
    std::printf("%6s %10s %20s %20s %20s\n", "k", "asym", "T=1/252", "T=1/52", "T=1/12");
    for (double k : grid) {
        const double strike = k * scale_strike;
        double coeff = 0;
        aj_status status = aj_otm_coeff(model.get(), style, side, strike, 0,
                                        /*allow_boundary=*/k == 1.0 ? 1 : 0, &coeff, nullptr,
                                        nullptr);
        if (status != AJ_OK) return report_failure(status);

        std::vector<std::string> cells = {format_full(k), format_full(coeff)};
        std::string line;
        for (double maturity : maturities) {
            double price = 0, std_err = 0;
            status = aj_mc_price(model.get(), style, side, strike, maturity, &cfg, &price,
                                 &std_err);
            if (status != AJ_OK) return report_failure(status);
            cells.push_back(format_full(price / maturity));
            cells.push_back(format_full(std_err / maturity));
            line += "      " + format_fixed(price / maturity, 2) + " +- " +
                    format_fixed(std_err / maturity, 2);
        }
        csv_row(csv, cells);
        std::printf("%6.2f %10.3f %s\n", k, coeff, line.c_str());
    }

    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path, std::ios::binary);
        out << csv.str();
        if (!out) {
            std::fprintf(stderr, "error: could not write %s\n", flags.out_path.c_str());
            return AJ_EIO;
        }
        json params = {{"name", name}, {"paths", flags.paths}, {"steps", flags.steps},
                       {"seed", flags.seed}};
        write_manifest("table", "(embedded)", params, {flags.out_path});
    }
    return 0;
}

int cmd_table(const std::string& name, const TableFlags& flags) {
    if (name == "mjd") return table_mjd(flags);
    if (name == "kou") return table_kou(flags);
    if (name == "vg") {
        const ModelPtr model = model_from_text(kVGModel);
        return table_scaled("vg", model, AJ_FIXED, AJ_CALL,
                            {1.0, 1.02, 1.04, 1.06, 1.08, 1.10, 1.20}, 1000.0, flags);
    }
    if (name == "float") {
        const ModelPtr model = model_from_text(kMertonModel);
        return table_scaled("float", model, AJ_FLOATING, AJ_PUT,
                            {1.0, 1.02, 1.04, 1.06, 1.08, 1.10, 1.12, 1.14, 1.16, 1.18, 1.20},
                            1.0, flags);
    }
    std::fprintf(stderr, "error: unknown table '%s' (expected mjd, kou, vg, or float)\n",
                 name.c_str());
    return AJ_EINVAL;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asian option pricing under jump models: short-maturity asymptotic "
                 "coefficients, analytic approximation, and Monte Carlo"};
    app.require_subcommand(1);

    std::string model_path, out_path;
    std::string style = "fixed", putcall = "call", regime = "auto", method = "closed";
    double strike = 0.0, kappa = 0.0, maturity = 0.0;
    long paths = 100000;
    int steps = 100;
    std::uint64_t seed = 0;
    bool antithetic = false;

    // ---- asym ----
    auto* asym = app.add_subcommand("asym", "short-maturity coefficient of the price expansion");
    asym->add_option("--model", model_path, "model spec (json)")->required();
    asym->add_option("--style", style, "fixed|floating")->check(CLI::IsMember({"fixed", "floating"}));
    asym->add_option("--putcall", putcall, "call|put")->check(CLI::IsMember({"call", "put"}));
    auto* asym_strike = asym->add_option("--strike", strike, "cash strike (fixed style)");
    auto* asym_kappa = asym->add_option("--kappa", kappa, "strike fraction (floating style)");
    asym->add_option("--regime", regime, "auto|otm|atm")->check(CLI::IsMember({"auto", "otm", "atm"}));
    asym->add_option("--method", method, "closed|quad")->check(CLI::IsMember({"closed", "quad"}));
    asym->add_option("--out", out_path, "also write the JSON here");

    // ---- price ----
    auto* price_cmd = app.add_subcommand("price", "analytic short-maturity approximation (fixed strikes)");
    price_cmd->add_option("--model", model_path, "model spec (json)")->required();
    price_cmd->add_option("--strike", strike, "cash strike")->required();
    price_cmd->add_option("--T", maturity, "maturity in years")->required();
    price_cmd->add_option("--putcall", putcall, "call|put")->check(CLI::IsMember({"call", "put"}));
    price_cmd->add_option("--out", out_path, "also write the JSON here");

    // ---- mc ----
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo price");
    mc_cmd->add_option("--model", model_path, "model spec (json)")->required();
    mc_cmd->add_option("--style", style, "fixed|floating")->check(CLI::IsMember({"fixed", "floating"}));
    mc_cmd->add_option("--putcall", putcall, "call|put")->check(CLI::IsMember({"call", "put"}));
    auto* mc_strike = mc_cmd->add_option("--strike", strike, "cash strike (fixed style)");
    auto* mc_kappa = mc_cmd->add_option("--kappa", kappa, "strike fraction (floating style)");
    mc_cmd->add_option("--T", maturity, "maturity in years")->required();
    mc_cmd->add_option("--paths", paths, "simulated paths");
    mc_cmd->add_option("--steps", steps, "time grid steps");
    mc_cmd->add_option("--seed", seed, "rng seed");
    mc_cmd->add_flag("--antithetic", antithetic, "pair paths with mirrored gaussians");
    mc_cmd->add_option("--out", out_path, "also write the JSON here");

    // ---- ivol ----
    double quoted_price = 0.0;
    auto* ivol_cmd = app.add_subcommand("ivol", "implied log-normal vol of the average");
    ivol_cmd->add_option("--model", model_path, "model spec (json)")->required();
    ivol_cmd->add_option("--price", quoted_price, "option price to invert")->required();
    ivol_cmd->add_option("--strike", strike, "cash strike")->required();
    ivol_cmd->add_option("--T", maturity, "maturity in years")->required();
    ivol_cmd->add_option("--putcall", putcall, "call|put")->check(CLI::IsMember({"call", "put"}));
    ivol_cmd->add_option("--out", out_path, "also write the JSON here");

    // ---- table ----
    std::string table_name;
    TableFlags table_flags;
    auto* table_cmd = app.add_subcommand("table", "reproduce a published table (mjd|kou|vg|float)");
    table_cmd->add_option("name", table_name, "mjd|kou|vg|float")->required();
    table_cmd->add_option("--paths", table_flags.paths, "simulated paths per MC cell");
    table_cmd->add_option("--steps", table_flags.steps, "time grid steps");
    table_cmd->add_option("--seed", table_flags.seed, "rng seed");
    table_cmd->add_option("--out", table_flags.out_path, "write the full-precision CSV here");

    // ---- smile ----
    double k_min = 0.9, k_max = 1.1;
    int n_points = 21;
    std::string source = "approx";
    auto* smile_cmd = app.add_subcommand("smile", "implied-vol smile sweep");
    smile_cmd->add_option("--model", model_path, "model spec (json)")->required();
    smile_cmd->add_option("--T", maturity, "maturity in years")->required();
    smile_cmd->add_option("--k-min", k_min, "lowest strike fraction");
    smile_cmd->add_option("--k-max", k_max, "highest strike fraction");
    smile_cmd->add_option("--n-points", n_points, "grid size");
    smile_cmd->add_option("--source", source, "approx|mc")->check(CLI::IsMember({"approx", "mc"}));
    smile_cmd->add_option("--paths", paths, "simulated paths (mc source)");
    smile_cmd->add_option("--steps", steps, "time grid steps (mc source)");
    smile_cmd->add_option("--seed", seed, "rng seed (mc source)");
    smile_cmd->add_option("--out", out_path, "write the CSV here");

    // ---- convergence ----
    std::string t_list_text = "0.003968253968253968,0.019230769230769232,0.08333333333333333";
    auto* conv_cmd = app.add_subcommand("convergence", "(1/T)-scaled MC sweep vs the asymptote");
    conv_cmd->add_option("--model", model_path, "model spec (json)")->required();
    conv_cmd->add_option("--style", style, "fixed|floating")->check(CLI::IsMember({"fixed", "floating"}));
    conv_cmd->add_option("--putcall", putcall, "call|put")->check(CLI::IsMember({"call", "put"}));
    auto* conv_strike = conv_cmd->add_option("--strike", strike, "cash strike (fixed style)");
    auto* conv_kappa = conv_cmd->add_option("--kappa", kappa, "strike fraction (floating style)");
    conv_cmd->add_option("--T-list", t_list_text, "comma-separated maturities");
    conv_cmd->add_option("--paths", paths, "simulated paths");
    conv_cmd->add_option("--steps", steps, "time grid steps");
    conv_cmd->add_option("--seed", seed, "rng seed");
    conv_cmd->add_option("--out", out_path, "write the CSV here");

    CLI11_PARSE(app, argc, argv);

    const aj_putcall pc = putcall == "put" ? AJ_PUT : AJ_CALL;
    const aj_style st = style == "floating" ? AJ_FLOATING : AJ_FIXED;

    // floating commands take --kappa, fixed take --strike
    const auto pick_strike = [&](CLI::Option* strike_opt, CLI::Option* kappa_opt,
                                 double& value) -> bool {
        if (st == AJ_FLOATING) {
            if (kappa_opt->count() == 0) {
                std::fprintf(stderr, "error: floating style needs --kappa\n");
                return false;
            }
            value = kappa;
            return true;
        }
        if (strike_opt->count() == 0) {
            std::fprintf(stderr, "error: fixed style needs --strike\n");
            return false;
        }
        value = strike;
        return true;
    };

    if (asym->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;

        double s0 = 0;
        if (aj_status status = aj_model_info(model.get(), &s0, nullptr, nullptr, nullptr);
            status != AJ_OK)
            return report_failure(status);

        double inst_strike = 0.0;
        const bool have_strike =
            (st == AJ_FLOATING ? asym_kappa->count() : asym_strike->count()) > 0;
        if (have_strike) inst_strike = st == AJ_FLOATING ? kappa : strike;

        bool use_atm = regime == "atm";
        if (regime == "auto" && have_strike)
            use_atm = st == AJ_FLOATING ? inst_strike == 1.0 : inst_strike == s0;
        if (!use_atm && !have_strike) {
            std::fprintf(stderr, "error: %s\n",
                         st == AJ_FLOATING ? "floating style needs --kappa" : "fixed style needs --strike");
            return AJ_EINVAL;
        }

        json doc;
        if (use_atm) {
            double value = 0;
            int degenerate = 0;
            if (aj_status status = aj_atm_coeff(model.get(), &value, &degenerate); status != AJ_OK)
                return report_failure(status);
            doc = {{"value", value}, {"regime", "atm"}, {"method", "closed_form"},
                   {"degenerate", degenerate != 0}};
        } else {
            double value = 0;
            int method_code = 0, degenerate = 0;
            const aj_status status =
                aj_otm_coeff(model.get(), st, pc, inst_strike, method == "quad" ? 1 : 0,
                             /*allow_boundary=*/0, &value, &method_code, &degenerate);
            if (status != AJ_OK) return report_failure(status);
            doc = {{"value", value}, {"regime", "otm"}, {"method", method_name(method_code)},
                   {"degenerate", degenerate != 0}};
        }
        json params = {{"style", style}, {"putcall", putcall}, {"regime", regime},
                       {"method", method}};
        if (have_strike) params[st == AJ_FLOATING ? "kappa" : "strike"] = inst_strike;
        return emit_json(doc, "asym", model_path, params, out_path);
    }

    if (price_cmd->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;
        double total = 0, diffusive = 0, jump_term = 0, sigma_ln = 0;
        int side_used = 0;
        const aj_status status = aj_approx_price(model.get(), pc, strike, maturity, &total,
                                                 &diffusive, &jump_term, &sigma_ln, &side_used);
        if (status != AJ_OK) return report_failure(status);
        const json doc = {{"total", total},         {"diffusive", diffusive},
                          {"jump_term", jump_term}, {"sigma_ln", sigma_ln},
                          {"side_used", side_name(side_used)}, {"strike", strike},
                          {"maturity", maturity},   {"putcall", putcall}};
        const json params = {{"strike", strike}, {"maturity", maturity}, {"putcall", putcall}};
        return emit_json(doc, "price", model_path, params, out_path);
    }

    if (mc_cmd->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;
        double inst_strike = 0.0;
        if (!pick_strike(mc_strike, mc_kappa, inst_strike)) return AJ_EINVAL;
        const aj_mc_config cfg = make_mc_config(paths, steps, seed, antithetic ? 1 : 0);
        double out_price = 0, std_err = 0;
        const aj_status status = aj_mc_price(model.get(), st, pc, inst_strike, maturity, &cfg,
                                             &out_price, &std_err);
        if (status != AJ_OK) return report_failure(status);
        const json doc = {{"price", out_price}, {"std_err", std_err}, {"n_paths", paths},
                          {"n_steps", steps},   {"seed", seed},       {"style", style},
                          {"putcall", putcall}, {"strike", inst_strike}, {"maturity", maturity}};
        const json params = {{"style", style},   {"putcall", putcall}, {"strike", inst_strike},
                             {"maturity", maturity}, {"paths", paths}, {"steps", steps},
                             {"seed", seed}};
        return emit_json(doc, "mc", model_path, params, out_path);
    }

    if (ivol_cmd->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;
        double vol = 0;
        const aj_status status =
            aj_implied_vol(model.get(), pc, strike, maturity, quoted_price, &vol);
        if (status != AJ_OK) return report_failure(status);
        const json doc = {{"implied_vol", vol}, {"price", quoted_price}, {"strike", strike},
                          {"maturity", maturity}, {"putcall", putcall}};
        const json params = {{"price", quoted_price}, {"strike", strike},
                             {"maturity", maturity}, {"putcall", putcall}};
        return emit_json(doc, "ivol", model_path, params, out_path);
    }

    if (table_cmd->parsed()) return cmd_table(table_name, table_flags);

    if (smile_cmd->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;
        if (!(k_min > 0.0) || !(k_max >= k_min) || n_points < 1) {
            std::fprintf(stderr, "error: smile needs 0 < k-min <= k-max and n-points >= 1\n");
            return AJ_EINVAL;
        }
        double s0 = 0;
        if (aj_status status = aj_model_info(model.get(), &s0, nullptr, nullptr, nullptr);
            status != AJ_OK)
            return report_failure(status);
        const aj_mc_config cfg = make_mc_config(paths, steps, seed, 0);

        std::ostringstream csv;
        csv_row(csv, {"k", "implied_vol", "side"});
        std::printf("%10s %14s %6s\n", "k", "implied_vol", "side");
        int warnings = 0;
        for (int i = 0; i < n_points; ++i) {
            double k = n_points == 1 ? k_min
                                     : k_min + i * (k_max - k_min) / (n_points - 1);
            if (std::abs(k - 1.0) < 1e-12) k = 1.0;  // exact dual-side point
            std::vector<aj_putcall> sides;
            if (k > 1.0)
                sides = {AJ_CALL};
            else if (k < 1.0)
                sides = {AJ_PUT};
            else
                sides = {AJ_PUT, AJ_CALL};

            for (aj_putcall side : sides) {
                const double cash_strike = k * s0;
                double option_price = 0;
                aj_status status;
                if (source == "approx")
                    status = aj_approx_price(model.get(), side, cash_strike, maturity,
                                             &option_price, nullptr, nullptr, nullptr, nullptr);
                else
                    status = aj_mc_price(model.get(), AJ_FIXED, side, cash_strike, maturity, &cfg,
                                         &option_price, nullptr);
                if (status != AJ_OK) return report_failure(status);

                double vol = 0;
                status = aj_implied_vol(model.get(), side, cash_strike, maturity, option_price,
                                        &vol);
                const char* side_text = side == AJ_PUT ? "put" : "call";
                if (status == AJ_ENOSOLUTION) {
                    ++warnings;
                    csv_row(csv, {format_full(k), "", side_text});
                    std::printf("%10.5f %14s %6s\n", k, "-", side_text);
                    continue;
                }
                if (status != AJ_OK) return report_failure(status);
                csv_row(csv, {format_full(k), format_full(vol), side_text});
                std::printf("%10.5f %14.8f %6s\n", k, vol, side_text);
            }
        }
        if (warnings)
            std::fprintf(stderr, "warning: %d grid point(s) had no implied vol in range\n",
                         warnings);

        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            out << csv.str();
            if (!out) {
                std::fprintf(stderr, "error: could not write %s\n", out_path.c_str());
                return AJ_EIO;
            }
            const json params = {{"maturity", maturity}, {"k_min", k_min}, {"k_max", k_max},
                                 {"n_points", n_points}, {"source", source}, {"paths", paths},
                                 {"steps", steps},       {"seed", seed}};
            write_manifest("smile", model_path, params, {out_path});
        }
        return 0;
    }

    if (conv_cmd->parsed()) {
        int exit_code = 0;
        const ModelPtr model = load_model_or_exit(model_path, exit_code);
        if (!model) return exit_code;
        double inst_strike = 0.0;
        if (!pick_strike(conv_strike, conv_kappa, inst_strike)) return AJ_EINVAL;

        std::vector<double> maturities;
        std::stringstream parts(t_list_text);
        std::string token;
        while (std::getline(parts, token, ',')) {
            try {
                maturities.push_back(std::stod(token));
            } catch (const std::exception&) {
                std::fprintf(stderr, "error: bad maturity '%s' in --T-list\n", token.c_str());
                return AJ_EINVAL;
            }
        }
        if (maturities.empty()) {
            std::fprintf(stderr, "error: --T-list is empty\n");
            return AJ_EINVAL;
        }

        const aj_mc_config cfg = make_mc_config(paths, steps, seed, 0);
        std::vector<double> scaled(maturities.size()), scaled_se(maturities.size()),
            asym_scaled(maturities.size());
        const aj_status status =
            aj_convergence(model.get(), st, pc, inst_strike, maturities.data(), maturities.size(),
                           &cfg, scaled.data(), scaled_se.data(), asym_scaled.data());
        if (status != AJ_OK) return report_failure(status);

        std::ostringstream csv;
        csv_row(csv, {"maturity", "scaled_price", "scaled_std_err", "asym_scaled"});
        std::printf("%14s %14s %14s %14s\n", "T", "(1/T)*price", "(1/T)*stderr", "asym");
        for (std::size_t i = 0; i < maturities.size(); ++i) {
            csv_row(csv, {format_full(maturities[i]), format_full(scaled[i]),
                          format_full(scaled_se[i]), format_full(asym_scaled[i])});
            std::printf("%14.8f %14.4f %14.4f %14.4f\n", maturities[i], scaled[i], scaled_se[i],
                        asym_scaled[i]);
        }

        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            out << csv.str();
            if (!out) {
                std::fprintf(stderr, "error: could not write %s\n", out_path.c_str());
                return AJ_EIO;
            }
            const json params = {{"style", style},   {"putcall", putcall},
                                 {"strike", inst_strike}, {"T_list", t_list_text},
                                 {"paths", paths},   {"steps", steps},
                                 {"seed", seed}};
            write_manifest("convergence", model_path, params, {out_path});
        }
        return 0;
    }

    return 0;
}
