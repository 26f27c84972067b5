#include "asianjump.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>

#include "json.hpp"

#include "asianjump/approx.hpp"
#include "asianjump/asymptotics.hpp"
#include "asianjump/errors.hpp"
#include "asianjump/mc.hpp"
#include "asianjump/model_io.hpp"
#include "asianjump/models.hpp"

struct aj_model {
    asianjump::ModelSpec spec;
};

namespace {

thread_local std::string g_last_error;

aj_status status_of(asianjump::ErrorCode code) {
    using asianjump::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return AJ_EINVAL;
        case ErrorCode::domain: return AJ_EDOMAIN;
        case ErrorCode::regime: return AJ_EREGIME;
        case ErrorCode::assumption: return AJ_EASSUMPTION;
        case ErrorCode::no_solution: return AJ_ENOSOLUTION;
        case ErrorCode::non_converged: return AJ_ENOCONV;
        case ErrorCode::unsupported: return AJ_EUNSUPPORTED;
        case ErrorCode::io: return AJ_EIO;
        case ErrorCode::internal: return AJ_EINTERNAL;
    }
    return AJ_EINTERNAL;
}

aj_status fail_invalid(const char* msg) {
    g_last_error = msg;
    return AJ_EINVAL;
}

// runs the body, translating exceptions into status codes + thread-local text
template <typename Fn>
aj_status guarded(Fn&& body) {
    try {
        body();
        g_last_error.clear();
        return AJ_OK;
    } catch (const asianjump::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AJ_EINTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return AJ_EINTERNAL;
    }
}

asianjump::PutCall to_putcall(aj_putcall pc) {
    return pc == AJ_PUT ? asianjump::PutCall::put : asianjump::PutCall::call;
}

asianjump::Style to_style(aj_style style) {
    return style == AJ_FLOATING ? asianjump::Style::floating : asianjump::Style::fixed;
}

asianjump::MCConfig to_mc_config(const aj_mc_config* cfg) {
    asianjump::MCConfig out;
    if (cfg) {
        if (cfg->n_paths > 0) out.n_paths = cfg->n_paths;
        if (cfg->n_steps > 0) out.n_steps = cfg->n_steps;
        out.seed = cfg->seed;
        if (cfg->batch_size > 0) out.batch_size = cfg->batch_size;
        out.antithetic = cfg->antithetic != 0;
    }
    return out;
}

int method_code(const std::string& method) {
    if (method == "quadrature") return AJ_METHOD_QUADRATURE;
    if (method == "limit") return AJ_METHOD_LIMIT;
    return AJ_METHOD_CLOSED_FORM;
}

}  // namespace

extern "C" {

const char* aj_version(void) { return "0.1.0"; }

const char* aj_last_error(void) { return g_last_error.c_str(); }

aj_status aj_model_load(const char* path, aj_model** out) {
    if (!path || !out) return fail_invalid("aj_model_load: null argument");
    *out = nullptr;
    return guarded([&] { *out = new aj_model{asianjump::load_model(path)}; });
}

aj_status aj_model_from_json(const char* json_text, aj_model** out) {
    if (!json_text || !out) return fail_invalid("aj_model_from_json: null argument");
    *out = nullptr;
    return guarded([&] { *out = new aj_model{asianjump::model_from_json_text(json_text)}; });
}

aj_status aj_model_save(const aj_model* model, const char* path) {
    if (!model || !path) return fail_invalid("aj_model_save: null argument");
    return guarded([&] { asianjump::save_model(model->spec, path); });
}

void aj_model_free(aj_model* model) { delete model; }

aj_status aj_model_info(const aj_model* model, double* out_s0, double* out_r, double* out_q,
                        double* out_sigma_at_spot) {
    if (!model) return fail_invalid("aj_model_info: null model");
    return guarded([&] {
        if (out_s0) *out_s0 = model->spec.market.s0;
        if (out_r) *out_r = model->spec.market.r;
        if (out_q) *out_q = model->spec.market.q;
        if (out_sigma_at_spot)
            *out_sigma_at_spot = model->spec.diffusion.vol_at(model->spec.market.s0);
    });
}

aj_status aj_check_assumptions(const aj_model* model, char* buffer, size_t buffer_len,
                               size_t* out_needed, int* out_usable) {
    if (!model) return fail_invalid("aj_check_assumptions: null model");
    return guarded([&] {
        const asianjump::AssumptionReport report = asianjump::check_assumptions(model->spec);
        nlohmann::json doc;
        doc["usable"] = report.usable();
        doc["all_passed"] = report.all_passed();
        doc["checks"] = nlohmann::json::array();
        for (const auto& check : report.checks) {
            const char* level = check.level == asianjump::CheckLevel::pass ? "pass"
                                : check.level == asianjump::CheckLevel::warn ? "warn"
                                                                             : "fail";
            doc["checks"].push_back(
                {{"name", check.name}, {"level", level}, {"detail", check.detail}});
        }
        const std::string text = doc.dump(2);
        if (out_needed) *out_needed = text.size() + 1;
        if (out_usable) *out_usable = report.usable() ? 1 : 0;
        if (buffer && buffer_len > 0) {
            const size_t n = std::min(buffer_len - 1, text.size());
            std::memcpy(buffer, text.data(), n);
            buffer[n] = '\0';
        }
    });
}

aj_status aj_otm_coeff(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                       int force_quadrature, int allow_boundary, double* out_value,
                       int* out_method, int* out_degenerate) {
    if (!model || !out_value) return fail_invalid("aj_otm_coeff: null argument");
    return guarded([&] {
        asianjump::AsymConfig cfg;
        cfg.force_quadrature = force_quadrature != 0;
        cfg.allow_boundary = allow_boundary != 0;
        asianjump::AsymCoeff coeff;
        const asianjump::PutCall pc = to_putcall(putcall);
        if (to_style(style) == asianjump::Style::fixed)
            coeff = pc == asianjump::PutCall::call
                        ? asianjump::otm_call_coeff(model->spec, strike, cfg)
                        : asianjump::otm_put_coeff(model->spec, strike, cfg);
        else
            coeff = pc == asianjump::PutCall::call
                        ? asianjump::otm_float_call_coeff(model->spec, strike, cfg)
                        : asianjump::otm_float_put_coeff(model->spec, strike, cfg);
        *out_value = coeff.value;
        if (out_method) *out_method = method_code(coeff.method);
        if (out_degenerate) *out_degenerate = coeff.degenerate ? 1 : 0;
    });
}

aj_status aj_atm_coeff(const aj_model* model, double* out_value, int* out_degenerate) {
    if (!model || !out_value) return fail_invalid("aj_atm_coeff: null argument");
    return guarded([&] {
        const asianjump::AsymCoeff coeff = asianjump::atm_coeff(model->spec);
        *out_value = coeff.value;
        if (out_degenerate) *out_degenerate = coeff.degenerate ? 1 : 0;
    });
}

aj_status aj_european_otm_coeff(const aj_model* model, aj_putcall putcall, double strike,
                                int force_quadrature, double* out_value) {
    if (!model || !out_value) return fail_invalid("aj_european_otm_coeff: null argument");
    return guarded([&] {
        asianjump::AsymConfig cfg;
        cfg.force_quadrature = force_quadrature != 0;
        const asianjump::AsymCoeff coeff =
            to_putcall(putcall) == asianjump::PutCall::call
                ? asianjump::european_otm_call_coeff(model->spec, strike, cfg)
                : asianjump::european_otm_put_coeff(model->spec, strike, cfg);
        *out_value = coeff.value;
    });
}

aj_status aj_approx_price(const aj_model* model, aj_putcall putcall, double strike,
                          double maturity, double* out_total, double* out_diffusive,
                          double* out_jump_term, double* out_sigma_ln, int* out_side_used) {
    if (!model || !out_total) return fail_invalid("aj_approx_price: null argument");
    return guarded([&] {
        asianjump::Instrument inst;
        inst.style = asianjump::Style::fixed;
        inst.putcall = to_putcall(putcall);
        inst.strike = strike;
        inst.maturity = maturity;
        const asianjump::ApproxPrice price = asianjump::approx_price(model->spec, inst);
        *out_total = price.total;
        if (out_diffusive) *out_diffusive = price.diffusive;
        if (out_jump_term) *out_jump_term = price.jump_term;
        if (out_sigma_ln) *out_sigma_ln = price.sigma_ln_used;
        if (out_side_used) {
            switch (price.side_used) {
                case asianjump::SideUsed::call_direct: *out_side_used = AJ_SIDE_CALL_DIRECT; break;
                case asianjump::SideUsed::put_direct: *out_side_used = AJ_SIDE_PUT_DIRECT; break;
                default: *out_side_used = AJ_SIDE_VIA_PARITY; break;
            }
        }
    });
}

aj_status aj_implied_vol(const aj_model* model, aj_putcall putcall, double strike,
                         double maturity, double price, double* out_vol) {
    if (!model || !out_vol) return fail_invalid("aj_implied_vol: null argument");
    return guarded([&] {
        *out_vol = asianjump::implied_vol(price, model->spec.market, to_putcall(putcall), strike,
                                          maturity);
    });
}

aj_status aj_mc_price(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                      double maturity, const aj_mc_config* cfg, double* out_price,
                      double* out_std_error) {
    if (!model || !out_price) return fail_invalid("aj_mc_price: null argument");
    return guarded([&] {
        asianjump::Instrument inst;
        inst.style = to_style(style);
        inst.putcall = to_putcall(putcall);
        inst.strike = strike;
        inst.maturity = maturity;
        const asianjump::MCResult result =
            asianjump::mc_price(model->spec, inst, to_mc_config(cfg));
        *out_price = result.price;
        if (out_std_error) *out_std_error = result.std_err;
    });
}

aj_status aj_convergence(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                         const double* maturities, size_t n_maturities, const aj_mc_config* cfg,
                         double* out_scaled_price, double* out_scaled_std_err,
                         double* out_asym_scaled) {
    if (!model || !maturities || n_maturities == 0 || !out_scaled_price)
        return fail_invalid("aj_convergence: null argument");
    return guarded([&] {
        asianjump::Instrument inst;
        inst.style = to_style(style);
        inst.putcall = to_putcall(putcall);
        inst.strike = strike;
        inst.maturity = maturities[0];
        const std::vector<double> t_list(maturities, maturities + n_maturities);
        const std::vector<asianjump::ConvergencePoint> rows =
            asianjump::convergence_study(model->spec, inst, t_list, to_mc_config(cfg));
        for (size_t i = 0; i < rows.size(); ++i) {
            out_scaled_price[i] = rows[i].scaled_price;
            if (out_scaled_std_err) out_scaled_std_err[i] = rows[i].scaled_std_err;
            if (out_asym_scaled) out_asym_scaled[i] = rows[i].asym_scaled;
        }
    });
}

}  // extern "C"
