#include "asianjump/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <variant>

#include "asianjump/asymptotics.hpp"
#include "asianjump/detail/rng.hpp"
#include "asianjump/errors.hpp"

namespace asianjump {

namespace {

using detail::NormalSampler;
using detail::SplitMix64;

int thread_budget() {
    if (const char* env = std::getenv("ASIANJUMP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// One path's pre-drawn randomness. Values (not generator state) are recorded
// so an antithetic partner can replay them with the Gaussians negated.
struct PathDraws {
    std::vector<double> normals;      // diffusion normal per step
    std::vector<double> vg_normals;   // VG brownian normal per step (VG only)
    std::vector<double> gamma_inc;    // VG clock increment per step (VG only)
    std::vector<int> jump_step;       // containing grid step per jump (CP only)
    std::vector<double> jump_size;    // log jump size per jump (CP only)
};

struct Stepper {
    const ModelSpec* model;
    double dt, sqrt_dt, comp, drift_dt;
    bool is_vg = false;
    double theta = 0.0, sigma_vg = 0.0, lambda = 0.0;
    const MertonJumps* merton = nullptr;
    const DoubleExpJumps* kou = nullptr;

    Stepper(const ModelSpec& m, double maturity, int n_steps) : model(&m) {
        dt = maturity / n_steps;
        sqrt_dt = std::sqrt(dt);
        comp = compensator(m.jumps);
        drift_dt = (m.market.r - m.market.q - comp) * dt;
        if (const auto* mj = std::get_if<MertonJumps>(&m.jumps)) {
            merton = mj;
            lambda = mj->lambda;
        } else if (const auto* dj = std::get_if<DoubleExpJumps>(&m.jumps)) {
            kou = dj;
            lambda = dj->lambda;
        } else if (const auto* vj = std::get_if<VGJumps>(&m.jumps)) {
            is_vg = true;
            theta = vj->theta;
            sigma_vg = vj->sigma_vg;
        } else {
            fail(ErrorCode::unsupported,
                 "generic jump densities have no sampler; use merton, double_exp, or vg for "
                 "simulation");
        }
    }

    void draw(SplitMix64& gen, NormalSampler& normal, int n_steps, double maturity,
              PathDraws& d) const {
        d.normals.resize(n_steps);
        for (int i = 0; i < n_steps; ++i) d.normals[i] = normal.next();
        if (is_vg) {
            const auto& vg = std::get<VGJumps>(model->jumps);
            d.vg_normals.resize(n_steps);
            for (int i = 0; i < n_steps; ++i) d.vg_normals[i] = normal.next();
            d.gamma_inc.resize(n_steps);
            for (int i = 0; i < n_steps; ++i)
                d.gamma_inc[i] = detail::gamma_draw(gen, normal, dt / vg.nu, vg.nu);
            d.jump_step.clear();
            d.jump_size.clear();
            return;
        }
        const int count = detail::poisson_draw(gen, lambda * maturity);
        d.jump_step.resize(count);
        d.jump_size.resize(count);
        for (int j = 0; j < count; ++j) {
            const double u = gen.next_uniform();
            int step = static_cast<int>(u * n_steps);
            if (step >= n_steps) step = n_steps - 1;
            d.jump_step[j] = step;
        }
        for (int j = 0; j < count; ++j) {
            if (merton) {
                d.jump_size[j] = merton->jump_mean + merton->jump_sd * normal.next();
            } else {
                const double u1 = gen.next_uniform();
                const double u2 = gen.next_uniform();
                d.jump_size[j] =
                    u1 < kou->p_up ? -std::log(u2) / kou->eta1 : std::log(u2) / kou->eta2;
            }
        }
    }

    // flip = -1 replays the partner path with every Gaussian negated; the
    // jump and clock draws are shared by the pair.
    PathStats run(const PathDraws& d, std::vector<double>& jump_log, double flip) const {
        const int n_steps = static_cast<int>(d.normals.size());
        std::fill(jump_log.begin(), jump_log.end(), 0.0);
        for (std::size_t j = 0; j < d.jump_step.size(); ++j)
            jump_log[d.jump_step[j]] += d.jump_size[j];

        double log_s = std::log(model->market.s0);
        double s = model->market.s0;
        double avg = 0.5 * s;
        for (int i = 0; i < n_steps; ++i) {
            const double sigma = model->diffusion.vol_at(s);
            double inc = drift_dt - 0.5 * sigma * sigma * dt +
                         sigma * sqrt_dt * flip * d.normals[i] + jump_log[i];
            if (is_vg) {
                const double dg = d.gamma_inc[i];
                inc += theta * dg + sigma_vg * std::sqrt(dg) * flip * d.vg_normals[i];
            }
            log_s += inc;
            s = std::exp(log_s);
            avg += (i + 1 == n_steps ? 0.5 : 1.0) * s;
        }
        PathStats out;
        out.average = avg / n_steps;
        out.terminal = s;
        out.jump_count = static_cast<int>(d.jump_step.size());
        return out;
    }
};

}  // namespace

void MCConfig::validate() const {
    if (n_paths < 1000) fail(ErrorCode::invalid_argument, "mc needs n_paths >= 1000");
    if (n_steps < 2) fail(ErrorCode::invalid_argument, "mc needs n_steps >= 2");
    if (batch_size < 2) fail(ErrorCode::invalid_argument, "mc needs batch_size >= 2");
    if (antithetic && (n_paths % 2 != 0 || batch_size % 2 != 0))
        fail(ErrorCode::invalid_argument,
             "antithetic pairing needs even n_paths and even batch_size");
}

void simulate_paths(const ModelSpec& model, double maturity, const MCConfig& cfg,
                    const std::function<void(long, const PathStats&)>& sink) {
    model.validate();
    cfg.validate();
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        fail(ErrorCode::invalid_argument, "simulation maturity must be > 0");

    const Stepper stepper(model, maturity, cfg.n_steps);
    const long n_batches = (cfg.n_paths + cfg.batch_size - 1) / cfg.batch_size;
    std::vector<std::vector<PathStats>> results(n_batches);

    const auto run_batch = [&](long b) {
        const long begin = b * cfg.batch_size;
        const long end = std::min(begin + cfg.batch_size, cfg.n_paths);
        SplitMix64 gen(detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(b)));
        NormalSampler normal(gen);
        PathDraws draws;
        std::vector<double> jump_log(cfg.n_steps, 0.0);
        auto& out = results[b];
        out.reserve(end - begin);
        for (long p = begin; p < end; ++p) {
            if (cfg.antithetic && (p - begin) % 2 == 1) {
                out.push_back(stepper.run(draws, jump_log, -1.0));
                continue;
            }
            stepper.draw(gen, normal, cfg.n_steps, maturity, draws);
            out.push_back(stepper.run(draws, jump_log, 1.0));
        }
    };

    const int workers = static_cast<int>(std::min<long>(thread_budget(), n_batches));
    if (workers <= 1) {
        for (long b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::atomic<long> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const long b = next.fetch_add(1);
                    if (b >= n_batches) return;
                    try {
                        run_batch(b);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // hand the paths over in path order, so downstream accumulation is
    // identical no matter how many workers ran
    long index = 0;
    for (const auto& batch : results)
        for (const auto& stats : batch) sink(index++, stats);
}

MCResult mc_price(const ModelSpec& model, const Instrument& inst, const MCConfig& cfg) {
    inst.validate();
    const double strike = inst.strike;
    const auto payoff = [&](const PathStats& p) {
        double raw;
        if (inst.style == Style::fixed)
            raw = inst.putcall == PutCall::call ? p.average - strike : strike - p.average;
        else
            raw = inst.putcall == PutCall::call ? strike * p.terminal - p.average
                                                : p.average - strike * p.terminal;
        return std::max(raw, 0.0);
    };

    const double discount = std::exp(-model.market.r * inst.maturity);
    long double sum = 0.0L, sum_sq = 0.0L, terminal_sum = 0.0L;
    long n_samples = 0;
    double pending = 0.0;
    simulate_paths(model, inst.maturity, cfg, [&](long index, const PathStats& p) {
        terminal_sum += p.terminal;
        const double v = discount * payoff(p);
        if (!cfg.antithetic) {
            sum += v;
            sum_sq += static_cast<long double>(v) * v;
            ++n_samples;
            return;
        }
        if (index % 2 == 0) {
            pending = v;
            return;
        }
        const double pair_mean = 0.5 * (pending + v);
        sum += pair_mean;
        sum_sq += static_cast<long double>(pair_mean) * pair_mean;
        ++n_samples;
    });

    MCResult out;
    out.n_paths = cfg.n_paths;
    out.n_steps = cfg.n_steps;
    out.seed = cfg.seed;
    out.price = static_cast<double>(sum / n_samples);
    const long double var =
        n_samples > 1 ? (sum_sq - sum * sum / n_samples) / (n_samples - 1) : 0.0L;
    out.std_err = std::sqrt(std::max(static_cast<double>(var), 0.0) / n_samples);
    out.terminal_mean = static_cast<double>(terminal_sum / cfg.n_paths);
    return out;
}

std::vector<ConvergencePoint> convergence_study(const ModelSpec& model, const Instrument& inst,
                                                const std::vector<double>& maturities,
                                                const MCConfig& cfg) {
    model.validate();
    if (maturities.empty())
        fail(ErrorCode::invalid_argument, "convergence study needs at least one maturity");

    const Moneyness side = inst.style == Style::fixed
                               ? classify_fixed(inst.putcall, model.market.s0, inst.strike)
                               : classify_floating(inst.putcall, inst.strike);
    if (side == Moneyness::itm)
        fail(ErrorCode::regime,
             "in-the-money instruments have no leading-order coefficient to converge to");

    double otm_value = 0.0;
    double atm_value = 0.0;
    if (side == Moneyness::atm) {
        atm_value = atm_coeff(model).value;
    } else if (inst.style == Style::fixed) {
        otm_value = inst.putcall == PutCall::call ? otm_call_coeff(model, inst.strike).value
                                                  : otm_put_coeff(model, inst.strike).value;
    } else {
        otm_value = inst.putcall == PutCall::call
                        ? otm_float_call_coeff(model, inst.strike).value
                        : otm_float_put_coeff(model, inst.strike).value;
    }

    std::vector<ConvergencePoint> table;
    table.reserve(maturities.size());
    Instrument point = inst;
    for (double maturity : maturities) {
        point.maturity = maturity;
        const MCResult mc = mc_price(model, point, cfg);
        ConvergencePoint row;
        row.maturity = maturity;
        row.scaled_price = mc.price / maturity;
        row.scaled_std_err = mc.std_err / maturity;
        row.asym_scaled =
            side == Moneyness::atm ? atm_value / std::sqrt(maturity) : otm_value;
        table.push_back(row);
    }
    return table;
}

}  // namespace asianjump
