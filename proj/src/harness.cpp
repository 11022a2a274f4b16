// SPDX-License-Identifier: Apache-2.0
//
// arisim - channel estimation and training design for active RIS links
// Copyright (C) 2026 The arisim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "aris/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace aris::harness
{

namespace
{

struct Moments
{
    double mean = 0.0;
    double std_error = 0.0;
};

// Two-pass mean / standard error over trials, in trial order.
template <typename F>
Moments moments(const std::vector<TrialResult>& results, F value)
{
    const auto n = static_cast<double>(results.size());
    double sum = 0.0;
    for (const auto& r : results)
        sum += value(r);
    const double mean = sum / n;
    if (results.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (const auto& r : results)
    {
        const double d = value(r) - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::string describe_point(SchemeTag scheme, SweepVariable var, double x)
{
    std::ostringstream os;
    os << "scheme " << to_string(scheme) << ", " << to_string(var) << " = " << x << " dB";
    return os.str();
}

std::vector<TrialResult> run_point(const ExperimentConfig& cfg, double x, SchemeTag scheme)
{
    std::vector<TrialResult> results(cfg.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));

    auto work = [&](unsigned id, std::exception_ptr& error) {
        try
        {
            for (std::size_t t = id; t < cfg.trials; t += workers)
            {
                Rng rng = trial_rng(cfg.seed, t);
                results[t] = run_trial(cfg, x, scheme, rng);
            }
        }
        catch (...)
        {
            error = std::current_exception();
        }
    };

    std::vector<std::exception_ptr> errors(workers);
    if (workers == 1)
        work(0, errors[0]);
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned id = 0; id < workers; ++id)
            pool.emplace_back(work, id, std::ref(errors[id]));
    }

    for (const auto& e : errors)
        if (e)
        {
            try
            {
                std::rethrow_exception(e);
            }
            catch (const std::exception& ex)
            {
                throw std::runtime_error("sweep aborted at " + describe_point(scheme, cfg.sweep_var, x) + ": " +
                                         ex.what());
            }
        }
    return results;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << std::scientific << v;
    return os.str();
}

std::vector<std::string> describe_config(const ExperimentConfig& cfg)
{
    std::vector<std::string> meta;
    std::ostringstream os;
    os << "arisim sweep: variable=" << to_string(cfg.sweep_var);
    meta.push_back(os.str());
    meta.push_back("sweep_value_db: beta -> 20*log10(beta) with beta linear = 10^(x/20); ptx -> P_T in dBm; "
                   "amax -> a_max^2 in dB");
    os.str("");
    os << "M=" << cfg.M << " K=" << cfg.K << " N=" << cfg.N << (cfg.N == cfg.M + 1 ? " (N = M+1)" : "")
       << " d_meters=" << cfg.d_meters << " sigma1_dbm=" << cfg.sigma1_dbm << " sigma2_dbm=" << cfg.sigma2_dbm
       << " a_max_db=" << cfg.a_max_db << " ptx_dbm=" << cfg.ptx_dbm << " phase_bits="
       << (cfg.phase_bits ? std::to_string(*cfg.phase_bits) : std::string("continuous"))
       << " ris_noise=" << (cfg.ris_noise == estimator::RisNoise::Shared ? "shared" : "per-antenna");
    meta.push_back(os.str());
    meta.push_back("channels redrawn every trial; mse_sum = E||h_d-h_d_hat||^2 + E||b-b_hat||^2; "
                   "mse_direct, mse_forward are per element; pred_* assume independent noise across antennas");
    return meta;
}

} // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Rng(seq);
}

OperatingPoint resolve_point(const ExperimentConfig& cfg, double point_db)
{
    OperatingPoint op;
    op.p_t = dbm_to_watts(cfg.ptx_dbm);
    op.a_max = cfg.a_max();
    switch (cfg.sweep_var)
    {
    case SweepVariable::Beta:
        op.beta = std::pow(10.0, point_db / 20.0);
        return op;
    case SweepVariable::Ptx:
        op.p_t = dbm_to_watts(point_db);
        break;
    case SweepVariable::Amax:
        op.a_max = std::sqrt(db_to_linear(point_db));
        break;
    }
    op.beta = training::optimal_beta(op.a_max, cfg.rho_g(), cfg.K, cfg.noise());
    return op;
}

TrialResult run_trial(const ExperimentConfig& cfg, double point_db, SchemeTag scheme, Rng& rng)
{
    const OperatingPoint op = resolve_point(cfg, point_db);
    const double rho_g = cfg.rho_g();
    const auto truth =
        channel::draw_realization(channel::square_geometry(cfg.M), channel::square_geometry(cfg.K), rho_g, rng);

    TrialResult result;
    training::TrainingPlan plan;
    estimator::Method method = estimator::Method::Ls;
    switch (scheme)
    {
    case SchemeTag::Proposed:
    case SchemeTag::ProposedMmse: {
        double beta = op.beta;
        const double cap = op.a_max * std::sqrt(rho_g);
        if (beta > cap * (1.0 + 1e-12))
        {
            beta = cap;
            result.clamped = true;
        }
        result.beta_used = beta;
        plan = training::proposed_patterns(truth.g.col(0), beta, cfg.N, op.a_max);
        method = scheme == SchemeTag::Proposed ? estimator::Method::FastLs : estimator::Method::Mmse;
        break;
    }
    case SchemeTag::ConventionalDft:
        plan = training::conventional_dft_patterns(cfg.N, cfg.M);
        result.beta_used = plan.beta;
        break;
    case SchemeTag::OnOff:
        plan = training::onoff_patterns(cfg.N, cfg.M, cfg.onoff_amplitude, std::max(op.a_max, cfg.onoff_amplitude));
        result.beta_used = plan.beta;
        break;
    }
    if (cfg.phase_bits)
        plan = training::quantize_phases(plan, *cfg.phase_bits);

    const auto obs = estimator::synthesize_rx(truth, plan, cfg.noise(), op.p_t, rng, cfg.ris_noise);
    auto report = estimator::estimate_channels(obs, method);
    estimator::score(report, truth);
    result.sq_err_direct = *report.sq_err_direct;
    result.sq_err_forward = *report.sq_err_forward;
    return result;
}

SweepResult sweep(const ExperimentConfig& cfg)
{
    validate_config(cfg);

    SweepResult out;
    out.sweep_var = cfg.sweep_var;
    out.metadata = describe_config(cfg);

    const auto M = static_cast<double>(cfg.M);
    const auto K = static_cast<double>(cfg.K);
    std::ostringstream betas;
    betas << "beta_used (proposed):";

    for (const SchemeTag scheme : cfg.schemes)
        for (const double x : cfg.grid)
        {
            const auto results = run_point(cfg, x, scheme);

            SweepRow row;
            row.scheme = scheme;
            row.sweep_value_db = x;
            row.trials = cfg.trials;
            row.seed = cfg.seed;
            row.beta = results.front().beta_used;
            for (const auto& r : results)
                out.clamped_events += r.clamped ? 1 : 0;

            const auto sum = moments(results, [](const TrialResult& r) { return r.sq_err_direct + r.sq_err_forward; });
            const auto direct = moments(results, [K](const TrialResult& r) { return r.sq_err_direct / K; });
            const auto forward = moments(results, [M](const TrialResult& r) { return r.sq_err_forward / M; });
            row.mse_sum = sum.mean;
            row.se_sum = sum.std_error;
            row.mse_direct = direct.mean;
            row.se_direct = direct.std_error;
            row.mse_forward = forward.mean;
            row.se_forward = forward.std_error;

            if (scheme == SchemeTag::Proposed)
            {
                const double p_t = resolve_point(cfg, x).p_t;
                row.pred_sum = training::predict_variance_sum(row.beta, cfg.M, cfg.K, cfg.N, cfg.noise(), p_t);
                const auto el = training::predict_variance_elements(row.beta, cfg.M, cfg.K, cfg.N, cfg.noise(), p_t);
                row.pred_direct = el.direct;
                row.pred_forward = el.forward;
                betas << ' ' << format_double(row.beta);
            }
            out.rows.push_back(row);
        }

    if (std::find(cfg.schemes.begin(), cfg.schemes.end(), SchemeTag::Proposed) != cfg.schemes.end())
        out.metadata.push_back(betas.str());
    return out;
}

} // namespace aris::harness
