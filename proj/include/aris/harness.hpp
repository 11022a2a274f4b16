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

#ifndef ARIS_HARNESS_HPP
#define ARIS_HARNESS_HPP

#include "aris/estimator.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aris::harness
{

enum class SweepVariable
{
    Beta, // grid is 20 log10(beta)
    Ptx,  // grid is P_T in dBm
    Amax, // grid is a_max^2 in dB
};

enum class SchemeTag
{
    Proposed,        // proposed patterns, reduced LS estimator
    ProposedMmse,    // proposed patterns, LMMSE estimator
    ConventionalDft, // benchmark
    OnOff,           // benchmark
};

std::string_view to_string(SweepVariable v);
std::string_view to_string(SchemeTag s);
SweepVariable parse_sweep_variable(std::string_view text);
SchemeTag parse_scheme(std::string_view text);

struct ExperimentConfig
{
    std::size_t M = 16;
    std::size_t K = 16;
    std::size_t N = 17;
    double d_meters = 50.0;
    double sigma1_dbm = -70.0;
    double sigma2_dbm = -80.0;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::vector<SchemeTag> schemes{SchemeTag::Proposed};
    SweepVariable sweep_var = SweepVariable::Beta;
    std::vector<double> grid;
    std::optional<unsigned> phase_bits;
    double a_max_db = 20.0; // a_max^2 in dB
    double ptx_dbm = 20.0;
    double onoff_amplitude = 1.0;
    estimator::RisNoise ris_noise = estimator::RisNoise::PerAntenna;
    unsigned threads = 1;

    training::NoiseProfile noise() const;
    double rho_g() const;
    double a_max() const;
};

/// Defaults for each sweep: M = K = 16, N = 17, d = 50 m, -70/-80 dBm noise, 1e4 trials.
///   beta: grid -30..0 dB step 1, a_max unconstrained (a_max^2 = 100 dB), proposed + conventional DFT
///   ptx:  grid 10..36 dBm step 2, a_max^2 = 20 dB, all four schemes
///   amax: grid 20..60 dB step 2, proposed only
ExperimentConfig default_config(SweepVariable var);

/// Throws InvalidArgument describing the first violated constraint.
void validate_config(const ExperimentConfig& cfg);

/// Applies one `key = value` setting. Unknown keys throw InvalidArgument.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file (`#` starts a comment) on top of `base`.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

/// "a,b,c" or "start:step:stop" (inclusive).
std::vector<double> parse_grid(std::string_view text);

/// Per-trial engine. Depends only on (seed, trial), so every grid point and scheme sees
/// the same channel/noise stream for a given trial index.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// beta, P_T and a_max in effect at one grid point, before any clamping.
struct OperatingPoint
{
    double beta = 0.0;
    double p_t = 0.0;
    double a_max = 0.0;
};

OperatingPoint resolve_point(const ExperimentConfig& cfg, double point_db);

struct TrialResult
{
    double sq_err_direct = 0.0;
    double sq_err_forward = 0.0;
    double beta_used = 0.0;
    bool clamped = false; // requested beta exceeded a_max sqrt(rho_g)
};

/// Draws one channel, builds the scheme's plan at the grid point, synthesises the
/// pilots and returns ||h_d - h_d_hat||^2 and ||b - b_hat||^2.
TrialResult run_trial(const ExperimentConfig& cfg, double point_db, SchemeTag scheme, Rng& rng);

struct SweepRow
{
    SchemeTag scheme = SchemeTag::Proposed;
    double sweep_value_db = 0.0;
    double mse_sum = 0.0;
    double mse_direct = 0.0;  // per element
    double mse_forward = 0.0; // per element
    double se_sum = 0.0;      // standard errors of the three means
    double se_direct = 0.0;
    double se_forward = 0.0;
    std::optional<double> pred_sum;
    std::optional<double> pred_direct;
    std::optional<double> pred_forward;
    double beta = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

struct SweepResult
{
    SweepVariable sweep_var = SweepVariable::Beta;
    std::vector<SweepRow> rows;
    std::size_t clamped_events = 0;
    std::vector<std::string> metadata; // written as `#` comment lines
};

/// Averages cfg.trials trials for every (scheme, grid point). Results do not depend on
/// cfg.threads.
SweepResult sweep(const ExperimentConfig& cfg);

/// Columns: scheme,sweep_var,sweep_value_db,mse_sum,mse_direct,mse_forward,
///          pred_sum,pred_direct,pred_forward,trials,seed
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Parses a file written by write_csv. Standard errors and beta are not stored and
/// come back as zero.
SweepResult read_csv(const std::filesystem::path& path);

} // namespace aris::harness

#endif
