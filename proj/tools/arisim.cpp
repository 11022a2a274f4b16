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

// arisim: Monte Carlo sweeps of active-RIS channel estimation error.
//
//   arisim sweep-beta  [--out fig2.csv]   MSE vs scaling factor beta
//   arisim sweep-power [--out fig3a.csv]  MSE vs transmit power
//   arisim sweep-amax  [--out fig4.csv]   MSE vs a_max^2
//   arisim validate                       invariant suite, exit 1 on failure
//
// Exit codes: 0 success, 1 validation or run failure, 2 usage or configuration error.

#include "aris/harness.hpp"
#include "aris/validation.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_usage = 2;

struct CommonFlags
{
    std::string config;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> phase_bits;
    std::optional<unsigned> threads;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_out)
{
    cmd->add_option("--config", flags.config, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per grid point");
    cmd->add_option("--seed", flags.seed, "64-bit base seed");
    cmd->add_option("--phase-bits", flags.phase_bits, "quantise reflection phases to this many bits");
    cmd->add_option("--threads", flags.threads, "worker threads (results do not depend on this)");
    if (!default_out.empty())
    {
        flags.out = default_out;
        cmd->add_option("--out", flags.out, "output CSV path")->capture_default_str();
    }
}

aris::harness::ExperimentConfig resolve(aris::harness::SweepVariable var, const CommonFlags& flags)
{
    auto cfg = aris::harness::default_config(var);
    if (!flags.config.empty())
        cfg = aris::harness::load_config(flags.config, cfg);
    cfg.sweep_var = var;
    if (flags.trials)
        cfg.trials = *flags.trials;
    if (flags.seed)
        cfg.seed = *flags.seed;
    if (flags.phase_bits)
        cfg.phase_bits = *flags.phase_bits;
    if (flags.threads)
        cfg.threads = *flags.threads;
    aris::harness::validate_config(cfg);
    return cfg;
}

int run_sweep(aris::harness::SweepVariable var, const CommonFlags& flags)
{
    const auto cfg = resolve(var, flags);
    const auto result = aris::harness::sweep(cfg);
    aris::harness::write_csv(result, flags.out);
    std::cerr << "wrote " << result.rows.size() << " rows to " << flags.out << '\n';
    if (result.clamped_events > 0)
        std::cerr << "warning: beta exceeded a_max*sqrt(rho_g) and was clamped in " << result.clamped_events
                  << " trials\n";
    return exit_ok;
}

int run_validate(const CommonFlags& flags)
{
    const auto cfg = resolve(aris::harness::SweepVariable::Beta, flags);
    const auto checks = aris::validation::run_invariant_checks(cfg);
    bool all = true;
    for (const auto& c : checks)
    {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty())
            std::cout << "  [" << c.detail << "]";
        std::cout << '\n';
        all = all && c.passed;
    }
    std::cout << (all ? "all invariant checks passed\n" : "invariant checks FAILED\n");
    return all ? exit_ok : exit_validation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Active-RIS channel estimation Monte Carlo sweeps", "arisim"};
    app.require_subcommand(1);

    CommonFlags beta_flags, power_flags, amax_flags, validate_flags;
    add_common(app.add_subcommand("sweep-beta", "MSE versus scaling factor beta"), beta_flags, "fig2.csv");
    add_common(app.add_subcommand("sweep-power", "MSE versus transmit power"), power_flags, "fig3a.csv");
    add_common(app.add_subcommand("sweep-amax", "MSE versus a_max^2"), amax_flags, "fig4.csv");
    auto* validate = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate, validate_flags, "");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        std::cerr << app.help();
        return exit_usage;
    }

    try
    {
        using aris::harness::SweepVariable;
        if (app.got_subcommand("sweep-beta"))
            return run_sweep(SweepVariable::Beta, beta_flags);
        if (app.got_subcommand("sweep-power"))
            return run_sweep(SweepVariable::Ptx, power_flags);
        if (app.got_subcommand("sweep-amax"))
            return run_sweep(SweepVariable::Amax, amax_flags);
        return run_validate(validate_flags);
    }
    catch (const aris::InvalidArgument& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
}
