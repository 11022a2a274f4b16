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
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace aris::harness
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key)
{
    text = trim(text);
    if (text == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InvalidArgument("config: '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
    return v;
}

template <typename T>
T parse_unsigned(std::string_view text, std::string_view key)
{
    text = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InvalidArgument("config: '" + std::string(key) + "' expects a non-negative integer, got '" +
                              std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

std::string_view to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::Beta:
        return "beta";
    case SweepVariable::Ptx:
        return "ptx";
    case SweepVariable::Amax:
        return "amax";
    }
    return "unknown";
}

std::string_view to_string(SchemeTag s)
{
    switch (s)
    {
    case SchemeTag::Proposed:
        return "proposed";
    case SchemeTag::ProposedMmse:
        return "proposed-mmse";
    case SchemeTag::ConventionalDft:
        return "conventional-dft";
    case SchemeTag::OnOff:
        return "on-off";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view text)
{
    text = trim(text);
    for (auto v : {SweepVariable::Beta, SweepVariable::Ptx, SweepVariable::Amax})
        if (text == to_string(v))
            return v;
    throw InvalidArgument("unknown sweep variable '" + std::string(text) + "' (beta, ptx, amax)");
}

SchemeTag parse_scheme(std::string_view text)
{
    text = trim(text);
    for (auto s : {SchemeTag::Proposed, SchemeTag::ProposedMmse, SchemeTag::ConventionalDft, SchemeTag::OnOff})
        if (text == to_string(s))
            return s;
    throw InvalidArgument("unknown scheme '" + std::string(text) +
                          "' (proposed, proposed-mmse, conventional-dft, on-off)");
}

training::NoiseProfile ExperimentConfig::noise() const
{
    return {dbm_to_watts(sigma1_dbm), dbm_to_watts(sigma2_dbm)};
}

double ExperimentConfig::rho_g() const
{
    return channel::large_scale(d_meters);
}

double ExperimentConfig::a_max() const
{
    return std::sqrt(db_to_linear(a_max_db));
}

ExperimentConfig default_config(SweepVariable var)
{
    ExperimentConfig cfg;
    cfg.sweep_var = var;
    switch (var)
    {
    case SweepVariable::Beta:
        cfg.grid = parse_grid("-30:1:0");
        cfg.a_max_db = 100.0;
        cfg.schemes = {SchemeTag::Proposed, SchemeTag::ConventionalDft};
        break;
    case SweepVariable::Ptx:
        cfg.grid = parse_grid("10:2:36");
        cfg.a_max_db = 20.0;
        cfg.schemes = {SchemeTag::Proposed, SchemeTag::ProposedMmse, SchemeTag::ConventionalDft, SchemeTag::OnOff};
        break;
    case SweepVariable::Amax:
        cfg.grid = parse_grid("20:2:60");
        cfg.schemes = {SchemeTag::Proposed};
        break;
    }
    return cfg;
}

std::vector<double> parse_grid(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        return {};
    if (text.find(':') != std::string_view::npos)
    {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw InvalidArgument("grid range must be start:step:stop");
        const double start = parse_double(parts[0], "grid");
        const double step = parse_double(parts[1], "grid");
        const double stop = parse_double(parts[2], "grid");
        if (!(step > 0.0) || stop < start)
            throw InvalidArgument("grid range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = start + static_cast<double>(i) * step;
        return grid;
    }
    std::vector<double> grid;
    for (auto part : split(text, ','))
        grid.push_back(parse_double(part, "grid"));
    return grid;
}

void validate_config(const ExperimentConfig& cfg)
{
    if (cfg.M == 0 || cfg.K == 0)
        throw InvalidArgument("config: M and K must be positive");
    if (cfg.N < cfg.M + 1)
        throw InvalidArgument("config: N must be at least M + 1");
    if (cfg.trials == 0)
        throw InvalidArgument("config: trials must be at least 1");
    if (cfg.threads == 0)
        throw InvalidArgument("config: threads must be at least 1");
    if (!(cfg.d_meters > 0.0))
        throw InvalidArgument("config: d_meters must be positive");
    if (cfg.schemes.empty())
        throw InvalidArgument("config: no schemes selected");
    if (cfg.grid.empty())
        throw InvalidArgument("config: empty sweep grid");
    if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end()))
        throw InvalidArgument("config: sweep grid must be sorted ascending");
    if (cfg.a_max_db < 0.0)
        throw InvalidArgument("config: a_max^2 must be at least 0 dB (a_max >= 1)");
    if (cfg.sweep_var == SweepVariable::Amax && cfg.grid.front() < 0.0)
        throw InvalidArgument("config: a_max^2 grid must be at least 0 dB");
    if (!(cfg.onoff_amplitude > 0.0))
        throw InvalidArgument("config: onoff_amplitude must be positive");
    if (cfg.phase_bits && (*cfg.phase_bits == 0 || *cfg.phase_bits > 30))
        throw InvalidArgument("config: phase_bits must be in [1, 30]");
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    if (key == "M")
        cfg.M = parse_unsigned<std::size_t>(value, key);
    else if (key == "K")
        cfg.K = parse_unsigned<std::size_t>(value, key);
    else if (key == "N")
        cfg.N = parse_unsigned<std::size_t>(value, key);
    else if (key == "d_meters")
        cfg.d_meters = parse_double(value, key);
    else if (key == "sigma1_dbm")
        cfg.sigma1_dbm = parse_double(value, key);
    else if (key == "sigma2_dbm")
        cfg.sigma2_dbm = parse_double(value, key);
    else if (key == "trials")
        cfg.trials = parse_unsigned<std::size_t>(value, key);
    else if (key == "seed")
        cfg.seed = parse_unsigned<std::uint64_t>(value, key);
    else if (key == "threads")
        cfg.threads = parse_unsigned<unsigned>(value, key);
    else if (key == "schemes")
    {
        cfg.schemes.clear();
        for (auto part : split(value, ','))
            cfg.schemes.push_back(parse_scheme(part));
    }
    else if (key == "sweep")
        cfg.sweep_var = parse_sweep_variable(value);
    else if (key == "grid")
        cfg.grid = parse_grid(value);
    else if (key == "phase_bits")
    {
        if (value == "none" || value.empty())
            cfg.phase_bits.reset();
        else
            cfg.phase_bits = parse_unsigned<unsigned>(value, key);
    }
    else if (key == "a_max_db")
        cfg.a_max_db = parse_double(value, key);
    else if (key == "ptx_dbm")
        cfg.ptx_dbm = parse_double(value, key);
    else if (key == "onoff_amplitude")
        cfg.onoff_amplitude = parse_double(value, key);
    else if (key == "ris_noise")
    {
        if (value == "shared")
            cfg.ris_noise = estimator::RisNoise::Shared;
        else if (value == "per-antenna")
            cfg.ris_noise = estimator::RisNoise::PerAntenna;
        else
            throw InvalidArgument("config: ris_noise must be 'shared' or 'per-antenna'");
    }
    else
        throw InvalidArgument("config: unknown key '" + std::string(key) + "'");
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("config: cannot open '" + path.string() + "'");

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try
        {
            apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
        }
        catch (const InvalidArgument& e)
        {
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

} // namespace aris::harness
