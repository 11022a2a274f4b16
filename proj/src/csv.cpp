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

#include <charconv>
#include <fstream>
#include <sstream>

namespace aris::harness
{

namespace
{

constexpr std::string_view header =
    "scheme,sweep_var,sweep_value_db,mse_sum,mse_direct,mse_forward,pred_sum,pred_direct,pred_forward,trials,seed";

void put(std::ostream& os, double v)
{
    os.precision(17);
    os << std::scientific << v;
}

void put(std::ostream& os, const std::optional<double>& v)
{
    if (v)
        put(os, *v);
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

double to_double(const std::string& s, const std::string& where)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(where + ": bad number '" + s + "'");
    return v;
}

std::optional<double> to_optional(const std::string& s, const std::string& where)
{
    if (s.empty())
        return std::nullopt;
    return to_double(s, where);
}

template <typename T>
T to_integer(const std::string& s, const std::string& where)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(where + ": bad integer '" + s + "'");
    return v;
}

} // namespace

void write_csv(const SweepResult& result, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_csv: cannot open '" + path.string() + "' for writing");

    for (const auto& line : result.metadata)
        out << "# " << line << '\n';
    out << header << '\n';
    for (const auto& row : result.rows)
    {
        out << to_string(row.scheme) << ',' << to_string(result.sweep_var) << ',';
        put(out, row.sweep_value_db);
        out << ',';
        put(out, row.mse_sum);
        out << ',';
        put(out, row.mse_direct);
        out << ',';
        put(out, row.mse_forward);
        out << ',';
        put(out, row.pred_sum);
        out << ',';
        put(out, row.pred_direct);
        out << ',';
        put(out, row.pred_forward);
        out << ',' << row.trials << ',' << row.seed << '\n';
    }
    out.flush();
    if (!out)
        throw std::runtime_error("write_csv: write to '" + path.string() + "' failed");
}

SweepResult read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_csv: cannot open '" + path.string() + "'");

    SweepResult result;
    bool seen_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (line.rfind("# ", 0) == 0)
        {
            result.metadata.push_back(line.substr(2));
            continue;
        }
        if (!seen_header)
        {
            if (line != header)
                throw std::runtime_error(where + ": unexpected CSV header");
            seen_header = true;
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 11)
            throw std::runtime_error(where + ": expected 11 fields, got " + std::to_string(f.size()));

        SweepRow row;
        row.scheme = parse_scheme(f[0]);
        result.sweep_var = parse_sweep_variable(f[1]);
        row.sweep_value_db = to_double(f[2], where);
        row.mse_sum = to_double(f[3], where);
        row.mse_direct = to_double(f[4], where);
        row.mse_forward = to_double(f[5], where);
        row.pred_sum = to_optional(f[6], where);
        row.pred_direct = to_optional(f[7], where);
        row.pred_forward = to_optional(f[8], where);
        row.trials = to_integer<std::size_t>(f[9], where);
        row.seed = to_integer<std::uint64_t>(f[10], where);
        result.rows.push_back(row);
    }
    if (!seen_header)
        throw std::runtime_error("read_csv: '" + path.string() + "' has no header row");
    return result;
}

} // namespace aris::harness
