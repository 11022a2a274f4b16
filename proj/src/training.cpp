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

#include "aris/training.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

namespace aris::training
{

namespace
{

void require_identifiable(std::size_t N, std::size_t M, const char* who)
{
    if (M == 0)
        throw InvalidArgument(std::string(who) + ": M must be at least 1");
    if (N < M + 1)
        throw InvalidArgument(std::string(who) + ": need N >= M + 1 (N = " + std::to_string(N) +
                              ", M = " + std::to_string(M) + ")");
}

void require_positive_noise(const NoiseProfile& noise, const char* who)
{
    if (!(noise.sigma1_sq > 0.0) || !(noise.sigma2_sq > 0.0))
        throw InvalidArgument(std::string(who) + ": noise powers must be positive");
}

void require_analysis_args(double beta, std::size_t M, std::size_t K, std::size_t N, const NoiseProfile& noise,
                           double p_t, const char* who)
{
    if (!(beta > 0.0))
        throw InvalidArgument(std::string(who) + ": beta must be positive");
    if (M == 0 || K == 0 || N == 0)
        throw InvalidArgument(std::string(who) + ": M, K, N must be positive");
    if (!(p_t > 0.0))
        throw InvalidArgument(std::string(who) + ": P_T must be positive");
    // zero noise is allowed here for limit checks
    if (noise.sigma1_sq < 0.0 || noise.sigma2_sq < 0.0)
        throw InvalidArgument(std::string(who) + ": negative noise power");
}

CVector unit_pilots(std::size_t N)
{
    return CVector::Ones(static_cast<Eigen::Index>(N));
}

} // namespace

std::string_view to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::Proposed:
        return "proposed";
    case Scheme::ConventionalDft:
        return "conventional-dft";
    case Scheme::OnOff:
        return "on-off";
    }
    return "unknown";
}

CMatrix dft_submatrix(std::size_t N, std::size_t M)
{
    require_identifiable(N, M, "dft_submatrix");
    CMatrix F(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 1; c <= M; ++c)
        {
            // reduce r*c mod N first so the phase argument stays small
            const auto idx = static_cast<double>((r * c) % N);
            F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) =
                std::polar(1.0, -2.0 * std::numbers::pi * idx / static_cast<double>(N));
        }
    return F;
}

double optimal_beta(double a_max, double rho_g, std::size_t K, const NoiseProfile& noise)
{
    if (!(a_max > 0.0) || !(rho_g > 0.0) || K == 0)
        throw InvalidArgument("optimal_beta: a_max, rho_g and K must be positive");
    require_positive_noise(noise, "optimal_beta");

    const double cap = a_max * std::sqrt(rho_g);
    const double balance = std::sqrt(std::sqrt(noise.sigma2_sq) / (static_cast<double>(K) * std::sqrt(noise.sigma1_sq)));
    return std::min(cap, balance);
}

TrainingPlan proposed_patterns(const CVector& g1, double beta, std::size_t N, std::optional<double> a_max)
{
    const auto M = static_cast<std::size_t>(g1.size());
    require_identifiable(N, M, "proposed_patterns");
    if (!(beta > 0.0))
        throw InvalidArgument("proposed_patterns: beta must be positive");

    const double g_max = g1.cwiseAbs().maxCoeff();
    if (!(g_max > 0.0) || g1.cwiseAbs().minCoeff() <= 1e-12 * g_max)
        throw InvalidArgument("proposed_patterns: backward channel of antenna 1 is near singular");

    const CMatrix F = dft_submatrix(N, M);

    TrainingPlan plan;
    plan.scheme = Scheme::Proposed;
    plan.beta = beta;
    plan.pilots = unit_pilots(N);
    plan.a_max = a_max.value_or(std::numeric_limits<double>::infinity());
    plan.patterns.resize(F.rows(), F.cols());
    // phi_{n,m} = beta * conj(F(n,m)) / conj(g_m)  =>  conj(phi_{n,m}) g_m = beta F(n,m)
    for (Eigen::Index n = 0; n < F.rows(); ++n)
        for (Eigen::Index m = 0; m < F.cols(); ++m)
            plan.patterns(n, m) = beta * std::conj(F(n, m)) / std::conj(g1(m));

    if (a_max)
        check_amplitudes(plan);
    return plan;
}

TrainingPlan conventional_dft_patterns(std::size_t N, std::size_t M)
{
    TrainingPlan plan;
    plan.scheme = Scheme::ConventionalDft;
    plan.beta = 1.0;
    plan.a_max = 1.0;
    plan.patterns = dft_submatrix(N, M).conjugate();
    plan.pilots = unit_pilots(N);
    return plan;
}

TrainingPlan onoff_patterns(std::size_t N, std::size_t M, double amplitude, double a_max)
{
    require_identifiable(N, M, "onoff_patterns");
    if (!(amplitude > 0.0) || amplitude > a_max)
        throw InvalidArgument("onoff_patterns: amplitude must lie in (0, a_max]");

    TrainingPlan plan;
    plan.scheme = Scheme::OnOff;
    plan.beta = amplitude;
    plan.a_max = a_max;
    plan.pilots = unit_pilots(N);
    plan.patterns = CMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
    for (std::size_t n = 0; n < N; ++n)
    {
        const std::size_t slot = n % (M + 1);
        if (slot > 0)
            plan.patterns(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(slot - 1)) = amplitude;
    }
    return plan;
}

TrainingPlan quantize_phases(const TrainingPlan& plan, unsigned bits)
{
    if (bits == 0 || bits > 30)
        throw InvalidArgument("quantize_phases: bits must be in [1, 30]");

    const double levels = std::ldexp(1.0, static_cast<int>(bits));
    const double step = 2.0 * std::numbers::pi / levels;

    TrainingPlan out = plan;
    for (Eigen::Index n = 0; n < out.patterns.rows(); ++n)
        for (Eigen::Index m = 0; m < out.patterns.cols(); ++m)
        {
            const cd phi = plan.patterns(n, m);
            const double amp = std::abs(phi);
            if (amp == 0.0)
                continue;
            double theta = std::arg(phi);
            if (theta < 0.0)
                theta += 2.0 * std::numbers::pi;
            const double q = theta / step;
            double level = std::floor(q);
            if (q - level > 0.5)
                level += 1.0;
            level = std::fmod(level, levels);
            out.patterns(n, m) = std::polar(amp, level * step);
        }
    return out;
}

double max_amplitude(const TrainingPlan& plan)
{
    if (plan.patterns.size() == 0)
        return 0.0;
    return plan.patterns.cwiseAbs().maxCoeff();
}

void check_amplitudes(const TrainingPlan& plan, double rel_tol)
{
    const double peak = max_amplitude(plan);
    if (peak > plan.a_max * (1.0 + rel_tol))
        throw ConstraintError("reflection amplitude " + std::to_string(peak) + " exceeds a_max = " +
                              std::to_string(plan.a_max));
}

double predict_variance_sum(double beta, std::size_t M, std::size_t K, std::size_t N, const NoiseProfile& noise,
                            double p_t)
{
    require_analysis_args(beta, M, K, N, noise, p_t, "predict_variance_sum");
    const double m = static_cast<double>(M);
    const double k = static_cast<double>(K);
    const double b2 = beta * beta;
    const double s1 = noise.sigma1_sq;
    const double s2 = noise.sigma2_sq;
    return (m * (k * s1 * b2 + s2 / (k * b2)) + m * m * s1 / k + k * s2) / (p_t * static_cast<double>(N));
}

ElementVariances predict_variance_elements(double beta, std::size_t M, std::size_t K, std::size_t N,
                                           const NoiseProfile& noise, double p_t)
{
    require_analysis_args(beta, M, K, N, noise, p_t, "predict_variance_elements");
    const double m = static_cast<double>(M);
    const double b2 = beta * beta;
    const double denom = p_t * static_cast<double>(N);
    return {
        (m * noise.sigma1_sq * b2 + noise.sigma2_sq) / denom,
        (m * noise.sigma1_sq + noise.sigma2_sq / b2) / (denom * static_cast<double>(K)),
    };
}

ElementVariances predict_variance_elements_shared(double beta, std::size_t M, std::size_t K, std::size_t N,
                                                  const NoiseProfile& noise, double p_t)
{
    require_analysis_args(beta, M, K, N, noise, p_t, "predict_variance_elements_shared");
    const double m = static_cast<double>(M);
    const double b2 = beta * beta;
    const double denom = p_t * static_cast<double>(N);
    return {
        (m * noise.sigma1_sq * b2 + noise.sigma2_sq) / denom,
        (m * noise.sigma1_sq + noise.sigma2_sq / (static_cast<double>(K) * b2)) / denom,
    };
}

} // namespace aris::training
