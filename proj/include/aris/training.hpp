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

#ifndef ARIS_TRAINING_HPP
#define ARIS_TRAINING_HPP

#include "aris/types.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace aris::training
{

enum class Scheme
{
    Proposed,        // DFT rows equalised by the known backward link, scaled by beta
    ConventionalDft, // unit-amplitude DFT rows, cascaded-channel estimation
    OnOff,           // one element reflecting per slot
};

std::string_view to_string(Scheme s);

/// Noise powers in watts: sigma1_sq at the RIS amplifiers, sigma2_sq at the BS.
struct NoiseProfile
{
    double sigma1_sq = 0.0;
    double sigma2_sq = 0.0;
};

/// N reflection patterns plus the pilot sequence they are paired with.
///
/// `patterns` is N x M; row n holds phi_n^T, so the effective reflection seen by
/// BS antenna k in slot n is conj(patterns.row(n)) .* g_k^T.
struct TrainingPlan
{
    CMatrix patterns;
    double beta = 1.0;
    Scheme scheme = Scheme::Proposed;
    CVector pilots; // N unit-modulus symbols
    double a_max = 1.0;

    std::size_t num_slots() const { return static_cast<std::size_t>(patterns.rows()); }
    std::size_t num_elements() const { return static_cast<std::size_t>(patterns.cols()); }
};

/// Columns 1..M (0-based) of the N-point DFT matrix, entry (r, c) = exp(-j 2 pi r c / N).
/// Requires N >= M + 1 so that the all-ones column stays orthogonal to the result.
CMatrix dft_submatrix(std::size_t N, std::size_t M);

/// min{a_max sqrt(rho_g), sqrt(sigma2 / (K sigma1))}; K = 1 is the single-antenna rule.
double optimal_beta(double a_max, double rho_g, std::size_t K, const NoiseProfile& noise);

/// Proposed design: phi_n = beta * G1^{-H} f_n, so that phi_n^H G1 is beta times row n
/// of dft_submatrix(N, M). Pilots are all ones.
///
/// Throws InvalidArgument for a near-singular g1 (some |g1_m| <= 1e-12 max|g1|) and
/// ConstraintError when `a_max` is given and an amplitude exceeds it.
TrainingPlan proposed_patterns(const CVector& g1, double beta, std::size_t N,
                               std::optional<double> a_max = std::nullopt);

/// Benchmark: phi_n^H equals row n of dft_submatrix(N, M); unit amplitudes.
TrainingPlan conventional_dft_patterns(std::size_t N, std::size_t M);

/// Benchmark: slot 0 all off, slot 1 + m turns element m on at `amplitude`;
/// slots past M + 1 repeat the cycle.
TrainingPlan onoff_patterns(std::size_t N, std::size_t M, double amplitude = 1.0, double a_max = 1.0);

/// Snaps every phase to the nearest of 2^bits uniform levels (ties go to the lower
/// level); amplitudes are kept.
TrainingPlan quantize_phases(const TrainingPlan& plan, unsigned bits);

double max_amplitude(const TrainingPlan& plan);

/// Throws ConstraintError if any |phi_{n,m}| exceeds a_max by more than `rel_tol`.
void check_amplitudes(const TrainingPlan& plan, double rel_tol = 1e-9);

struct ElementVariances
{
    double direct = 0.0;  // per direct-link entry
    double forward = 0.0; // per forward-link entry
};

/// Closed-form sum variance of (h_d, b) for the proposed design:
/// (M (K s1 beta^2 + s2 / (K beta^2)) + M^2 s1 / K + K s2) / (P_T N).
double predict_variance_sum(double beta, std::size_t M, std::size_t K, std::size_t N,
                            const NoiseProfile& noise, double p_t);

/// Per-element split of predict_variance_sum:
/// direct = (M s1 beta^2 + s2) / (P_T N), forward = (M s1 + s2 / beta^2) / (P_T K N).
/// Both assume independent equivalent-noise vectors across BS antennas.
ElementVariances predict_variance_elements(double beta, std::size_t M, std::size_t K, std::size_t N,
                                           const NoiseProfile& noise, double p_t);

/// Exact per-element variances when one RIS noise vector per slot is seen by all K
/// antennas over a LoS backward link. The RIS part of every replica's forward error is
/// then identical, so replica averaging only suppresses BS noise:
/// forward = (M s1 + s2 / (K beta^2)) / (P_T N). The direct term is unchanged.
ElementVariances predict_variance_elements_shared(double beta, std::size_t M, std::size_t K, std::size_t N,
                                                  const NoiseProfile& noise, double p_t);

} // namespace aris::training

#endif
