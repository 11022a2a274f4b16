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

#ifndef ARIS_ESTIMATOR_HPP
#define ARIS_ESTIMATOR_HPP

#include "aris/channel.hpp"
#include "aris/training.hpp"

#include <optional>
#include <vector>

namespace aris::estimator
{

using training::NoiseProfile;
using training::TrainingPlan;

/// How the RIS amplifier noise u(n) reaches the BS antennas.
enum class RisNoise
{
    Shared,     // one u(n) per slot, common to all K antennas (single physical surface)
    PerAntenna, // u(n) redrawn for every antenna; cross-antenna noise is independent
};

/// Received pilots plus everything the receiver is allowed to know.
struct ObservationSet
{
    CMatrix Y; // N x K
    TrainingPlan plan;
    CMatrix backward; // M x K
    NoiseProfile noise;
    double p_t = 0.0;
};

/// y_k(n) = sqrt(P_T) (h_dk + phi_n^H G_k b) s(n) + phi_n^H G_k u(n) + z_k(n).
ObservationSet synthesize_rx(const channel::ChannelRealization& truth, const TrainingPlan& plan,
                             const NoiseProfile& noise, double p_t, Rng& rng, RisNoise mode = RisNoise::Shared);

/// Stacked per-antenna linear model y_k = sqrt(P_T) S Phi_k h_k + zbar_k.
///
/// Psi_k is block diagonal with 1 x M blocks phi_n^H G_k; only the blocks are stored,
/// one per row of `psi`. The equivalent noise covariance is diagonal.
struct StackedModel
{
    CMatrix phi;     // N x (M+1), rows [1, phi_n^H G_k]
    CMatrix psi;     // N x M, row n = phi_n^H G_k
    RVector cz_diag; // sigma1^2 ||phi_n^H G_k||^2 + sigma2^2
    CVector pilots;  // s(1..N)

    std::size_t num_slots() const { return static_cast<std::size_t>(phi.rows()); }
    std::size_t num_unknowns() const { return static_cast<std::size_t>(phi.cols()); }
};

StackedModel build_model(const TrainingPlan& plan, const CVector& g_k, const NoiseProfile& noise);

/// Model for estimating the cascaded channel [h_dk; G_k b]: rows [1, phi_n^H]. The noise
/// covariance still reflects the true backward link.
StackedModel cascaded_model(const TrainingPlan& plan, const CVector& g_k, const NoiseProfile& noise);

/// Whitened least squares (the MVU estimator for this model):
/// (Phi^H S^H Cz^-1 S Phi)^-1 Phi^H S^H Cz^-1 y / sqrt(P_T).
/// Throws RankError when the whitened Gram matrix has condition number above 1e12.
CVector ls_estimate(const CVector& y, const StackedModel& model, double p_t);

/// Closed-form reduction of ls_estimate for orthogonal designs with white equivalent
/// noise: (1/N) diag(1, beta^-2, ..., beta^-2) Phi^H S^H y / sqrt(P_T).
/// Rejects models whose cz_diag is not constant to 1e-9 relative.
CVector fast_ls_estimate(const CVector& y, const StackedModel& model, double p_t, double beta);

struct Combined
{
    CVector h_d; // K
    CVector b;   // M
};

/// h_d[k] is replica k's first entry; b is the mean of the replicas' trailing entries.
Combined combine_replicas(const std::vector<CVector>& per_antenna);

/// Gaussian conditional mean with prior h ~ CN(0, diag(prior_var)).
CVector mmse_estimate(const CVector& y, const StackedModel& model, double p_t, const RVector& prior_var);

/// (1/P_T) (Phi^H Cz^-1 Phi)^-1.
CMatrix estimate_covariance(const StackedModel& model, double p_t);

enum class Method
{
    Ls,
    FastLs,
    Mmse,
};

struct EstimateReport
{
    CVector h_d_hat;
    CVector b_hat;
    std::vector<CVector> per_antenna;        // [h_dk; b_k] per antenna
    std::vector<RVector> predicted_cov_diag; // filled when requested
    std::optional<double> sq_err_direct;
    std::optional<double> sq_err_forward;
};

/// Per-antenna estimation followed by replica combining.
///
/// Proposed plans estimate [h_dk; b] directly. Benchmark plans estimate the cascaded
/// channel and divide out the known g_k elementwise before combining. MMSE uses unit
/// priors on h_d and b (scaled by |g_km|^2 for cascaded entries).
EstimateReport estimate_channels(const ObservationSet& obs, Method method, bool with_covariance = false);

/// Fills the squared-error fields against the true channel.
void score(EstimateReport& report, const channel::ChannelRealization& truth);

} // namespace aris::estimator

#endif
