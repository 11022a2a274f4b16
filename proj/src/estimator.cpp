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

#include "aris/estimator.hpp"

#include <cmath>
#include <string>

namespace aris::estimator
{

namespace
{

constexpr double max_condition = 1e12;
constexpr double white_noise_tol = 1e-9;
constexpr double backward_guard = 1e-12;

cd draw_noise(Rng& rng, double variance)
{
    return variance > 0.0 ? channel::complex_normal(rng, variance) : cd(0.0, 0.0);
}

void require_model_input(const CVector& y, const StackedModel& model, double p_t, const char* who)
{
    if (static_cast<std::size_t>(y.size()) != model.num_slots())
        throw InvalidArgument(std::string(who) + ": observation length does not match the model");
    if (!(p_t > 0.0))
        throw InvalidArgument(std::string(who) + ": P_T must be positive");
}

// S Phi with the rows scaled by the pilot symbols.
CMatrix observation_matrix(const StackedModel& model)
{
    return model.pilots.asDiagonal() * model.phi;
}

struct WhitenedSystem
{
    Eigen::LDLT<CMatrix> gram;
    CMatrix a_h_w; // A^H Cz^-1
};

WhitenedSystem factor_whitened(const StackedModel& model, const char* who)
{
    const CMatrix A = observation_matrix(model);
    WhitenedSystem sys;
    if (model.cz_diag.minCoeff() > 0.0)
        sys.a_h_w = A.adjoint() * model.cz_diag.cwiseInverse().cast<cd>().asDiagonal();
    else
        sys.a_h_w = A.adjoint(); // a noiseless slot: fall back to unweighted LS, still unbiased
    const CMatrix gram = sys.a_h_w * A;
    sys.gram.compute(gram);
    // LDLT reports success on exactly singular input, so the pivots are checked too
    const RVector pivots = sys.gram.vectorD().cwiseAbs();
    if (sys.gram.info() != Eigen::Success || !(pivots.minCoeff() * max_condition > pivots.maxCoeff()) ||
        !(sys.gram.rcond() * max_condition >= 1.0))
        throw RankError(std::string(who) + ": observation matrix is rank deficient (condition number > 1e12); "
                                           "the training plan cannot identify the channel");
    return sys;
}

StackedModel assemble(const TrainingPlan& plan, const CMatrix& rows, const CMatrix& noise_rows,
                      const NoiseProfile& noise)
{
    const auto N = static_cast<Eigen::Index>(plan.num_slots());
    const auto M = static_cast<Eigen::Index>(plan.num_elements());

    StackedModel model;
    model.phi.resize(N, M + 1);
    model.phi.col(0).setOnes();
    model.phi.rightCols(M) = rows;
    model.psi = noise_rows;
    model.cz_diag = noise.sigma1_sq * noise_rows.rowwise().squaredNorm().array() + noise.sigma2_sq;
    model.pilots = plan.pilots;
    return model;
}

void require_backward(const TrainingPlan& plan, const CVector& g_k, const char* who)
{
    if (static_cast<std::size_t>(g_k.size()) != plan.num_elements())
        throw InvalidArgument(std::string(who) + ": backward channel length does not match the plan");
    if (static_cast<std::size_t>(plan.pilots.size()) != plan.num_slots())
        throw InvalidArgument(std::string(who) + ": pilot count does not match the plan");
}

} // namespace

ObservationSet synthesize_rx(const channel::ChannelRealization& truth, const TrainingPlan& plan,
                             const NoiseProfile& noise, double p_t, Rng& rng, RisNoise mode)
{
    const auto M = truth.b.size();
    const auto K = truth.h_d.size();
    if (static_cast<std::size_t>(M) != plan.num_elements() || truth.g.rows() != M || truth.g.cols() != K)
        throw InvalidArgument("synthesize_rx: channel and plan dimensions disagree");
    if (static_cast<std::size_t>(plan.pilots.size()) != plan.num_slots())
        throw InvalidArgument("synthesize_rx: pilot count does not match the plan");
    if (!(p_t > 0.0))
        throw InvalidArgument("synthesize_rx: P_T must be positive");

    const auto N = static_cast<Eigen::Index>(plan.num_slots());
    const double amp = std::sqrt(p_t);
    const CMatrix gt = truth.g.transpose(); // K x M

    ObservationSet obs;
    obs.Y.resize(N, K);
    obs.plan = plan;
    obs.backward = truth.g;
    obs.noise = noise;
    obs.p_t = p_t;

    CVector u(M);
    for (Eigen::Index n = 0; n < N; ++n)
    {
        // row k of R is phi_n^H G_k
        const CMatrix R = gt * plan.patterns.row(n).adjoint().asDiagonal();
        const CVector through_ris = R * truth.b;
        const cd s = plan.pilots(n);

        if (mode == RisNoise::Shared)
            for (Eigen::Index m = 0; m < M; ++m)
                u(m) = draw_noise(rng, noise.sigma1_sq);

        for (Eigen::Index k = 0; k < K; ++k)
        {
            // With an independent u per antenna only the scalar phi_n^H G_k u reaches the
            // receiver; it is CN(0, sigma1^2 ||phi_n^H G_k||^2) and is drawn as such.
            const cd ris_noise = mode == RisNoise::Shared
                                     ? cd(R.row(k) * u)
                                     : draw_noise(rng, noise.sigma1_sq * R.row(k).squaredNorm());
            obs.Y(n, k) = amp * (truth.h_d(k) + through_ris(k)) * s + ris_noise + draw_noise(rng, noise.sigma2_sq);
        }
    }
    return obs;
}

StackedModel build_model(const TrainingPlan& plan, const CVector& g_k, const NoiseProfile& noise)
{
    require_backward(plan, g_k, "build_model");
    const CMatrix rows = plan.patterns.conjugate() * g_k.asDiagonal();
    return assemble(plan, rows, rows, noise);
}

StackedModel cascaded_model(const TrainingPlan& plan, const CVector& g_k, const NoiseProfile& noise)
{
    require_backward(plan, g_k, "cascaded_model");
    const CMatrix noise_rows = plan.patterns.conjugate() * g_k.asDiagonal();
    return assemble(plan, plan.patterns.conjugate(), noise_rows, noise);
}

CVector ls_estimate(const CVector& y, const StackedModel& model, double p_t)
{
    require_model_input(y, model, p_t, "ls_estimate");
    const WhitenedSystem sys = factor_whitened(model, "ls_estimate");
    return sys.gram.solve(sys.a_h_w * y) / std::sqrt(p_t);
}

CVector fast_ls_estimate(const CVector& y, const StackedModel& model, double p_t, double beta)
{
    require_model_input(y, model, p_t, "fast_ls_estimate");
    if (!(beta > 0.0))
        throw InvalidArgument("fast_ls_estimate: beta must be positive");

    const double cz_max = model.cz_diag.maxCoeff();
    const double cz_min = model.cz_diag.minCoeff();
    if (cz_max - cz_min > white_noise_tol * cz_max)
        throw InvalidArgument("fast_ls_estimate: equivalent noise is not white; use ls_estimate");

    const double N = static_cast<double>(model.num_slots());
    // S^H y: pilots are unit modulus
    const CVector despread = model.pilots.conjugate().cwiseProduct(y);
    CVector h = model.phi.adjoint() * despread;
    h(0) /= N;
    h.tail(h.size() - 1) /= N * beta * beta;
    return h / std::sqrt(p_t);
}

Combined combine_replicas(const std::vector<CVector>& per_antenna)
{
    if (per_antenna.empty())
        throw InvalidArgument("combine_replicas: need at least one replica");
    const Eigen::Index len = per_antenna.front().size();
    if (len < 2)
        throw InvalidArgument("combine_replicas: replicas must hold [h_d; b]");

    Combined out;
    out.h_d.resize(static_cast<Eigen::Index>(per_antenna.size()));
    out.b = CVector::Zero(len - 1);
    for (std::size_t k = 0; k < per_antenna.size(); ++k)
    {
        if (per_antenna[k].size() != len)
            throw InvalidArgument("combine_replicas: replica lengths differ");
        out.h_d(static_cast<Eigen::Index>(k)) = per_antenna[k](0);
        out.b += per_antenna[k].tail(len - 1);
    }
    out.b /= static_cast<double>(per_antenna.size());
    return out;
}

CVector mmse_estimate(const CVector& y, const StackedModel& model, double p_t, const RVector& prior_var)
{
    require_model_input(y, model, p_t, "mmse_estimate");
    if (static_cast<std::size_t>(prior_var.size()) != model.num_unknowns() || !(prior_var.minCoeff() > 0.0))
        throw InvalidArgument("mmse_estimate: prior variances must be positive, one per unknown");

    if (!(model.cz_diag.minCoeff() > 0.0))
        throw InvalidArgument("mmse_estimate: equivalent noise must have positive variance in every slot");

    // Information form of C_p A^H (A C_p A^H + C_z)^-1 y, A = sqrt(P_T) S Phi. Only an
    // (M+1)-square system is solved and the diffuse-prior limit stays well conditioned.
    const CMatrix A = observation_matrix(model);
    const CMatrix a_h_w = A.adjoint() * model.cz_diag.cwiseInverse().cast<cd>().asDiagonal();
    CMatrix precision = p_t * (a_h_w * A);
    precision.diagonal() += prior_var.cwiseInverse().cast<cd>();

    Eigen::LLT<CMatrix> llt(precision);
    if (llt.info() != Eigen::Success)
        throw RankError("mmse_estimate: posterior precision is not positive definite");
    return llt.solve(std::sqrt(p_t) * (a_h_w * y));
}

CMatrix estimate_covariance(const StackedModel& model, double p_t)
{
    if (!(p_t > 0.0))
        throw InvalidArgument("estimate_covariance: P_T must be positive");
    const WhitenedSystem sys = factor_whitened(model, "estimate_covariance");
    const auto n = static_cast<Eigen::Index>(model.num_unknowns());
    return sys.gram.solve(CMatrix::Identity(n, n)) / p_t;
}

EstimateReport estimate_channels(const ObservationSet& obs, Method method, bool with_covariance)
{
    const auto K = obs.backward.cols();
    const auto M = obs.backward.rows();
    if (obs.Y.cols() != K || static_cast<std::size_t>(obs.Y.rows()) != obs.plan.num_slots())
        throw InvalidArgument("estimate_channels: observation dimensions disagree with the plan");

    const bool cascaded = obs.plan.scheme != training::Scheme::Proposed;

    EstimateReport report;
    report.per_antenna.reserve(static_cast<std::size_t>(K));
    for (Eigen::Index k = 0; k < K; ++k)
    {
        const CVector g_k = obs.backward.col(k);
        const StackedModel model =
            cascaded ? cascaded_model(obs.plan, g_k, obs.noise) : build_model(obs.plan, g_k, obs.noise);
        const CVector y_k = obs.Y.col(k);

        CVector h;
        switch (method)
        {
        case Method::Ls:
            h = ls_estimate(y_k, model, obs.p_t);
            break;
        case Method::FastLs:
            h = fast_ls_estimate(y_k, model, obs.p_t, cascaded ? 1.0 : obs.plan.beta);
            break;
        case Method::Mmse: {
            RVector prior = RVector::Ones(M + 1);
            if (cascaded)
                prior.tail(M) = g_k.cwiseAbs2();
            h = mmse_estimate(y_k, model, obs.p_t, prior);
            break;
        }
        }

        RVector cov;
        if (with_covariance)
            cov = estimate_covariance(model, obs.p_t).diagonal().real();

        if (cascaded)
        {
            // strip the known backward link from the cascaded estimate
            const double g_max = g_k.cwiseAbs().maxCoeff();
            if (!(g_max > 0.0) || g_k.cwiseAbs().minCoeff() <= backward_guard * g_max)
                throw InvalidArgument("estimate_channels: backward channel entry too small to divide out");
            h.tail(M) = h.tail(M).cwiseQuotient(g_k);
            if (with_covariance)
                cov.tail(M) = cov.tail(M).cwiseQuotient(g_k.cwiseAbs2());
        }

        report.per_antenna.push_back(std::move(h));
        if (with_covariance)
            report.predicted_cov_diag.push_back(std::move(cov));
    }

    Combined c = combine_replicas(report.per_antenna);
    report.h_d_hat = std::move(c.h_d);
    report.b_hat = std::move(c.b);
    return report;
}

void score(EstimateReport& report, const channel::ChannelRealization& truth)
{
    if (truth.h_d.size() != report.h_d_hat.size() || truth.b.size() != report.b_hat.size())
        throw InvalidArgument("score: truth dimensions disagree with the estimate");
    report.sq_err_direct = (truth.h_d - report.h_d_hat).squaredNorm();
    report.sq_err_forward = (truth.b - report.b_hat).squaredNorm();
}

} // namespace aris::estimator
