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


#include <doctest.h>

#include "aris/channel.hpp"
#include "aris/training.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace aris;
using namespace aris::training;

namespace
{

const NoiseProfile default_noise{1e-10, 1e-11}; // -70 dBm, -80 dBm

bool near(cd a, cd b, double tol = 1e-12)
{
    return std::abs(a - b) < tol;
}

} // namespace

TEST_CASE("dft_submatrix - N = 2, M = 1")
{
    const CMatrix F = dft_submatrix(2, 1);
    REQUIRE(F.rows() == 2);
    REQUIRE(F.cols() == 1);
    CHECK(near(F(0, 0), 1.0));
    CHECK(near(F(1, 0), -1.0));
}

TEST_CASE("dft_submatrix - N = 4, M = 3 columns")
{
    const CMatrix F = dft_submatrix(4, 3);
    const cd j(0.0, 1.0);
    // column c holds exp(-j 2 pi r c / 4)
    const cd expected[4][3] = {{1.0, 1.0, 1.0}, {-j, -1.0, j}, {-1.0, 1.0, -1.0}, {j, -1.0, -j}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(near(F(r, c), expected[r][c]));
}

TEST_CASE("dft_submatrix - orthogonal columns, orthogonal to the all-ones column")
{
    for (std::size_t M : {1u, 4u, 15u, 16u})
        for (std::size_t N : {M + 1, M + 3})
        {
            const CMatrix F = dft_submatrix(N, M);
            const CMatrix gram = F.adjoint() * F;
            CHECK((gram - static_cast<double>(N) * CMatrix::Identity(M, M)).cwiseAbs().maxCoeff() < 1e-11);
            const CVector ones_proj = F.adjoint() * CVector::Ones(N);
            CHECK(ones_proj.cwiseAbs().maxCoeff() < 1e-11);
        }
}

TEST_CASE("dft_submatrix - identifiability")
{
    CHECK_THROWS_AS(dft_submatrix(16, 16), InvalidArgument);
    CHECK_THROWS_AS(dft_submatrix(4, 0), InvalidArgument);
    CHECK_NOTHROW(dft_submatrix(17, 16));
}

TEST_CASE("optimal_beta - default operating point")
{
    const double rho = channel::large_scale(50.0);
    const double b = optimal_beta(1e6, rho, 16, default_noise);
    // interior optimum (sigma2 / (K sigma1))^(1/2) with sigma = standard deviations
    CHECK(b == doctest::Approx(0.14058533129758727).epsilon(1e-12));
    CHECK(20.0 * std::log10(b) == doctest::Approx(-17.0412).epsilon(1e-5));
}

TEST_CASE("optimal_beta - K = 1 and the amplitude cap")
{
    const double rho = channel::large_scale(50.0);
    CHECK(optimal_beta(1e6, rho, 1, default_noise) == doctest::Approx(0.5623413251903491).epsilon(1e-12));
    // a_max = 1 caps at sqrt(rho_g)
    CHECK(optimal_beta(1.0, rho, 16, default_noise) == doctest::Approx(6.324555320336759e-4).epsilon(1e-12));
    // the cap stops binding at a_max^2 = beta_opt^2 / rho_g
    const double threshold_db = 10.0 * std::log10(0.14058533129758727 * 0.14058533129758727 / rho);
    CHECK(threshold_db == doctest::Approx(46.9382).epsilon(1e-5));
    const double below = std::sqrt(db_to_linear(threshold_db - 0.5));
    const double above = std::sqrt(db_to_linear(threshold_db + 0.5));
    CHECK(optimal_beta(below, rho, 16, default_noise) < 0.14058533129758727);
    CHECK(optimal_beta(above, rho, 16, default_noise) == doctest::Approx(0.14058533129758727).epsilon(1e-12));
}

TEST_CASE("optimal_beta - rejects non-positive input")
{
    CHECK_THROWS_AS(optimal_beta(0.0, 1.0, 1, default_noise), InvalidArgument);
    CHECK_THROWS_AS(optimal_beta(1.0, 0.0, 1, default_noise), InvalidArgument);
    CHECK_THROWS_AS(optimal_beta(1.0, 1.0, 0, default_noise), InvalidArgument);
    CHECK_THROWS_AS(optimal_beta(1.0, 1.0, 1, {0.0, 1.0}), InvalidArgument);
}

TEST_CASE("proposed_patterns - M = 1, N = 2, g = 1, beta = 0.5")
{
    const CVector g = CVector::Ones(1);
    const auto plan = proposed_patterns(g, 0.5, 2);
    CHECK(plan.scheme == Scheme::Proposed);
    CHECK(near(plan.patterns(0, 0), 0.5));
    CHECK(near(plan.patterns(1, 0), -0.5));
    // rows [1, phi^H g]: Phi^H Phi = 2 diag(1, 0.25)
    CMatrix phi(2, 2);
    for (int n = 0; n < 2; ++n)
    {
        phi(n, 0) = 1.0;
        phi(n, 1) = std::conj(plan.patterns(n, 0)) * g(0);
    }
    const CMatrix gram = phi.adjoint() * phi;
    CHECK(near(gram(0, 0), 2.0));
    CHECK(near(gram(1, 1), 0.5));
    CHECK(near(gram(0, 1), 0.0));
}

TEST_CASE("proposed_patterns - equalised rows and amplitude beta / sqrt(rho_g) on LoS links")
{
    Rng rng(8);
    const double rho = channel::large_scale(50.0);
    const double beta = 0.05;
    const CMatrix G = channel::gen_backward({4, 4}, {4, 4}, rho, rng);
    const auto plan = proposed_patterns(G.col(0), beta, 17);
    const CMatrix F = dft_submatrix(17, 16);
    const CMatrix equalised = plan.patterns.conjugate() * G.col(0).asDiagonal();
    CHECK((equalised - beta * F).cwiseAbs().maxCoeff() < 1e-12 * beta);
    CHECK((plan.patterns.cwiseAbs().array() - beta / std::sqrt(rho)).abs().maxCoeff() < 1e-9);
    CHECK(std::isinf(plan.a_max));
}

TEST_CASE("proposed_patterns - amplitude limit")
{
    Rng rng(13);
    const double rho = channel::large_scale(50.0);
    const CMatrix G = channel::gen_backward({4, 4}, {4, 4}, rho, rng);
    const double a_max = 10.0;
    // beta at the cap lands exactly on a_max
    const auto plan = proposed_patterns(G.col(0), a_max * std::sqrt(rho), 17, a_max);
    CHECK(max_amplitude(plan) == doctest::Approx(a_max).epsilon(1e-12));
    CHECK_THROWS_AS(proposed_patterns(G.col(0), 1.01 * a_max * std::sqrt(rho), 17, a_max), ConstraintError);
}

TEST_CASE("proposed_patterns - rejects bad input")
{
    CVector g = CVector::Ones(4);
    CHECK_THROWS_AS(proposed_patterns(g, 0.0, 5), InvalidArgument);
    CHECK_THROWS_AS(proposed_patterns(g, 1.0, 4), InvalidArgument);
    g(2) = 0.0;
    CHECK_THROWS_AS(proposed_patterns(g, 1.0, 5), InvalidArgument);
}

TEST_CASE("conventional_dft_patterns")
{
    const auto plan = conventional_dft_patterns(4, 3);
    CHECK(plan.scheme == Scheme::ConventionalDft);
    CHECK(plan.a_max == 1.0);
    CHECK((plan.patterns.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
    // conj(phi) reproduces the DFT columns
    CHECK((plan.patterns.conjugate() - dft_submatrix(4, 3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(plan.pilots.size() == 4);
}

TEST_CASE("onoff_patterns - one element per slot, slot 0 all off")
{
    const auto plan = onoff_patterns(5, 3, 0.5, 1.0);
    CHECK(plan.scheme == Scheme::OnOff);
    const double expected[5][3] = {{0, 0, 0}, {0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5}, {0, 0, 0}};
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 3; ++m)
            CHECK(near(plan.patterns(n, m), expected[n][m]));
    CHECK_THROWS_AS(onoff_patterns(5, 3, 2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(onoff_patterns(5, 3, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(onoff_patterns(3, 3, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("quantize_phases - hand examples")
{
    TrainingPlan plan;
    plan.patterns.resize(1, 4);
    plan.patterns << std::polar(2.0, 0.4 * std::numbers::pi), std::polar(1.0, 0.9 * std::numbers::pi),
        cd(0.5, 0.5), 0.0;
    plan.pilots = CVector::Ones(1);

    const auto one_bit = quantize_phases(plan, 1);
    CHECK(near(one_bit.patterns(0, 0), 2.0));
    CHECK(near(one_bit.patterns(0, 3), 0.0));

    const auto two_bits = quantize_phases(plan, 2);
    CHECK(near(two_bits.patterns(0, 1), -1.0));
    // a tie between 0 and pi/2 goes to the lower level
    CHECK(near(two_bits.patterns(0, 2), std::sqrt(0.5)));

    // near 2 pi wraps to level 0
    plan.patterns(0, 0) = std::polar(1.0, -0.01);
    CHECK(near(quantize_phases(plan, 3).patterns(0, 0), 1.0));
}

TEST_CASE("quantize_phases - idempotent, amplitude preserving, error bounded by half a step")
{
    Rng rng(21);
    const CMatrix G = channel::gen_backward({4, 4}, {1, 1}, 4e-7, rng);
    const auto plan = proposed_patterns(G.col(0), 0.1, 17);
    for (unsigned bits : {1u, 2u, 3u, 6u})
    {
        const auto q = quantize_phases(plan, bits);
        const auto qq = quantize_phases(q, bits);
        CHECK((q.patterns - qq.patterns).cwiseAbs().maxCoeff() < 1e-12 * max_amplitude(plan));
        CHECK((q.patterns.cwiseAbs() - plan.patterns.cwiseAbs()).cwiseAbs().maxCoeff() <
              1e-12 * max_amplitude(plan));
        const double half_step = std::numbers::pi / std::ldexp(1.0, static_cast<int>(bits));
        for (Eigen::Index m = 0; m < q.patterns.cols(); ++m)
            for (Eigen::Index n = 0; n < q.patterns.rows(); ++n)
            {
                const double err = std::abs(std::arg(q.patterns(n, m) / plan.patterns(n, m)));
                CHECK(err <= half_step + 1e-12);
            }
    }
    CHECK_THROWS_AS(quantize_phases(plan, 0), InvalidArgument);
    CHECK_THROWS_AS(quantize_phases(plan, 31), InvalidArgument);
}

TEST_CASE("check_amplitudes")
{
    auto plan = onoff_patterns(3, 2, 1.0, 1.0);
    CHECK_NOTHROW(check_amplitudes(plan));
    plan.patterns(1, 0) = 1.0 + 1e-6;
    CHECK_THROWS_AS(check_amplitudes(plan), ConstraintError);
}

TEST_CASE("predict_variance_sum - regression value")
{
    const double v = predict_variance_sum(0.14060, 16, 16, 17, default_noise, 0.1);
    CHECK(v == doctest::Approx(1.6305463960500443e-09).epsilon(1e-12));
}

TEST_CASE("predict_variance_sum - K = 1 reduces to the single-antenna expression")
{
    for (double beta : {0.01, 0.3, 2.0})
    {
        const std::size_t M = 8, N = 9;
        const double s1 = default_noise.sigma1_sq, s2 = default_noise.sigma2_sq, p = 0.05;
        const double single = (M * (s1 * beta * beta + s2 / (beta * beta)) + M * M * s1 + s2) / (p * N);
        CHECK(predict_variance_sum(beta, M, 1, N, default_noise, p) == doctest::Approx(single).epsilon(1e-13));
    }
}

TEST_CASE("predict_variance - the sum is K direct + M forward element variances")
{
    Rng rng(5);
    std::uniform_real_distribution<double> u(-2.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const double beta = std::pow(10.0, u(rng));
        const std::size_t M = 1 + rng() % 32, K = 1 + rng() % 32, N = M + 1 + rng() % 4;
        const NoiseProfile noise{std::pow(10.0, -8 + 3 * u(rng)), std::pow(10.0, -9 + 3 * u(rng))};
        const double p = std::pow(10.0, u(rng));
        const auto el = predict_variance_elements(beta, M, K, N, noise, p);
        const double sum = predict_variance_sum(beta, M, K, N, noise, p);
        CHECK(static_cast<double>(K) * el.direct + static_cast<double>(M) * el.forward ==
              doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("predict_variance_sum - stationary at the interior optimum")
{
    const double rho = channel::large_scale(50.0);
    const double b = optimal_beta(1e6, rho, 16, default_noise);
    const double h = 1e-6 * b;
    const auto f = [&](double x) { return predict_variance_sum(x, 16, 16, 17, default_noise, 0.1); };
    const double slope = (f(b + h) - f(b - h)) / (2.0 * h);
    // relative to the scale f / b of the function
    CHECK(std::abs(slope) * b / f(b) < 1e-8);
    CHECK(f(b) < f(1.01 * b));
    CHECK(f(b) < f(0.99 * b));
}

TEST_CASE("predict_variance_sum - grid argmin is the grid point nearest beta_opt")
{
    const double b_opt = optimal_beta(1e6, channel::large_scale(50.0), 16, default_noise);
    double best_db = 0.0, best = std::numeric_limits<double>::infinity();
    for (int db = -30; db <= 0; ++db)
    {
        const double v = predict_variance_sum(std::pow(10.0, db / 20.0), 16, 16, 17, default_noise, 0.1);
        if (v < best)
        {
            best = v;
            best_db = db;
        }
    }
    CHECK(best_db == std::round(20.0 * std::log10(b_opt)));
}

TEST_CASE("predict_variance_elements - monotone in beta and the sigma1 -> 0 limit")
{
    double prev_d = 0.0, prev_f = std::numeric_limits<double>::infinity();
    for (int db = -30; db <= 0; ++db)
    {
        const auto el = predict_variance_elements(std::pow(10.0, db / 20.0), 16, 16, 17, default_noise, 0.1);
        CHECK(el.direct > prev_d);
        CHECK(el.forward < prev_f);
        prev_d = el.direct;
        prev_f = el.forward;
    }
    const NoiseProfile quiet{0.0, 1e-11};
    const auto el = predict_variance_elements(0.5, 16, 4, 17, quiet, 0.1);
    CHECK(el.direct == doctest::Approx(1e-11 / (0.1 * 17)).epsilon(1e-13));
    CHECK(el.forward == doctest::Approx(1e-11 / (0.25 * 0.1 * 17 * 4)).epsilon(1e-13));
}

TEST_CASE("predict_variance_elements_shared - K = 1 agrees, larger K only helps the sigma2 part")
{
    const auto a = predict_variance_elements(0.2, 16, 1, 17, default_noise, 0.1);
    const auto b = predict_variance_elements_shared(0.2, 16, 1, 17, default_noise, 0.1);
    CHECK(a.direct == doctest::Approx(b.direct).epsilon(1e-14));
    CHECK(a.forward == doctest::Approx(b.forward).epsilon(1e-14));
    const auto s = predict_variance_elements_shared(0.2, 16, 16, 17, default_noise, 0.1);
    CHECK(s.forward == doctest::Approx((16 * 1e-10 + 1e-11 / (16 * 0.04)) / (0.1 * 17)).epsilon(1e-13));
}

TEST_CASE("predict_variance - rejects bad input")
{
    CHECK_THROWS_AS(predict_variance_sum(0.0, 16, 16, 17, default_noise, 0.1), InvalidArgument);
    CHECK_THROWS_AS(predict_variance_sum(0.1, 16, 16, 17, default_noise, 0.0), InvalidArgument);
    CHECK_THROWS_AS(predict_variance_elements(0.1, 0, 16, 17, default_noise, 0.1), InvalidArgument);
    CHECK_THROWS_AS(predict_variance_elements_shared(0.1, 16, 16, 17, {-1.0, 1.0}, 0.1), InvalidArgument);
}
