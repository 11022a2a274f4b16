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

// Test-only reference solvers. They work on real-valued expansions with plain
// std::vector storage and hand-written elimination, so they share no code path with
// the Eigen-based estimators they check.

#ifndef ARIS_TESTS_ORACLES_HPP
#define ARIS_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle
{

using cplx = std::complex<double>;
using RealMatrix = std::vector<std::vector<double>>;
using CplxMatrix = std::vector<std::vector<cplx>>; // row-major, rows x cols

// Gaussian elimination with partial pivoting; solves a x = b for square a.
inline std::vector<double> gauss_solve(RealMatrix a, std::vector<double> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (a[pivot][col] == 0.0)
            throw std::runtime_error("oracle: singular system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r)
        {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;)
    {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

// [Re A, -Im A; Im A, Re A]
inline RealMatrix realify(const CplxMatrix& A)
{
    const std::size_t rows = A.size();
    const std::size_t cols = A.front().size();
    RealMatrix R(2 * rows, std::vector<double>(2 * cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
        {
            R[i][j] = A[i][j].real();
            R[i][j + cols] = -A[i][j].imag();
            R[i + rows][j] = A[i][j].imag();
            R[i + rows][j + cols] = A[i][j].real();
        }
    return R;
}

inline std::vector<double> realify(const std::vector<cplx>& v)
{
    std::vector<double> r(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        r[i] = v[i].real();
        r[i + v.size()] = v[i].imag();
    }
    return r;
}

inline std::vector<cplx> complexify(const std::vector<double>& r)
{
    const std::size_t n = r.size() / 2;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = {r[i], r[i + n]};
    return v;
}

/// Weighted least squares min sum_i |y_i - (A x)_i|^2 / var_i, by forming the real
/// normal equations entry by entry. The result is divided by `scale` (sqrt(P_T)).
inline std::vector<cplx> weighted_ls(const CplxMatrix& A, const std::vector<cplx>& y, const std::vector<double>& var,
                                     double scale)
{
    const RealMatrix R = realify(A);
    const std::vector<double> yr = realify(y);
    const std::size_t rows = R.size();
    const std::size_t cols = R.front().size();
    RealMatrix normal(cols, std::vector<double>(cols, 0.0));
    std::vector<double> rhs(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
    {
        const double w = 1.0 / var[i % var.size()];
        for (std::size_t a = 0; a < cols; ++a)
        {
            rhs[a] += w * R[i][a] * yr[i];
            for (std::size_t b = 0; b < cols; ++b)
                normal[a][b] += w * R[i][a] * R[i][b];
        }
    }
    auto x = complexify(gauss_solve(normal, rhs));
    for (auto& v : x)
        v /= scale;
    return x;
}

/// E[h | y] for y = A h + n, h ~ CN(0, diag(prior)), n ~ CN(0, diag(noise)), computed by
/// conditioning the joint real Gaussian of (Re h, Im h, Re y, Im y):
/// E[x|y] = S_xy S_yy^-1 y.
inline std::vector<cplx> gaussian_conditional_mean(const CplxMatrix& A, const std::vector<cplx>& y,
                                                   const std::vector<double>& prior, const std::vector<double>& noise)
{
    const RealMatrix R = realify(A);
    const std::vector<double> yr = realify(y);
    const std::size_t ny = R.size();
    const std::size_t nx = R.front().size();

    std::vector<double> sx(nx);
    for (std::size_t j = 0; j < nx; ++j)
        sx[j] = prior[j % prior.size()] / 2.0;

    RealMatrix syy(ny, std::vector<double>(ny, 0.0));
    for (std::size_t i = 0; i < ny; ++i)
    {
        for (std::size_t k = 0; k < ny; ++k)
            for (std::size_t j = 0; j < nx; ++j)
                syy[i][k] += R[i][j] * sx[j] * R[k][j];
        syy[i][i] += noise[i % noise.size()] / 2.0;
    }
    const std::vector<double> w = gauss_solve(syy, yr);
    std::vector<double> x(nx, 0.0);
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t i = 0; i < ny; ++i)
            x[j] += sx[j] * R[i][j] * w[i];
    return complexify(x);
}

} // namespace oracle

#endif
