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

#include "aris/channel.hpp"

#include <cmath>
#include <numbers>

namespace aris::channel
{

ArrayGeometry square_geometry(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("square_geometry: zero elements");
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (rows > 1 && n % rows != 0)
        --rows;
    return {rows, n / rows};
}

CVector steering_vector(const ArrayGeometry& geom, const Direction& dir)
{
    if (geom.size() == 0)
        throw InvalidArgument("steering_vector: zero-sized geometry");

    const double u = std::sin(dir.vertical) * std::cos(dir.horizontal);
    const double v = std::sin(dir.vertical) * std::sin(dir.horizontal);

    CVector a(static_cast<Eigen::Index>(geom.size()));
    for (std::size_t p = 0; p < geom.rows; ++p)
        for (std::size_t q = 0; q < geom.cols; ++q)
        {
            const double phase = std::numbers::pi * (static_cast<double>(p) * u + static_cast<double>(q) * v);
            a(static_cast<Eigen::Index>(p * geom.cols + q)) = std::polar(1.0, phase);
        }
    return a;
}

Direction draw_direction(Rng& rng)
{
    std::uniform_real_distribution<double> horizontal(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> vertical(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    Direction d;
    d.horizontal = horizontal(rng);
    d.vertical = vertical(rng);
    return d;
}

CMatrix gen_backward(const ArrayGeometry& ris, const ArrayGeometry& bs, double rho_g, Rng& rng)
{
    if (!(rho_g > 0.0))
        throw InvalidArgument("gen_backward: rho_g must be positive");
    if (ris.size() == 0 || bs.size() == 0)
        throw InvalidArgument("gen_backward: zero-sized geometry");

    const Direction arrival = draw_direction(rng);
    const Direction departure = draw_direction(rng);
    const CVector a_r = steering_vector(ris, arrival);
    const CVector a_t = steering_vector(bs, departure);
    return std::sqrt(rho_g) * a_r * a_t.adjoint();
}

cd complex_normal(Rng& rng, double variance)
{
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

CVector gen_rayleigh(std::size_t dim, Rng& rng)
{
    if (dim == 0)
        throw InvalidArgument("gen_rayleigh: dimension must be at least 1");
    CVector h(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < h.size(); ++i)
        h(i) = complex_normal(rng, 1.0);
    return h;
}

double large_scale(double distance_m)
{
    if (!(distance_m > 0.0))
        throw InvalidArgument("large_scale: distance must be positive");
    return 1e-3 / (distance_m * distance_m);
}

ChannelRealization draw_realization(const ArrayGeometry& ris, const ArrayGeometry& bs, double rho_g, Rng& rng)
{
    ChannelRealization ch;
    ch.rho_g = rho_g;
    ch.g = gen_backward(ris, bs, rho_g, rng);
    ch.h_d = gen_rayleigh(bs.size(), rng);
    ch.b = gen_rayleigh(ris.size(), rng);
    return ch;
}

} // namespace aris::channel
