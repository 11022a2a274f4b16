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

#ifndef ARIS_CHANNEL_HPP
#define ARIS_CHANNEL_HPP

#include "aris/types.hpp"

#include <cstddef>

namespace aris::channel
{

/// Uniform planar array with half-wavelength element spacing.
/// Elements are indexed row-major: index = p * cols + q.
struct ArrayGeometry
{
    std::size_t rows = 1;
    std::size_t cols = 1;

    std::size_t size() const { return rows * cols; }
};

/// Most-square factorisation of n elements (16 -> 4x4, 8 -> 2x4, 7 -> 1x7).
ArrayGeometry square_geometry(std::size_t n);

/// Arrival or departure direction. horizontal in (0, pi), vertical in (-pi/2, pi/2).
struct Direction
{
    double horizontal = 0.0;
    double vertical = 0.0;
};

/// One coherence block worth of channels.
struct ChannelRealization
{
    CVector h_d;     // K, UE -> BS antennas
    CVector b;       // M, UE -> RIS
    CMatrix g;       // M x K, column k is the RIS -> BS antenna k link
    double rho_g = 0; // large-scale fading of the backward link (linear)

    std::size_t num_elements() const { return static_cast<std::size_t>(b.size()); }
    std::size_t num_antennas() const { return static_cast<std::size_t>(h_d.size()); }
};

/// UPA response: entry (p, q) = exp(j*pi*(p*u + q*v)) with
/// u = sin(vertical) cos(horizontal), v = sin(vertical) sin(horizontal).
CVector steering_vector(const ArrayGeometry& geom, const Direction& dir);

/// Draws a direction with horizontal ~ U(0, pi), vertical ~ U(-pi/2, pi/2).
Direction draw_direction(Rng& rng);

/// LoS backward link sqrt(rho_g) * a_ris(arrival) * a_bs(departure)^H, M x K, rank 1.
CMatrix gen_backward(const ArrayGeometry& ris, const ArrayGeometry& bs, double rho_g, Rng& rng);

/// One CN(0, variance) sample.
cd complex_normal(Rng& rng, double variance);

/// i.i.d. CN(0, 1) entries.
CVector gen_rayleigh(std::size_t dim, Rng& rng);

/// rho_g = 1e-3 * d^-2.
double large_scale(double distance_m);

/// Draws (h_d, b, g) for one block: Rayleigh direct/forward links, LoS backward link.
ChannelRealization draw_realization(const ArrayGeometry& ris, const ArrayGeometry& bs, double rho_g, Rng& rng);

} // namespace aris::channel

#endif
