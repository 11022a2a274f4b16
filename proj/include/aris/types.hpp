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

#ifndef ARIS_TYPES_HPP
#define ARIS_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace aris
{

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Every stochastic operation takes one of these by reference. Parallel callers
// must hand each trial its own engine (see harness::trial_rng).
using Rng = std::mt19937_64;

// Precondition violations (bad sizes, non-positive powers, ...).
class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// A reflection amplitude exceeds a_max.
class ConstraintError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Observation matrix is rank deficient or too badly conditioned to invert.
class RankError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Transmit/noise powers are handled in watts internally.
inline double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace aris

#endif
