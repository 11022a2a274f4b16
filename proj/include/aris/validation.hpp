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

#ifndef ARIS_VALIDATION_HPP
#define ARIS_VALIDATION_HPP

#include "aris/harness.hpp"

#include <string>
#include <vector>

namespace aris::validation
{

struct Check
{
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Structural identities on random channels plus a short Monte Carlo agreement check
/// with cfg.trials trials. Geometry, noise and seed come from cfg.
std::vector<Check> run_invariant_checks(const harness::ExperimentConfig& cfg);

} // namespace aris::validation

#endif
