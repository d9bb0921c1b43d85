// Copyright 2026 The ceaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CEAUDIT_ORACLE_H_
#define CEAUDIT_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/game.h"
#include "ceaudit/rational.h"

// Brute-force ground truth for small games. Each routine is sound in one
// direction only and never calls the LP engine:
//  * CouplingScan2x2 can only prove compatibility.
//  * ExhaustiveSchemeSearch can only prove exploitability.
//  * RandomCe produces correlated equilibria through its own simplex.

namespace ceaudit {

// Dimension of the set of couplings of a two-player marginal profile,
// (|supp p_1| - 1) * (|supp p_2| - 1).
std::size_t CouplingDimension(const MarginalProfile& p);

// Scans joint distributions with marginals p whose free cells lie on the
// grid {0, 1/resolution, ..., 1} and returns the first one that verifies as
// a witness. Requires two players and CouplingDimension(p) <= 2; throws
// std::invalid_argument otherwise.
std::optional<JointDistribution> CouplingScan2x2(const Game& game,
                                                 const MarginalProfile& p,
                                                 std::size_t resolution);

// A vertex of the correlated-equilibrium polytope maximizing a seeded random
// integer objective. Deterministic per seed.
JointDistribution RandomCe(const Game& game, std::uint64_t seed);

struct SchemeSearchResult {
  Rational expected_profit;
  ActionwiseScheme scheme;
};

// Best verified scheme among kernels whose rows have entries in multiples of
// 1/kernel_resolution (1 = pure recommendations) and fees drawn from
// `fee_grid`. Returns nullopt when no scheme with positive profit exists on
// the grid.
std::optional<SchemeSearchResult> ExhaustiveSchemeSearch(
    const Game& game, const MarginalProfile& p,
    std::span<const Rational> fee_grid, std::size_t kernel_resolution = 1);

}  // namespace ceaudit

#endif  // CEAUDIT_ORACLE_H_
