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

#ifndef CEAUDIT_NASH_ANALYSIS_H_
#define CEAUDIT_NASH_ANALYSIS_H_

#include <span>
#include <variant>
#include <vector>

#include "ceaudit/game.h"
#include "ceaudit/lp.h"
#include "ceaudit/rational.h"

namespace ceaudit {

// Aggregate fee f(a) per action profile (row-major) and kernels eta. The
// scheme is admissible when f(a) <= S_eta(a) at every profile. Only the
// aggregate is stored; any per-player split summing to f(a) is equivalent.
struct ProfilewiseScheme {
  std::vector<Rational> fees;
  DeviationKernel kernel;

  friend bool operator==(const ProfilewiseScheme&, const ProfilewiseScheme&) = default;
};

struct IsNashEquilibrium {};

struct NashExploitable {
  ProfilewiseScheme scheme;
  Rational expected_profit;  // sum_a prod_i p_i(a_i) f(a), always > 0
};

using NashVerdict = std::variant<IsNashEquilibrium, NashExploitable>;

// Expected utility of each action of `player` against the others' marginals.
std::vector<Rational> ExpectedUtilities(const Game& game,
                                        const MarginalProfile& p,
                                        std::size_t player);

// Direct check: every action in the support of p_i is a best response.
bool IsNash(const Game& game, const MarginalProfile& p);

// Variables q~ over profiles, all nonnegative. Rows: the incentive
// inequalities in IncentiveRowKeys order, then q~(a) = prod_i p_i(a_i) for
// every profile. Feasible iff p is a Nash equilibrium.
LinearSystem BuildNashSystem(const Game& game, const MarginalProfile& p);

// Maps Farkas multipliers of BuildNashSystem to a profile-wise scheme
// without checking them.
ProfilewiseScheme ProfilewiseSchemeFromMultipliers(
    const Game& game, std::span<const Rational> multipliers);

// IsNashEquilibrium when IsNash holds; otherwise solves BuildNashSystem and
// normalizes its Farkas certificate into an exploiting scheme.
NashVerdict TestNashExploitability(const Game& game, const MarginalProfile& p);

}  // namespace ceaudit

#endif  // CEAUDIT_NASH_ANALYSIS_H_
