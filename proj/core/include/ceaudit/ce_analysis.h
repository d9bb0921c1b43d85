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

#ifndef CEAUDIT_CE_ANALYSIS_H_
#define CEAUDIT_CE_ANALYSIS_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ceaudit/game.h"
#include "ceaudit/lp.h"
#include "ceaudit/rational.h"

namespace ceaudit {

// Fees f_i(a_i) charged when player i is recommended a_i, together with the
// kernels eta_i proposing replacement actions. The scheme is admissible when
//   sum_i u_i(a) + sum_i f_i(a_i) <= sum_i sum_b eta_i(a_i, b) u_i(b, a_{-i})
// holds at every profile a.
struct ActionwiseScheme {
  std::vector<std::vector<Rational>> fees;
  DeviationKernel kernel;

  friend bool operator==(const ActionwiseScheme&, const ActionwiseScheme&) = default;
};

struct CeCompatible {
  JointDistribution witness;
};

struct CeExploitable {
  ActionwiseScheme scheme;
  Rational expected_profit;  // sum_i sum_{a_i} p_i(a_i) f_i(a_i), always > 0
};

using CeVerdict = std::variant<CeCompatible, CeExploitable>;

// Identifies the incentive row "player told `recommended` does not prefer
// `alternative`".
struct IncentiveRowKey {
  std::size_t player;
  std::size_t recommended;
  std::size_t alternative;
};

// Incentive rows in system order: players, then recommended action, then
// alternative action, skipping alternative == recommended.
std::vector<IncentiveRowKey> IncentiveRowKeys(const Shape& shape);

// A kernel built from raw off-diagonal weights, and the positive factor
// applied to make every off-diagonal row sum at most one.
struct ScaledKernel {
  DeviationKernel kernel;
  Rational scale;
};

// Scale is 1/M when the largest off-diagonal row sum M exceeds one, else 1.
// The diagonal completes each row to one. Weights must be nonnegative.
ScaledKernel KernelFromIncentiveMultipliers(
    const Shape& shape, std::span<const Rational> incentive_multipliers);

// True iff every incentive inequality
//   sum_{a_{-i}} q(a_i, a_{-i}) [u_i(a_i, a_{-i}) - u_i(a'_i, a_{-i})] >= 0
// holds exactly.
bool IsCorrelatedEquilibrium(const Game& game, const JointDistribution& q);

// Variables: q over profiles (row-major), all nonnegative. Rows: the
// incentive inequalities in IncentiveRowKeys order, then one marginal
// equality per (player, action) in declaration order.
LinearSystem BuildCeSystem(const Game& game, const MarginalProfile& p);

// Maps raw Farkas multipliers of BuildCeSystem to a scheme without checking
// them: incentive multipliers become off-diagonal kernel mass, marginal-row
// multipliers become fees, both scaled by the kernel's scale factor.
ActionwiseScheme ActionwiseSchemeFromMultipliers(
    const Game& game, std::span<const Rational> multipliers);

// As above, after checking that `farkas` proves BuildCeSystem(game, p)
// infeasible. Throws std::invalid_argument otherwise.
ActionwiseScheme NormalizeDual(const Game& game, const MarginalProfile& p,
                               const FarkasCertificate& farkas);

// Either a correlated equilibrium with marginals p, or an action-wise scheme
// with strictly positive expected profit under p.
CeVerdict TestCeCompatibility(const Game& game, const MarginalProfile& p);

}  // namespace ceaudit

#endif  // CEAUDIT_CE_ANALYSIS_H_
