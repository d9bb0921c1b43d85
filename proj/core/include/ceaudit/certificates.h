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

#ifndef CEAUDIT_CERTIFICATES_H_
#define CEAUDIT_CERTIFICATES_H_

#include <cstddef>
#include <variant>
#include <vector>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/game.h"
#include "ceaudit/nash_analysis.h"
#include "ceaudit/rational.h"

// Stand-alone checks for witnesses and transfer schemes. Only game-model
// arithmetic is used here, never the LP engine, so the checks stay valid for
// certificates from any source.

namespace ceaudit {

// A scheme that satisfies its admissibility inequality at every profile.
struct SchemeAudit {
  Rational expected_profit;
  // Profiles (row-major) at which the inequality holds with equality.
  std::vector<std::size_t> tight_profiles;
};

// First profile, in row-major order, at which fees exceed the surplus.
struct SchemeViolation {
  std::size_t profile_index;
  ActionProfile profile;
  Rational fees;
  Rational surplus;
};

using SchemeCheck = std::variant<SchemeAudit, SchemeViolation>;

// marg_{A_i}(q) == p_i for every i, and q is a correlated equilibrium.
bool VerifyWitness(const Game& game, const MarginalProfile& p,
                   const JointDistribution& q);

// Checks sum_i f_i(a_i) <= S_eta(a) at every a and returns the expected
// profit sum_i sum_{a_i} p_i(a_i) f_i(a_i). Throws std::invalid_argument on
// shape mismatch.
SchemeCheck VerifyActionwise(const Game& game, const MarginalProfile& p,
                             const ActionwiseScheme& scheme);

// Checks f(a) <= S_eta(a) at every a and returns the expected fee under the
// product distribution of p.
SchemeCheck VerifyProfilewise(const Game& game, const MarginalProfile& p,
                              const ProfilewiseScheme& scheme);

}  // namespace ceaudit

#endif  // CEAUDIT_CERTIFICATES_H_
