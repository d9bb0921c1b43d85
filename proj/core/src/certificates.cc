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

#include "ceaudit/certificates.h"

#include <stdexcept>
#include <utility>

namespace ceaudit {

bool VerifyWitness(const Game& game, const MarginalProfile& p,
                   const JointDistribution& q) {
  if (p.shape() != game.shape() || q.shape() != game.shape()) return false;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (MarginalOf(q, i) != p.player(i)) return false;
  }
  return IsCorrelatedEquilibrium(game, q);
}

SchemeCheck VerifyActionwise(const Game& game, const MarginalProfile& p,
                             const ActionwiseScheme& scheme) {
  RequireSameShape(game, p);
  RequireSameShape(game, scheme.kernel);
  if (scheme.fees.size() != game.num_players()) {
    throw std::invalid_argument("fee table has the wrong number of players");
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (scheme.fees[i].size() != game.num_actions(i)) {
      throw std::invalid_argument("fee table does not match the action set of player " +
                                  game.player_name(i));
    }
  }

  SchemeAudit audit;
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    ActionProfile a = game.ProfileAt(index);
    Rational fees;
    for (std::size_t i = 0; i < game.num_players(); ++i) fees += scheme.fees[i][a[i]];
    Rational surplus = Surplus(game, scheme.kernel, a);
    if (fees > surplus) {
      return SchemeViolation{index, std::move(a), std::move(fees), std::move(surplus)};
    }
    if (fees == surplus) audit.tight_profiles.push_back(index);
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t a = 0; a < game.num_actions(i); ++a) {
      audit.expected_profit += p(i, a) * scheme.fees[i][a];
    }
  }
  return audit;
}

SchemeCheck VerifyProfilewise(const Game& game, const MarginalProfile& p,
                              const ProfilewiseScheme& scheme) {
  RequireSameShape(game, p);
  RequireSameShape(game, scheme.kernel);
  if (scheme.fees.size() != game.num_profiles()) {
    throw std::invalid_argument("fee table does not cover every profile");
  }
  const JointDistribution q = ProductDistribution(p);
  SchemeAudit audit;
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    ActionProfile a = game.ProfileAt(index);
    Rational surplus = Surplus(game, scheme.kernel, a);
    if (scheme.fees[index] > surplus) {
      return SchemeViolation{index, std::move(a), scheme.fees[index], std::move(surplus)};
    }
    if (scheme.fees[index] == surplus) audit.tight_profiles.push_back(index);
    audit.expected_profit += q[index] * scheme.fees[index];
  }
  return audit;
}

}  // namespace ceaudit
