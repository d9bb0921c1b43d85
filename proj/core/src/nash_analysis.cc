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

#include "ceaudit/nash_analysis.h"

#include <stdexcept>
#include <utility>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/certificates.h"

namespace ceaudit {

std::vector<Rational> ExpectedUtilities(const Game& game,
                                        const MarginalProfile& p,
                                        std::size_t player) {
  RequireSameShape(game, p);
  std::vector<Rational> expected(game.num_actions(player));
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    const ActionProfile a = game.ProfileAt(index);
    Rational weight(1);
    for (std::size_t j = 0; j < game.num_players() && !weight.IsZero(); ++j) {
      if (j != player) weight *= p(j, a[j]);
    }
    if (weight.IsZero()) continue;
    expected[a[player]] += weight * game.Utility(player, index);
  }
  return expected;
}

bool IsNash(const Game& game, const MarginalProfile& p) {
  RequireSameShape(game, p);
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::vector<Rational> expected = ExpectedUtilities(game, p, i);
    Rational best = expected.front();
    for (const Rational& e : expected) {
      if (e > best) best = e;
    }
    for (std::size_t a = 0; a < expected.size(); ++a) {
      if (p(i, a).Sign() > 0 && expected[a] < best) return false;
    }
  }
  return true;
}

LinearSystem BuildNashSystem(const Game& game, const MarginalProfile& p) {
  RequireSameShape(game, p);
  const std::size_t num_profiles = game.num_profiles();
  const JointDistribution q = ProductDistribution(p);
  LinearSystem system(num_profiles);

  for (const IncentiveRowKey& key : IncentiveRowKeys(game.shape())) {
    const std::size_t i = key.player;
    const std::size_t stride = game.Stride(i);
    std::vector<Rational> row(num_profiles);
    for (std::size_t index = 0; index < num_profiles; ++index) {
      const std::size_t a = (index / stride) % game.num_actions(i);
      if (a != key.recommended) continue;
      row[index] = game.Utility(i, index) -
                   game.Utility(i, index + key.alternative * stride - a * stride);
    }
    system.AddRow(std::move(row), RowSense::kGreaterEqual, Rational());
  }
  for (std::size_t index = 0; index < num_profiles; ++index) {
    std::vector<Rational> row(num_profiles);
    row[index] = 1;
    system.AddRow(std::move(row), RowSense::kEqual, q[index]);
  }
  return system;
}

ProfilewiseScheme ProfilewiseSchemeFromMultipliers(
    const Game& game, std::span<const Rational> multipliers) {
  const std::size_t num_incentive = IncentiveRowKeys(game.shape()).size();
  if (multipliers.size() != num_incentive + game.num_profiles()) {
    throw std::invalid_argument("multiplier count does not match the system");
  }
  ScaledKernel scaled = KernelFromIncentiveMultipliers(
      game.shape(), multipliers.subspan(0, num_incentive));
  ProfilewiseScheme scheme;
  scheme.fees.reserve(game.num_profiles());
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    scheme.fees.push_back(scaled.scale * multipliers[num_incentive + index]);
  }
  scheme.kernel = std::move(scaled.kernel);
  return scheme;
}

NashVerdict TestNashExploitability(const Game& game, const MarginalProfile& p) {
  if (IsNash(game, p)) return IsNashEquilibrium{};

  const LinearSystem system = BuildNashSystem(game, p);
  const FeasibilityOutcome outcome = SolveFeasibility(system);
  const auto* farkas = std::get_if<FarkasCertificate>(&outcome);
  if (farkas == nullptr || !VerifyFarkas(system, farkas->multipliers)) {
    throw std::logic_error("direct check and LP alternative disagree");
  }
  ProfilewiseScheme scheme = ProfilewiseSchemeFromMultipliers(game, farkas->multipliers);
  const SchemeCheck check = VerifyProfilewise(game, p, scheme);
  const auto* audit = std::get_if<SchemeAudit>(&check);
  if (audit == nullptr || audit->expected_profit.Sign() <= 0) {
    throw std::logic_error("normalized certificate does not exploit the profile");
  }
  Rational profit = audit->expected_profit;
  return NashExploitable{std::move(scheme), std::move(profit)};
}

}  // namespace ceaudit
