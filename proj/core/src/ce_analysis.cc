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

#include "ceaudit/ce_analysis.h"

#include <stdexcept>
#include <utility>

#include "ceaudit/certificates.h"

namespace ceaudit {

std::vector<IncentiveRowKey> IncentiveRowKeys(const Shape& shape) {
  std::vector<IncentiveRowKey> keys;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    for (std::size_t a = 0; a < shape[i]; ++a) {
      for (std::size_t b = 0; b < shape[i]; ++b) {
        if (a != b) keys.push_back({i, a, b});
      }
    }
  }
  return keys;
}

ScaledKernel KernelFromIncentiveMultipliers(
    const Shape& shape, std::span<const Rational> incentive_multipliers) {
  const std::vector<IncentiveRowKey> keys = IncentiveRowKeys(shape);
  if (incentive_multipliers.size() != keys.size()) {
    throw std::invalid_argument("wrong number of incentive multipliers");
  }
  std::vector<DeviationKernel::Matrix> raw;
  for (std::size_t n : shape) raw.emplace_back(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (incentive_multipliers[k].Sign() < 0) {
      throw std::invalid_argument("negative incentive multiplier");
    }
    raw[keys[k].player][keys[k].recommended][keys[k].alternative] =
        incentive_multipliers[k];
  }

  Rational largest;
  for (const auto& m : raw) {
    for (const auto& row : m) {
      Rational sum;
      for (const Rational& x : row) sum += x;
      if (sum > largest) largest = sum;
    }
  }
  const Rational scale = largest > 1 ? Rational(1) / largest : Rational(1);

  for (auto& m : raw) {
    for (std::size_t a = 0; a < m.size(); ++a) {
      Rational off_diagonal;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (b == a) continue;
        m[a][b] *= scale;
        off_diagonal += m[a][b];
      }
      m[a][a] = Rational(1) - off_diagonal;
    }
  }
  return {DeviationKernel(std::move(raw)), scale};
}

bool IsCorrelatedEquilibrium(const Game& game, const JointDistribution& q) {
  RequireSameShape(game, q);
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t n = game.num_actions(i);
    const std::size_t stride = game.Stride(i);
    // gain[a][b]: expected gain of switching a -> b given recommendation a.
    std::vector<std::vector<Rational>> gain(n, std::vector<Rational>(n));
    for (std::size_t index = 0; index < game.num_profiles(); ++index) {
      if (q[index].IsZero()) continue;
      const std::size_t a = (index / stride) % n;
      const std::size_t row_start = index - a * stride;
      const Rational& current = game.Utility(i, index);
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a) continue;
        gain[a][b] += q[index] * (game.Utility(i, row_start + b * stride) - current);
      }
    }
    for (const auto& row : gain) {
      for (const Rational& g : row) {
        if (g.Sign() > 0) return false;
      }
    }
  }
  return true;
}

LinearSystem BuildCeSystem(const Game& game, const MarginalProfile& p) {
  RequireSameShape(game, p);
  const std::size_t num_profiles = game.num_profiles();
  LinearSystem system(num_profiles);

  for (const IncentiveRowKey& key : IncentiveRowKeys(game.shape())) {
    const std::size_t i = key.player;
    const std::size_t stride = game.Stride(i);
    std::vector<Rational> row(num_profiles);
    for (std::size_t index = 0; index < num_profiles; ++index) {
      const std::size_t a = (index / stride) % game.num_actions(i);
      if (a != key.recommended) continue;
      const std::size_t deviation = index + key.alternative * stride - a * stride;
      row[index] = game.Utility(i, index) - game.Utility(i, deviation);
    }
    system.AddRow(std::move(row), RowSense::kGreaterEqual, Rational());
  }

  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t stride = game.Stride(i);
    for (std::size_t a = 0; a < game.num_actions(i); ++a) {
      std::vector<Rational> row(num_profiles);
      for (std::size_t index = 0; index < num_profiles; ++index) {
        if ((index / stride) % game.num_actions(i) == a) row[index] = 1;
      }
      system.AddRow(std::move(row), RowSense::kEqual, p(i, a));
    }
  }
  return system;
}

ActionwiseScheme ActionwiseSchemeFromMultipliers(
    const Game& game, std::span<const Rational> multipliers) {
  const std::size_t num_incentive = IncentiveRowKeys(game.shape()).size();
  std::size_t num_marginal = 0;
  for (std::size_t n : game.shape()) num_marginal += n;
  if (multipliers.size() != num_incentive + num_marginal) {
    throw std::invalid_argument("multiplier count does not match the system");
  }
  ScaledKernel scaled = KernelFromIncentiveMultipliers(
      game.shape(), multipliers.subspan(0, num_incentive));

  ActionwiseScheme scheme;
  std::size_t k = num_incentive;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::vector<Rational> fees;
    for (std::size_t a = 0; a < game.num_actions(i); ++a) {
      fees.push_back(scaled.scale * multipliers[k++]);
    }
    scheme.fees.push_back(std::move(fees));
  }
  scheme.kernel = std::move(scaled.kernel);
  return scheme;
}

ActionwiseScheme NormalizeDual(const Game& game, const MarginalProfile& p,
                               const FarkasCertificate& farkas) {
  if (!VerifyFarkas(BuildCeSystem(game, p), farkas.multipliers)) {
    throw std::invalid_argument("not an infeasibility certificate for this profile");
  }
  return ActionwiseSchemeFromMultipliers(game, farkas.multipliers);
}

CeVerdict TestCeCompatibility(const Game& game, const MarginalProfile& p) {
  const LinearSystem system = BuildCeSystem(game, p);
  FeasibilityOutcome outcome = SolveFeasibility(system);

  if (auto* point = std::get_if<FeasiblePoint>(&outcome)) {
    JointDistribution witness(game.shape(), std::move(point->x));
    if (!VerifyWitness(game, p, witness)) {
      throw std::logic_error("solver returned a point that is not a witness");
    }
    return CeCompatible{std::move(witness)};
  }

  ActionwiseScheme scheme =
      NormalizeDual(game, p, std::get<FarkasCertificate>(outcome));
  const SchemeCheck check = VerifyActionwise(game, p, scheme);
  const auto* audit = std::get_if<SchemeAudit>(&check);
  if (audit == nullptr || audit->expected_profit.Sign() <= 0) {
    throw std::logic_error("normalized certificate does not exploit the profile");
  }
  Rational profit = audit->expected_profit;
  return CeExploitable{std::move(scheme), std::move(profit)};
}

}  // namespace ceaudit
