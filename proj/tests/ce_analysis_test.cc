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

#include <random>
#include <stdexcept>
#include <variant>

#include <gtest/gtest.h>

#include "ceaudit/certificates.h"
#include "ceaudit/oracle.h"
#include "test_util.h"

namespace ceaudit {
namespace {

using testing::CoordinationGame;
using testing::Marginals;
using testing::Q;

TEST(IsCorrelatedEquilibriumTest, CoordinationExamples) {
  const Game g = CoordinationGame();
  EXPECT_TRUE(IsCorrelatedEquilibrium(g, JointDistribution({2, 3}, {Q(1, 2), 0, 0, 0, Q(1, 2), 0})));
  EXPECT_FALSE(IsCorrelatedEquilibrium(g, JointDistribution::PointMass({2, 3}, ActionProfile({0, 1}))));
  EXPECT_TRUE(IsCorrelatedEquilibrium(g, ProductDistribution(testing::MixedEquilibriumMarginals())));
}

TEST(IsCorrelatedEquilibriumTest, MatchesDefinitionOnRandomDistributions) {
  std::mt19937_64 rng(17);
  for (const Shape& shape : testing::CorpusShapes()) {
    const Game g = testing::RandomGame(rng, shape);
    for (int k = 0; k < 20; ++k) {
      const JointDistribution q = ProductDistribution(testing::RandomMarginals(rng, shape));
      EXPECT_EQ(IsCorrelatedEquilibrium(g, q), testing::BruteForceIsCe(g, q));
    }
    const JointDistribution ce = RandomCe(g, 1);
    EXPECT_TRUE(testing::BruteForceIsCe(g, ce));
  }
}

TEST(BuildCeSystemTest, DiagonalWitnessSatisfiesRows) {
  const Game g = CoordinationGame();
  const auto p = Marginals({{Q(1, 2), Q(1, 2)}, {Q(1, 2), Q(1, 2), 0}});
  const LinearSystem s = BuildCeSystem(g, p);
  EXPECT_EQ(s.num_variables(), 6u);
  // 2 + 6 incentive rows, 5 marginal rows.
  EXPECT_EQ(s.num_rows(), 13u);
  EXPECT_TRUE(VerifyPoint(s, {Q(1, 2), 0, 0, 0, Q(1, 2), 0}));
}

TEST(BuildCeSystemTest, PureProfileWithPositiveDeviationGainIsInfeasible) {
  const Game g = CoordinationGame();
  const LinearSystem s = BuildCeSystem(g, testing::PureMarginals({2, 3}, ActionProfile({0, 1})));
  EXPECT_TRUE(std::holds_alternative<FarkasCertificate>(SolveFeasibility(s)));
}

TEST(BuildCeSystemTest, ShapeMismatchThrows) {
  EXPECT_THROW(BuildCeSystem(CoordinationGame(), Marginals({{1, 0}, {1, 0}})),
               std::invalid_argument);
}

TEST(NormalizeDualTest, ZeroIncentiveMultipliersGiveIdentityKernel) {
  const Game g = CoordinationGame();
  const std::size_t incentive = IncentiveRowKeys(g.shape()).size();
  std::vector<Rational> y(incentive, Rational(0));
  for (Rational f : {Q(1), Q(2), Q(-1), Q(0), Q(3)}) y.push_back(f);
  const ActionwiseScheme scheme = ActionwiseSchemeFromMultipliers(g, y);
  EXPECT_EQ(scheme.kernel, DeviationKernel::Identity(g.shape()));
  EXPECT_EQ(scheme.fees, (std::vector<std::vector<Rational>>{{1, 2}, {-1, 0, 3}}));
  // Without deviation mass the marginal rows alone are always satisfiable,
  // so such multipliers never certify infeasibility.
  EXPECT_THROW(NormalizeDual(g, testing::MiscoordinationMarginals(), FarkasCertificate{y}),
               std::invalid_argument);
}

TEST(NormalizeDualTest, RescalesLargeDeviationMass) {
  const Game g = CoordinationGame();
  std::vector<Rational> y(IncentiveRowKeys(g.shape()).size() + 5);
  const auto keys = IncentiveRowKeys(g.shape());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (keys[k].player == 1 && keys[k].recommended == 1 && keys[k].alternative == 0) y[k] = 4;
  }
  y[keys.size() + 1] = 8;
  const ActionwiseScheme scheme = ActionwiseSchemeFromMultipliers(g, y);
  EXPECT_EQ(scheme.kernel(1, 1, 0), 1);
  EXPECT_EQ(scheme.kernel(1, 1, 1), 0);
  EXPECT_EQ(scheme.fees[0][1], 2);
}

TEST(TestCeCompatibilityTest, MiscoordinationIsExploitable) {
  const Game g = CoordinationGame();
  const auto p = testing::MiscoordinationMarginals();
  const CeVerdict v = TestCeCompatibility(g, p);
  ASSERT_TRUE(std::holds_alternative<CeExploitable>(v));
  const auto& e = std::get<CeExploitable>(v);
  EXPECT_GT(e.expected_profit, 0);
  const SchemeCheck check = VerifyActionwise(g, p, e.scheme);
  ASSERT_TRUE(std::holds_alternative<SchemeAudit>(check));
  EXPECT_EQ(std::get<SchemeAudit>(check).expected_profit, e.expected_profit);
}

TEST(TestCeCompatibilityTest, MassOnDominatedActionIsExploitable) {
  const Game g = CoordinationGame();
  for (Rational r : {Q(1, 4), Q(1, 2), Q(1)}) {
    const auto p = Marginals({{Q(1, 3), Q(2, 3)}, {(1 - r) / 2, (1 - r) / 2, r}});
    const CeVerdict v = TestCeCompatibility(g, p);
    ASSERT_TRUE(std::holds_alternative<CeExploitable>(v)) << r;
  }
}

TEST(TestCeCompatibilityTest, CompatibleExamples) {
  const Game g = CoordinationGame();
  for (const MarginalProfile& p :
       {Marginals({{Q(1, 2), Q(1, 2)}, {Q(1, 2), Q(1, 2), 0}}),
        testing::PureMarginals({2, 3}, ActionProfile({0, 0})),
        testing::MixedEquilibriumMarginals()}) {
    const CeVerdict v = TestCeCompatibility(g, p);
    ASSERT_TRUE(std::holds_alternative<CeCompatible>(v));
    const auto& q = std::get<CeCompatible>(v).witness;
    EXPECT_TRUE(testing::BruteForceIsCe(g, q));
    EXPECT_EQ(MarginalsOf(q), p);
  }
}

TEST(TestCeCompatibilityTest, TrivialGame) {
  const Game g({"solo"}, {{"x"}}, {{Q(3)}});
  const CeVerdict v = TestCeCompatibility(g, Marginals({{1}}));
  ASSERT_TRUE(std::holds_alternative<CeCompatible>(v));
}

TEST(TestCeCompatibilityTest, MarginalsOfSampledCeAreCompatible) {
  std::uint64_t seed = 0;
  for (const Shape& shape : testing::CorpusShapes()) {
    for (int k = 0; k < 4; ++k, ++seed) {
      const Game g = testing::RandomGame(seed, shape);
      const JointDistribution q = RandomCe(g, seed);
      const MarginalProfile p = MarginalsOf(q);
      const CeVerdict v = TestCeCompatibility(g, p);
      ASSERT_TRUE(std::holds_alternative<CeCompatible>(v)) << "seed " << seed;
      EXPECT_TRUE(VerifyWitness(g, p, std::get<CeCompatible>(v).witness));
    }
  }
}

TEST(TestCeCompatibilityTest, ExactlyOneArmVerifies) {
  std::mt19937_64 rng(23);
  int exploitable = 0;
  for (const Shape& shape : testing::CorpusShapes()) {
    const Game g = testing::RandomGame(rng, shape);
    for (int k = 0; k < 15; ++k) {
      const MarginalProfile p = testing::RandomMarginals(rng, shape);
      const CeVerdict v = TestCeCompatibility(g, p);
      if (const auto* c = std::get_if<CeCompatible>(&v)) {
        EXPECT_TRUE(VerifyWitness(g, p, c->witness));
      } else {
        ++exploitable;
        const auto& e = std::get<CeExploitable>(v);
        const SchemeCheck check = VerifyActionwise(g, p, e.scheme);
        ASSERT_TRUE(std::holds_alternative<SchemeAudit>(check));
        EXPECT_GT(std::get<SchemeAudit>(check).expected_profit, 0);
      }
    }
  }
  EXPECT_GT(exploitable, 0);
}

// u_i -> alpha u_i + beta_i(a_{-i}) leaves the verdict arm alone.
TEST(TestCeCompatibilityTest, ArmInvariantUnderAffinePayoffChange) {
  std::mt19937_64 rng(31);
  for (const Shape& shape : testing::CorpusShapes()) {
    const Game g = testing::RandomGame(rng, shape);
    const Rational alpha(static_cast<std::int64_t>(rng() % 5) + 1, 2);
    std::vector<std::vector<std::string>> actions;
    std::vector<std::vector<Rational>> payoffs;
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      actions.push_back(g.actions(i));
      std::vector<Rational> u(g.num_profiles());
      for (std::size_t k = 0; k < g.num_profiles(); ++k) {
        // beta depends on the opponents' actions only.
        const ActionProfile a = g.ProfileAt(k).WithAction(i, 0);
        u[k] = alpha * g.Utility(i, k) + Rational(static_cast<std::int64_t>(g.ProfileIndex(a) % 7));
      }
      payoffs.push_back(std::move(u));
    }
    const Game h(g.players(), std::move(actions), std::move(payoffs));
    for (int k = 0; k < 10; ++k) {
      const MarginalProfile p = testing::RandomMarginals(rng, shape);
      EXPECT_EQ(TestCeCompatibility(g, p).index(), TestCeCompatibility(h, p).index());
    }
  }
}

TEST(TestCeCompatibilityTest, RelabelingMapsCertificates) {
  std::mt19937_64 rng(37);
  for (const Shape& shape : testing::CorpusShapes()) {
    const Game g = testing::RandomGame(rng, shape);
    const testing::Relabeling perm = testing::RandomRelabeling(rng, shape);
    const Game h = testing::RelabelGame(g, perm);
    for (int k = 0; k < 8; ++k) {
      const MarginalProfile p = testing::RandomMarginals(rng, shape);
      const MarginalProfile hp = testing::RelabelMarginals(p, perm);
      const CeVerdict v = TestCeCompatibility(g, p);
      ASSERT_EQ(v.index(), TestCeCompatibility(h, hp).index());
      if (const auto* c = std::get_if<CeCompatible>(&v)) {
        EXPECT_TRUE(VerifyWitness(h, hp, testing::RelabelJoint(g, c->witness, perm)));
      } else {
        const auto& e = std::get<CeExploitable>(v);
        ActionwiseScheme mapped{e.scheme.fees, testing::RelabelKernel(e.scheme.kernel, perm)};
        for (std::size_t i = 0; i < shape.size(); ++i) {
          for (std::size_t a = 0; a < shape[i]; ++a) mapped.fees[i][perm[i][a]] = e.scheme.fees[i][a];
        }
        const SchemeCheck check = VerifyActionwise(h, hp, mapped);
        ASSERT_TRUE(std::holds_alternative<SchemeAudit>(check));
        EXPECT_EQ(std::get<SchemeAudit>(check).expected_profit, e.expected_profit);
      }
    }
  }
}

}  // namespace
}  // namespace ceaudit
