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

#ifndef CEAUDIT_GAME_H_
#define CEAUDIT_GAME_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceaudit/rational.h"

namespace ceaudit {

// Number of actions of each player, in player order.
using Shape = std::vector<std::size_t>;

// One action index per player. Profiles are enumerated in row-major order:
// players in declaration order, the last player's action varying fastest.
class ActionProfile {
 public:
  ActionProfile() = default;
  explicit ActionProfile(std::vector<std::size_t> actions)
      : actions_(std::move(actions)) {}

  std::size_t operator[](std::size_t player) const { return actions_[player]; }
  std::size_t size() const { return actions_.size(); }
  std::span<const std::size_t> actions() const { return actions_; }

  // The profile (a'_i, a_{-i}).
  ActionProfile WithAction(std::size_t player, std::size_t action) const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::vector<std::size_t> actions_;
};

// Total number of action profiles for `shape`.
std::size_t NumProfiles(const Shape& shape);

// Finite normal-form game with exact rational payoffs. Immutable.
class Game {
 public:
  // `payoffs[i]` lists u_i over all profiles in row-major order. Throws
  // std::invalid_argument on empty action sets, duplicate labels, or a payoff
  // list whose length differs from the number of profiles.
  Game(std::vector<std::string> players,
       std::vector<std::vector<std::string>> actions,
       std::vector<std::vector<Rational>> payoffs);

  std::size_t num_players() const { return players_.size(); }
  std::size_t num_actions(std::size_t player) const;
  std::size_t num_profiles() const { return num_profiles_; }
  const Shape& shape() const { return shape_; }

  const std::string& player_name(std::size_t player) const;
  const std::string& action_name(std::size_t player, std::size_t action) const;
  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::string>& actions(std::size_t player) const;
  std::optional<std::size_t> FindPlayer(std::string_view name) const;
  std::optional<std::size_t> FindAction(std::size_t player,
                                        std::string_view label) const;

  // u_i(a). Throws std::out_of_range for an unknown player or action index.
  const Rational& Utility(std::size_t player, const ActionProfile& a) const;
  const Rational& Utility(std::size_t player, std::size_t profile_index) const;
  const std::vector<Rational>& payoffs(std::size_t player) const;

  std::size_t ProfileIndex(const ActionProfile& a) const;
  ActionProfile ProfileAt(std::size_t index) const;
  // Flat-index distance between profiles that differ by one action of
  // `player`.
  std::size_t Stride(std::size_t player) const { return strides_.at(player); }

  std::string ProfileLabel(const ActionProfile& a) const;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::vector<Rational>> payoffs_;
  Shape shape_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
};

// Per-player distributions over own actions (p_1, ..., p_n).
class MarginalProfile {
 public:
  MarginalProfile() = default;
  // Throws std::invalid_argument unless every entry is nonnegative and each
  // player's entries sum to exactly one.
  explicit MarginalProfile(std::vector<std::vector<Rational>> probabilities);

  std::size_t num_players() const { return probs_.size(); }
  const Rational& operator()(std::size_t player, std::size_t action) const {
    return probs_[player][action];
  }
  const std::vector<Rational>& player(std::size_t i) const { return probs_[i]; }
  const std::vector<std::vector<Rational>>& all() const { return probs_; }
  Shape shape() const;

  friend bool operator==(const MarginalProfile&, const MarginalProfile&) = default;

 private:
  std::vector<std::vector<Rational>> probs_;
};

// Distribution q over action profiles, stored in row-major order.
class JointDistribution {
 public:
  JointDistribution() = default;
  // Throws std::invalid_argument on length mismatch, negative entries, or a
  // total different from one.
  JointDistribution(Shape shape, std::vector<Rational> probabilities);

  static JointDistribution PointMass(const Shape& shape,
                                     const ActionProfile& profile);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t index) const { return probs_[index]; }
  const std::vector<Rational>& probabilities() const { return probs_; }

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  Shape shape_;
  std::vector<Rational> probs_;
};

// Row-stochastic recommendation kernels eta_i(a_i, .) for every player.
class DeviationKernel {
 public:
  using Matrix = std::vector<std::vector<Rational>>;

  DeviationKernel() = default;
  // Throws std::invalid_argument unless every matrix is square, nonnegative,
  // and each row sums to exactly one.
  explicit DeviationKernel(std::vector<Matrix> rows);

  static DeviationKernel Identity(const Shape& shape);

  std::size_t num_players() const { return rows_.size(); }
  const Rational& operator()(std::size_t player, std::size_t from,
                             std::size_t to) const {
    return rows_[player][from][to];
  }
  const Matrix& player(std::size_t i) const { return rows_[i]; }
  Shape shape() const;

  friend bool operator==(const DeviationKernel&, const DeviationKernel&) = default;

 private:
  std::vector<Matrix> rows_;
};

// Shape checks. Each throws std::invalid_argument on mismatch.
void RequireSameShape(const Game& game, const MarginalProfile& p);
void RequireSameShape(const Game& game, const JointDistribution& q);
void RequireSameShape(const Game& game, const DeviationKernel& eta);

// marg_{A_i} q.
std::vector<Rational> MarginalOf(const JointDistribution& q, std::size_t player);

// All marginals of q.
MarginalProfile MarginalsOf(const JointDistribution& q);

// q(a) = prod_i p_i(a_i).
JointDistribution ProductDistribution(const MarginalProfile& p);

// Aggregate gain when every player unilaterally follows eta at profile a:
//   S(a) = sum_i sum_b eta_i(a_i, b) u_i(b, a_{-i}) - sum_i u_i(a).
Rational Surplus(const Game& game, const DeviationKernel& eta,
                 const ActionProfile& a);

// S over all profiles, row-major.
std::vector<Rational> SurplusTable(const Game& game, const DeviationKernel& eta);

}  // namespace ceaudit

#endif  // CEAUDIT_GAME_H_
