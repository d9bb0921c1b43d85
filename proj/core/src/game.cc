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

#include "ceaudit/game.h"

#include <set>
#include <stdexcept>
#include <utility>

namespace ceaudit {
namespace {

void CheckDistribution(const std::vector<Rational>& probs,
                       const std::string& what) {
  Rational total;
  for (const Rational& x : probs) {
    if (x.Sign() < 0) throw std::invalid_argument(what + " has a negative entry");
    total += x;
  }
  if (total != 1) {
    throw std::invalid_argument(what + " sums to " + total.ToString() +
                                ", expected 1");
  }
}

}  // namespace

ActionProfile ActionProfile::WithAction(std::size_t player,
                                        std::size_t action) const {
  ActionProfile result = *this;
  result.actions_.at(player) = action;
  return result;
}

std::size_t NumProfiles(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t k : shape) n *= k;
  return n;
}

Game::Game(std::vector<std::string> players,
           std::vector<std::vector<std::string>> actions,
           std::vector<std::vector<Rational>> payoffs)
    : players_(std::move(players)),
      actions_(std::move(actions)),
      payoffs_(std::move(payoffs)) {
  if (players_.empty()) throw std::invalid_argument("game has no players");
  if (actions_.size() != players_.size() || payoffs_.size() != players_.size()) {
    throw std::invalid_argument("player count mismatch between players, actions and payoffs");
  }
  std::set<std::string> seen_players;
  for (const std::string& name : players_) {
    if (!seen_players.insert(name).second) {
      throw std::invalid_argument("duplicate player '" + name + "'");
    }
  }
  shape_.reserve(players_.size());
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (actions_[i].empty()) {
      throw std::invalid_argument("player '" + players_[i] + "' has no actions");
    }
    std::set<std::string> seen;
    for (const std::string& label : actions_[i]) {
      if (!seen.insert(label).second) {
        throw std::invalid_argument("duplicate action '" + label +
                                    "' for player '" + players_[i] + "'");
      }
    }
    shape_.push_back(actions_[i].size());
  }
  num_profiles_ = NumProfiles(shape_);
  strides_.assign(shape_.size(), 1);
  for (std::size_t i = shape_.size(); i-- > 1;) {
    strides_[i - 1] = strides_[i] * shape_[i];
  }
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (payoffs_[i].size() != num_profiles_) {
      throw std::invalid_argument(
          "payoff list for player '" + players_[i] + "' has " +
          std::to_string(payoffs_[i].size()) + " entries, expected " +
          std::to_string(num_profiles_));
    }
  }
}

std::size_t Game::num_actions(std::size_t player) const {
  return shape_.at(player);
}

const std::string& Game::player_name(std::size_t player) const {
  return players_.at(player);
}

const std::string& Game::action_name(std::size_t player,
                                     std::size_t action) const {
  return actions_.at(player).at(action);
}

const std::vector<std::string>& Game::actions(std::size_t player) const {
  return actions_.at(player);
}

std::optional<std::size_t> Game::FindPlayer(std::string_view name) const {
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Game::FindAction(std::size_t player,
                                            std::string_view label) const {
  const auto& labels = actions_.at(player);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (labels[a] == label) return a;
  }
  return std::nullopt;
}

const Rational& Game::Utility(std::size_t player, const ActionProfile& a) const {
  if (player >= players_.size()) {
    throw std::out_of_range("unknown player index " + std::to_string(player));
  }
  return payoffs_[player][ProfileIndex(a)];
}

const Rational& Game::Utility(std::size_t player,
                              std::size_t profile_index) const {
  return payoffs_.at(player).at(profile_index);
}

const std::vector<Rational>& Game::payoffs(std::size_t player) const {
  return payoffs_.at(player);
}

std::size_t Game::ProfileIndex(const ActionProfile& a) const {
  if (a.size() != shape_.size()) {
    throw std::out_of_range("action profile has " + std::to_string(a.size()) +
                            " entries, game has " +
                            std::to_string(shape_.size()) + " players");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (a[i] >= shape_[i]) {
      throw std::out_of_range("action index " + std::to_string(a[i]) +
                              " out of range for player '" + players_[i] + "'");
    }
    index += a[i] * strides_[i];
  }
  return index;
}

ActionProfile Game::ProfileAt(std::size_t index) const {
  if (index >= num_profiles_) throw std::out_of_range("profile index out of range");
  std::vector<std::size_t> actions(shape_.size());
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    actions[i] = (index / strides_[i]) % shape_[i];
  }
  return ActionProfile(std::move(actions));
}

std::string Game::ProfileLabel(const ActionProfile& a) const {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ",";
    out += action_name(i, a[i]);
  }
  return out + ")";
}

MarginalProfile::MarginalProfile(std::vector<std::vector<Rational>> probabilities)
    : probs_(std::move(probabilities)) {
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i].empty()) {
      throw std::invalid_argument("marginal of player " + std::to_string(i) + " is empty");
    }
    CheckDistribution(probs_[i], "marginal of player " + std::to_string(i));
  }
}

Shape MarginalProfile::shape() const {
  Shape s;
  for (const auto& row : probs_) s.push_back(row.size());
  return s;
}

JointDistribution::JointDistribution(Shape shape,
                                     std::vector<Rational> probabilities)
    : shape_(std::move(shape)), probs_(std::move(probabilities)) {
  if (probs_.size() != NumProfiles(shape_)) {
    throw std::invalid_argument("joint distribution has " +
                                std::to_string(probs_.size()) +
                                " entries, expected " +
                                std::to_string(NumProfiles(shape_)));
  }
  CheckDistribution(probs_, "joint distribution");
}

JointDistribution JointDistribution::PointMass(const Shape& shape,
                                               const ActionProfile& profile) {
  std::vector<Rational> probs(NumProfiles(shape));
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t i = shape.size(); i-- > 0;) {
    if (profile[i] >= shape[i]) throw std::out_of_range("action index out of range");
    index += profile[i] * stride;
    stride *= shape[i];
  }
  probs[index] = 1;
  return JointDistribution(shape, std::move(probs));
}

DeviationKernel::DeviationKernel(std::vector<Matrix> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Matrix& m = rows_[i];
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (m[a].size() != m.size()) {
        throw std::invalid_argument("kernel of player " + std::to_string(i) +
                                    " is not square");
      }
      CheckDistribution(m[a], "kernel row " + std::to_string(a) +
                                  " of player " + std::to_string(i));
    }
  }
}

DeviationKernel DeviationKernel::Identity(const Shape& shape) {
  std::vector<Matrix> rows;
  for (std::size_t n : shape) {
    Matrix m(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a) m[a][a] = 1;
    rows.push_back(std::move(m));
  }
  return DeviationKernel(std::move(rows));
}

Shape DeviationKernel::shape() const {
  Shape s;
  for (const auto& m : rows_) s.push_back(m.size());
  return s;
}

void RequireSameShape(const Game& game, const MarginalProfile& p) {
  if (p.shape() != game.shape()) {
    throw std::invalid_argument("marginal profile shape does not match game");
  }
}

void RequireSameShape(const Game& game, const JointDistribution& q) {
  if (q.shape() != game.shape()) {
    throw std::invalid_argument("joint distribution shape does not match game");
  }
}

void RequireSameShape(const Game& game, const DeviationKernel& eta) {
  if (eta.shape() != game.shape()) {
    throw std::invalid_argument("deviation kernel shape does not match game");
  }
}

std::vector<Rational> MarginalOf(const JointDistribution& q,
                                 std::size_t player) {
  const Shape& shape = q.shape();
  if (player >= shape.size()) throw std::out_of_range("unknown player index");
  std::size_t stride = 1;
  for (std::size_t j = player + 1; j < shape.size(); ++j) stride *= shape[j];
  std::vector<Rational> marginal(shape[player]);
  for (std::size_t index = 0; index < q.size(); ++index) {
    marginal[(index / stride) % shape[player]] += q[index];
  }
  return marginal;
}

MarginalProfile MarginalsOf(const JointDistribution& q) {
  std::vector<std::vector<Rational>> probs;
  for (std::size_t i = 0; i < q.shape().size(); ++i) {
    probs.push_back(MarginalOf(q, i));
  }
  return MarginalProfile(std::move(probs));
}

JointDistribution ProductDistribution(const MarginalProfile& p) {
  const Shape shape = p.shape();
  std::vector<Rational> probs(NumProfiles(shape), Rational(1));
  std::size_t stride = probs.size();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    stride /= shape[i];
    for (std::size_t index = 0; index < probs.size(); ++index) {
      probs[index] *= p(i, (index / stride) % shape[i]);
    }
  }
  return JointDistribution(shape, std::move(probs));
}

Rational Surplus(const Game& game, const DeviationKernel& eta,
                 const ActionProfile& a) {
  RequireSameShape(game, eta);
  const std::size_t base = game.ProfileIndex(a);
  Rational total;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t stride = game.Stride(i);
    const std::size_t row_start = base - a[i] * stride;
    const Rational& current = game.Utility(i, base);
    for (std::size_t b = 0; b < game.num_actions(i); ++b) {
      const Rational& weight = eta(i, a[i], b);
      if (weight.IsZero()) continue;
      total += weight * (game.Utility(i, row_start + b * stride) - current);
    }
  }
  return total;
}

std::vector<Rational> SurplusTable(const Game& game,
                                   const DeviationKernel& eta) {
  std::vector<Rational> table;
  table.reserve(game.num_profiles());
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    table.push_back(Surplus(game, eta, game.ProfileAt(index)));
  }
  return table;
}

}  // namespace ceaudit
