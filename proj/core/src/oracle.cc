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

#include "ceaudit/oracle.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ceaudit/certificates.h"

namespace ceaudit {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Advances a mixed-radix counter; returns false after the last value.
bool Advance(std::vector<std::size_t>& digits,
             const std::vector<std::size_t>& radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

std::vector<std::size_t> Support(const std::vector<Rational>& probs) {
  std::vector<std::size_t> support;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a].Sign() > 0) support.push_back(a);
  }
  return support;
}

// Dense maximization tableau with Bland's rule, started from a feasible
// basis. Kept separate from the feasibility engine on purpose: it is the
// ground truth the engine is tested against.
class BlandMaximizer {
 public:
  BlandMaximizer(std::vector<std::vector<Rational>> cells, std::vector<Rational> rhs,
                 std::vector<std::size_t> basis)
      : cells_(std::move(cells)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  // Maximizes objective . z over columns not in `excluded`.
  void Maximize(const std::vector<Rational>& objective,
                const std::vector<bool>& excluded) {
    const std::size_t width = objective.size();
    std::vector<Rational> reduced = objective;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rational& cb = objective[basis_[r]];
      if (cb.IsZero()) continue;
      for (std::size_t j = 0; j < width; ++j) reduced[j] -= cb * cells_[r][j];
    }
    while (true) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < width; ++j) {
        if (!excluded[j] && reduced[j].Sign() > 0) {
          entering = j;
          break;
        }
      }
      if (entering == kNone) return;
      std::size_t leaving = kNone;
      Rational best;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (cells_[r][entering].Sign() <= 0) continue;
        Rational ratio = rhs_[r] / cells_[r][entering];
        if (leaving == kNone || ratio < best ||
            (ratio == best && basis_[r] < basis_[leaving])) {
          leaving = r;
          best = std::move(ratio);
        }
      }
      if (leaving == kNone) throw std::logic_error("objective unbounded on a polytope");
      Pivot(leaving, entering, reduced);
    }
  }

  std::vector<Rational> Values(std::size_t width) const {
    std::vector<Rational> z(width);
    for (std::size_t r = 0; r < basis_.size(); ++r) z[basis_[r]] = rhs_[r];
    return z;
  }

  // Replaces a basic column sitting at level zero by any other column with a
  // nonzero entry in its row.
  void EvictFromBasis(std::size_t column, const std::vector<bool>& excluded) {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (basis_[r] != column) continue;
      for (std::size_t j = 0; j < cells_[r].size(); ++j) {
        if (!excluded[j] && !cells_[r][j].IsZero()) {
          std::vector<Rational> unused(cells_[r].size());
          Pivot(r, j, unused);
          return;
        }
      }
    }
  }

 private:
  void Pivot(std::size_t row, std::size_t col, std::vector<Rational>& reduced) {
    const Rational pivot = cells_[row][col];
    for (Rational& c : cells_[row]) {
      if (!c.IsZero()) c /= pivot;
    }
    rhs_[row] /= pivot;
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      if (r == row || cells_[r][col].IsZero()) continue;
      const Rational factor = cells_[r][col];
      for (std::size_t j = 0; j < cells_[r].size(); ++j) {
        if (!cells_[row][j].IsZero()) cells_[r][j] -= factor * cells_[row][j];
      }
      rhs_[r] -= factor * rhs_[row];
    }
    const Rational factor = reduced[col];
    if (!factor.IsZero()) {
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (!cells_[row][j].IsZero()) reduced[j] -= factor * cells_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

// Rows of length n with entries in multiples of 1/resolution summing to one.
std::vector<std::vector<Rational>> GridDistributions(std::size_t n,
                                                     std::size_t resolution) {
  std::vector<std::vector<Rational>> out;
  std::vector<std::size_t> counts(n, 0);
  const auto step = static_cast<std::int64_t>(resolution);
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == n) {
      counts[pos] = left;
      std::vector<Rational> row;
      for (std::size_t c : counts) row.emplace_back(static_cast<std::int64_t>(c), step);
      out.push_back(std::move(row));
      return;
    }
    for (std::size_t c = left + 1; c-- > 0;) {
      counts[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  recurse(recurse, 0, resolution);
  return out;
}

}  // namespace

std::size_t CouplingDimension(const MarginalProfile& p) {
  if (p.num_players() != 2) throw std::invalid_argument("coupling scan needs two players");
  return (Support(p.player(0)).size() - 1) * (Support(p.player(1)).size() - 1);
}

std::optional<JointDistribution> CouplingScan2x2(const Game& game,
                                                 const MarginalProfile& p,
                                                 std::size_t resolution) {
  RequireSameShape(game, p);
  if (game.num_players() != 2) throw std::invalid_argument("coupling scan needs two players");
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  if (CouplingDimension(p) > 2) {
    throw std::invalid_argument("coupling polytope has more than two free parameters");
  }
  const std::vector<std::size_t> rows = Support(p.player(0));
  const std::vector<std::size_t> cols = Support(p.player(1));
  const std::size_t k1 = rows.size();
  const std::size_t k2 = cols.size();

  // Free cells: the leading (k1-1) x (k2-1) block of the support.
  std::vector<std::pair<std::size_t, std::size_t>> free_cells;
  std::vector<std::size_t> radix;
  const auto res = static_cast<std::int64_t>(resolution);
  for (std::size_t r = 0; r + 1 < k1; ++r) {
    for (std::size_t c = 0; c + 1 < k2; ++c) {
      free_cells.emplace_back(r, c);
      const Rational cap = std::min(p(0, rows[r]), p(1, cols[c]));
      // Largest j with j/resolution <= cap.
      std::size_t top = 0;
      while (top < resolution && Rational(static_cast<std::int64_t>(top + 1), res) <= cap) ++top;
      radix.push_back(top + 1);
    }
  }

  std::vector<std::size_t> digits(free_cells.size(), 0);
  do {
    std::vector<std::vector<Rational>> block(k1, std::vector<Rational>(k2));
    for (std::size_t f = 0; f < free_cells.size(); ++f) {
      block[free_cells[f].first][free_cells[f].second] =
          Rational(static_cast<std::int64_t>(digits[f]), res);
    }
    bool nonnegative = true;
    for (std::size_t r = 0; r + 1 < k1 && nonnegative; ++r) {
      Rational rest = p(0, rows[r]);
      for (std::size_t c = 0; c + 1 < k2; ++c) rest -= block[r][c];
      nonnegative = rest.Sign() >= 0;
      block[r][k2 - 1] = std::move(rest);
    }
    for (std::size_t c = 0; c < k2 && nonnegative; ++c) {
      Rational rest = p(1, cols[c]);
      for (std::size_t r = 0; r + 1 < k1; ++r) rest -= block[r][c];
      nonnegative = rest.Sign() >= 0;
      block[k1 - 1][c] = std::move(rest);
    }
    if (!nonnegative) continue;

    std::vector<Rational> probs(game.num_profiles());
    for (std::size_t r = 0; r < k1; ++r) {
      for (std::size_t c = 0; c < k2; ++c) {
        probs[game.ProfileIndex(ActionProfile({rows[r], cols[c]}))] = block[r][c];
      }
    }
    JointDistribution q(game.shape(), std::move(probs));
    if (VerifyWitness(game, p, q)) return q;
  } while (Advance(digits, radix));
  return std::nullopt;
}

JointDistribution RandomCe(const Game& game, std::uint64_t seed) {
  const std::size_t num_profiles = game.num_profiles();
  const std::vector<IncentiveRowKey> keys = IncentiveRowKeys(game.shape());
  const std::size_t num_rows = keys.size() + 1;
  // Columns: q (num_profiles), one slack per incentive row, one artificial.
  const std::size_t slack0 = num_profiles;
  const std::size_t artificial = num_profiles + keys.size();
  const std::size_t width = artificial + 1;

  std::vector<std::vector<Rational>> cells(num_rows, std::vector<Rational>(width));
  std::vector<Rational> rhs(num_rows);
  std::vector<std::size_t> basis(num_rows);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    // sum q(a_i, .) [u_i(b, .) - u_i(a_i, .)] + s_k = 0
    const IncentiveRowKey& key = keys[k];
    const std::size_t stride = game.Stride(key.player);
    for (std::size_t index = 0; index < num_profiles; ++index) {
      const std::size_t a = (index / stride) % game.num_actions(key.player);
      if (a != key.recommended) continue;
      cells[k][index] =
          game.Utility(key.player, index + key.alternative * stride - a * stride) -
          game.Utility(key.player, index);
    }
    cells[k][slack0 + k] = 1;
    basis[k] = slack0 + k;
  }
  for (std::size_t index = 0; index < num_profiles; ++index) cells.back()[index] = 1;
  cells.back()[artificial] = 1;
  rhs.back() = 1;
  basis.back() = artificial;

  BlandMaximizer tableau(std::move(cells), std::move(rhs), std::move(basis));
  std::vector<bool> excluded(width, false);

  std::vector<Rational> phase_one(width);
  phase_one[artificial] = -1;
  tableau.Maximize(phase_one, excluded);
  if (!tableau.Values(width)[artificial].IsZero()) {
    throw std::logic_error("correlated equilibrium polytope is empty");
  }
  excluded[artificial] = true;
  tableau.EvictFromBasis(artificial, excluded);

  std::mt19937_64 rng(seed);
  std::vector<Rational> objective(width);
  for (std::size_t index = 0; index < num_profiles; ++index) {
    objective[index] = static_cast<std::int64_t>(rng() % 41) - 20;
  }
  tableau.Maximize(objective, excluded);

  std::vector<Rational> z = tableau.Values(width);
  z.resize(num_profiles);
  JointDistribution q(game.shape(), std::move(z));
  if (!IsCorrelatedEquilibrium(game, q)) {
    throw std::logic_error("sampled vertex is not a correlated equilibrium");
  }
  return q;
}

std::optional<SchemeSearchResult> ExhaustiveSchemeSearch(
    const Game& game, const MarginalProfile& p, std::span<const Rational> fee_grid,
    std::size_t kernel_resolution) {
  RequireSameShape(game, p);
  if (fee_grid.empty()) throw std::invalid_argument("fee grid is empty");
  if (kernel_resolution == 0) throw std::invalid_argument("kernel resolution must be positive");
  std::vector<Rational> grid(fee_grid.begin(), fee_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const std::size_t n = game.num_players();
  const std::size_t num_profiles = game.num_profiles();
  const std::size_t last = n - 1;

  // options[i]: candidate kernel rows for player i.
  // gain[i][a][o][index]: player i's deviation gain at `index` under row o
  // applied to recommendation a (only meaningful where a_i == a).
  std::vector<std::vector<std::vector<Rational>>> options(n);
  std::vector<std::vector<std::vector<std::vector<Rational>>>> gain(n);
  std::vector<std::pair<std::size_t, std::size_t>> kernel_slots;
  std::vector<std::size_t> kernel_radix;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = game.num_actions(i);
    const std::size_t stride = game.Stride(i);
    options[i] = GridDistributions(ni, kernel_resolution);
    gain[i].assign(ni, std::vector<std::vector<Rational>>(
                           options[i].size(), std::vector<Rational>(num_profiles)));
    for (std::size_t index = 0; index < num_profiles; ++index) {
      const std::size_t a = (index / stride) % ni;
      const std::size_t row_start = index - a * stride;
      for (std::size_t o = 0; o < options[i].size(); ++o) {
        Rational g;
        for (std::size_t b = 0; b < ni; ++b) {
          if (options[i][o][b].IsZero()) continue;
          g += options[i][o][b] *
               (game.Utility(i, row_start + b * stride) - game.Utility(i, index));
        }
        gain[i][a][o][index] = std::move(g);
      }
    }
    for (std::size_t a = 0; a < ni; ++a) {
      kernel_slots.emplace_back(i, a);
      kernel_radix.push_back(options[i].size());
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> fee_slots;
  for (std::size_t i = 0; i < last; ++i) {
    for (std::size_t a = 0; a < game.num_actions(i); ++a) fee_slots.emplace_back(i, a);
  }
  const std::vector<std::size_t> fee_radix(fee_slots.size(), grid.size());

  std::optional<Rational> best_profit;
  std::vector<std::size_t> best_kernel;
  std::vector<std::vector<Rational>> best_fees;

  std::vector<std::size_t> kernel_digits(kernel_slots.size(), 0);
  do {
    std::vector<Rational> surplus(num_profiles);
    for (std::size_t index = 0; index < num_profiles; ++index) {
      const ActionProfile a = game.ProfileAt(index);
      for (std::size_t s = 0; s < kernel_slots.size(); ++s) {
        const auto [i, action] = kernel_slots[s];
        if (a[i] == action) surplus[index] += gain[i][action][kernel_digits[s]][index];
      }
    }

    std::vector<std::size_t> fee_digits(fee_slots.size(), 0);
    do {
      std::vector<std::vector<Rational>> fees(n);
      for (std::size_t i = 0; i < n; ++i) fees[i].resize(game.num_actions(i));
      Rational profit;
      for (std::size_t s = 0; s < fee_slots.size(); ++s) {
        const auto [i, a] = fee_slots[s];
        fees[i][a] = grid[fee_digits[s]];
        profit += p(i, a) * fees[i][a];
      }
      // The last player's fee for each action is the largest grid value
      // the surplus still covers; profit is monotone in it.
      std::vector<std::optional<Rational>> bound(game.num_actions(last));
      for (std::size_t index = 0; index < num_profiles; ++index) {
        const ActionProfile a = game.ProfileAt(index);
        Rational slack = surplus[index];
        for (std::size_t i = 0; i < last; ++i) slack -= fees[i][a[i]];
        auto& b = bound[a[last]];
        if (!b || slack < *b) b = std::move(slack);
      }
      bool feasible = true;
      for (std::size_t x = 0; x < bound.size() && feasible; ++x) {
        auto it = std::upper_bound(grid.begin(), grid.end(), *bound[x]);
        if (it == grid.begin()) {
          feasible = false;
        } else {
          fees[last][x] = *std::prev(it);
          profit += p(last, x) * fees[last][x];
        }
      }
      if (feasible && profit.Sign() > 0 && (!best_profit || profit > *best_profit)) {
        best_profit = profit;
        best_kernel = kernel_digits;
        best_fees = fees;
      }
    } while (Advance(fee_digits, fee_radix));
  } while (Advance(kernel_digits, kernel_radix));

  if (!best_profit) return std::nullopt;

  std::vector<DeviationKernel::Matrix> rows(n);
  for (std::size_t s = 0; s < kernel_slots.size(); ++s) {
    const auto [i, a] = kernel_slots[s];
    rows[i].resize(game.num_actions(i));
    rows[i][a] = options[i][best_kernel[s]];
  }
  ActionwiseScheme scheme{std::move(best_fees), DeviationKernel(std::move(rows))};
  const SchemeCheck check = VerifyActionwise(game, p, scheme);
  const auto* audit = std::get_if<SchemeAudit>(&check);
  if (audit == nullptr || audit->expected_profit != *best_profit) {
    throw std::logic_error("grid search produced an inconsistent scheme");
  }
  return SchemeSearchResult{*best_profit, std::move(scheme)};
}

}  // namespace ceaudit
