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

#include "ceaudit/lp.h"

#include <stdexcept>
#include <utility>

#include <gmpxx.h>

namespace ceaudit {
namespace {

// Dense tableau for  min sum(artificials)  s.t.  A' z + I art = b',  b' >= 0,
// kept fraction-free: every row is first scaled to integers, and the cell
// values are cells_ / denominator_. Pivots use exact integer division
// (Bareiss), so no gcd is ever taken.
class PhaseOneTableau {
 public:
  explicit PhaseOneTableau(const LinearSystem& system) {
    const std::size_t m = system.num_rows();
    const std::size_t n = system.num_variables();

    // Structural columns: x+ for every variable, x- for free ones, then one
    // surplus column per inequality row.
    for (std::size_t j = 0; j < n; ++j) {
      positive_column_.push_back(num_structural_++);
      negative_column_.push_back(system.is_nonnegative(j) ? kNone
                                                          : num_structural_++);
    }
    std::vector<std::size_t> surplus_column(m, kNone);
    for (std::size_t r = 0; r < m; ++r) {
      if (system.row(r).sense == RowSense::kGreaterEqual) {
        surplus_column[r] = num_structural_++;
      }
    }
    width_ = num_structural_ + m;

    cells_.assign(m + 1, std::vector<mpz_class>(width_ + 1));
    row_scale_.resize(m);
    basis_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      const LinearRow& row = system.row(r);
      // A positive multiple of the row with integer coefficients; negated
      // when the rhs is negative.
      mpz_class scale = row.rhs.value().get_den();
      for (const Rational& c : row.coefficients) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.value().get_den_mpz_t());
      }
      if (row.rhs.Sign() < 0) scale = -scale;
      row_scale_[r] = scale;

      std::vector<mpz_class>& cells = cells_[r];
      for (std::size_t j = 0; j < n; ++j) {
        if (row.coefficients[j].IsZero()) continue;
        const mpq_class& c = row.coefficients[j].value();
        const mpz_class v = scale / c.get_den() * c.get_num();
        cells[positive_column_[j]] = v;
        if (negative_column_[j] != kNone) cells[negative_column_[j]] = -v;
      }
      if (surplus_column[r] != kNone) cells[surplus_column[r]] = -sgn(scale);
      cells[num_structural_ + r] = 1;
      cells[width_] = scale / row.rhs.value().get_den() * row.rhs.value().get_num();
      basis_[r] = num_structural_ + r;
    }

    // Objective row: reduced costs of min sum(art), rhs cell = -objective.
    std::vector<mpz_class>& cost = cells_[m];
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < num_structural_; ++j) cost[j] -= cells_[r][j];
      cost[width_] -= cells_[r][width_];
    }
  }

  void Run() {
    while (true) {
      const std::size_t entering = EnteringColumn();
      if (entering == kNone) return;
      const std::size_t leaving = LeavingRow(entering);
      // The auxiliary objective is bounded below by zero, so some row
      // always limits the step.
      if (leaving == kNone) throw std::logic_error("phase-one problem unbounded");
      Pivot(leaving, entering);
    }
  }

  Rational Objective() const {
    mpz_class w;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (IsArtificial(basis_[r])) w += cells_[r][width_];
    }
    return Value(w);
  }

  std::vector<Rational> Point() const {
    std::vector<mpz_class> z(width_);
    for (std::size_t r = 0; r < basis_.size(); ++r) z[basis_[r]] = cells_[r][width_];
    std::vector<Rational> x;
    for (std::size_t j = 0; j < positive_column_.size(); ++j) {
      mpz_class v = z[positive_column_[j]];
      if (negative_column_[j] != kNone) v -= z[negative_column_[j]];
      x.push_back(Value(v));
    }
    return x;
  }

  // pi = c_B B^{-1}, read off the artificial columns (which started as the
  // identity), then carried back through the row scaling.
  std::vector<Rational> Duals() const {
    const std::size_t m = basis_.size();
    std::vector<mpz_class> sum(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (!IsArtificial(basis_[k])) continue;
      for (std::size_t r = 0; r < m; ++r) sum[r] += cells_[k][num_structural_ + r];
    }
    std::vector<Rational> y;
    for (std::size_t r = 0; r < m; ++r) y.push_back(Value(sum[r] * row_scale_[r]));
    return y;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool IsArtificial(std::size_t column) const { return column >= num_structural_; }

  Rational Value(const mpz_class& numerator) const {
    return Rational(mpq_class(numerator, denominator_));
  }

  // Bland: lowest-index structural column with negative reduced cost.
  // Artificial columns never re-enter.
  std::size_t EnteringColumn() const {
    const std::vector<mpz_class>& cost = cells_.back();
    for (std::size_t j = 0; j < num_structural_; ++j) {
      if (sgn(cost[j]) < 0) return j;
    }
    return kNone;
  }

  // Minimum ratio; ties broken by lowest basic variable index. The common
  // denominator cancels, so ratios compare as rhs_r / a_r by
  // cross-multiplication.
  std::size_t LeavingRow(std::size_t entering) const {
    std::size_t best = kNone;
    mpz_class lhs;
    mpz_class rhs;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const mpz_class& a = cells_[r][entering];
      if (sgn(a) <= 0) continue;
      int c = -1;
      if (best != kNone) {
        lhs = cells_[r][width_] * cells_[best][entering];
        rhs = cells_[best][width_] * a;
        c = cmp(lhs, rhs);
      }
      if (c < 0 || (c == 0 && basis_[r] < basis_[best])) best = r;
    }
    return best;
  }

  // Bareiss step: every other row becomes
  //   (pivot * row - row[col] * pivot_row) / previous denominator,
  // which divides exactly. The pivot row itself is unchanged.
  void Pivot(std::size_t pivot_row, std::size_t pivot_col) {
    const std::vector<mpz_class>& prow = cells_[pivot_row];
    const mpz_class pivot = prow[pivot_col];
    mpz_class factor;
    mpz_class product;
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      if (r == pivot_row) continue;
      std::vector<mpz_class>& row = cells_[r];
      factor = row[pivot_col];
      for (std::size_t j = 0; j <= width_; ++j) {
        const mpz_ptr cell = row[j].get_mpz_t();
        mpz_mul(cell, cell, pivot.get_mpz_t());
        if (sgn(factor) != 0 && sgn(prow[j]) != 0) {
          mpz_mul(product.get_mpz_t(), factor.get_mpz_t(), prow[j].get_mpz_t());
          mpz_sub(cell, cell, product.get_mpz_t());
        }
        mpz_divexact(cell, cell, denominator_.get_mpz_t());
      }
    }
    denominator_ = pivot;
    basis_[pivot_row] = pivot_col;
  }

  std::vector<std::size_t> positive_column_;
  std::vector<std::size_t> negative_column_;
  std::size_t num_structural_ = 0;
  std::size_t width_ = 0;  // the rhs lives in column width_
  // m constraint rows followed by the objective row.
  std::vector<std::vector<mpz_class>> cells_;
  mpz_class denominator_ = 1;
  std::vector<mpz_class> row_scale_;
  std::vector<std::size_t> basis_;
};

}  // namespace

void LinearSystem::AddRow(LinearRow row) {
  if (row.coefficients.size() != num_variables_) {
    throw std::invalid_argument("row has " +
                                std::to_string(row.coefficients.size()) +
                                " coefficients, system has " +
                                std::to_string(num_variables_) + " variables");
  }
  rows_.push_back(std::move(row));
}

void LinearSystem::AddRow(std::vector<Rational> coefficients, RowSense sense,
                          Rational rhs) {
  AddRow(LinearRow{std::move(coefficients), sense, std::move(rhs)});
}

std::size_t LinearSystem::CountNonnegative() const {
  std::size_t count = 0;
  for (bool b : nonnegative_) count += b ? 1 : 0;
  return count;
}

FeasibilityOutcome SolveFeasibility(const LinearSystem& system) {
  for (const LinearRow& row : system.rows()) {
    if (row.coefficients.size() != system.num_variables()) {
      throw std::invalid_argument("row length does not match variable count");
    }
  }
  PhaseOneTableau tableau(system);
  tableau.Run();
  if (tableau.Objective().Sign() > 0) {
    return FarkasCertificate{tableau.Duals()};
  }
  return FeasiblePoint{tableau.Point()};
}

bool VerifyPoint(const LinearSystem& system, const std::vector<Rational>& x) {
  if (x.size() != system.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (system.is_nonnegative(j) && x[j].Sign() < 0) return false;
  }
  for (const LinearRow& row : system.rows()) {
    Rational lhs;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!row.coefficients[j].IsZero()) lhs += row.coefficients[j] * x[j];
    }
    if (row.sense == RowSense::kEqual ? lhs != row.rhs : lhs < row.rhs) {
      return false;
    }
  }
  return true;
}

bool VerifyFarkas(const LinearSystem& system,
                  const std::vector<Rational>& multipliers) {
  if (multipliers.size() != system.num_rows()) return false;
  std::vector<Rational> combined(system.num_variables());
  Rational combined_rhs;
  for (std::size_t r = 0; r < system.num_rows(); ++r) {
    const LinearRow& row = system.row(r);
    const Rational& y = multipliers[r];
    if (row.sense == RowSense::kGreaterEqual && y.Sign() < 0) return false;
    if (y.IsZero()) continue;
    for (std::size_t j = 0; j < combined.size(); ++j) {
      if (!row.coefficients[j].IsZero()) combined[j] += y * row.coefficients[j];
    }
    combined_rhs += y * row.rhs;
  }
  for (std::size_t j = 0; j < combined.size(); ++j) {
    if (system.is_nonnegative(j) ? combined[j].Sign() > 0
                                 : !combined[j].IsZero()) {
      return false;
    }
  }
  return combined_rhs.Sign() > 0;
}

bool VerifyOutcome(const LinearSystem& system,
                   const FeasibilityOutcome& outcome) {
  if (const auto* point = std::get_if<FeasiblePoint>(&outcome)) {
    return VerifyPoint(system, point->x);
  }
  return VerifyFarkas(system, std::get<FarkasCertificate>(outcome).multipliers);
}

}  // namespace ceaudit
