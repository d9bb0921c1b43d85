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

#ifndef CEAUDIT_LP_H_
#define CEAUDIT_LP_H_

#include <cstddef>
#include <variant>
#include <vector>

#include "ceaudit/rational.h"

namespace ceaudit {

enum class RowSense { kGreaterEqual, kEqual };

// coefficients . x  (>= | =)  rhs
struct LinearRow {
  std::vector<Rational> coefficients;
  RowSense sense = RowSense::kGreaterEqual;
  Rational rhs;
};

// A finite system of linear rows over `num_variables` unknowns, some of which
// are sign-constrained to be nonnegative.
class LinearSystem {
 public:
  // All variables start out nonnegative.
  explicit LinearSystem(std::size_t num_variables)
      : num_variables_(num_variables), nonnegative_(num_variables, true) {}

  // Throws std::invalid_argument if the row length differs from the variable
  // count.
  void AddRow(LinearRow row);
  void AddRow(std::vector<Rational> coefficients, RowSense sense, Rational rhs);
  void SetFree(std::size_t variable) { nonnegative_.at(variable) = false; }

  std::size_t num_variables() const { return num_variables_; }
  std::size_t num_rows() const { return rows_.size(); }
  const LinearRow& row(std::size_t r) const { return rows_[r]; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  bool is_nonnegative(std::size_t variable) const { return nonnegative_[variable]; }
  std::size_t CountNonnegative() const;

 private:
  std::size_t num_variables_;
  std::vector<bool> nonnegative_;
  std::vector<LinearRow> rows_;
};

struct FeasiblePoint {
  std::vector<Rational> x;
};

// One multiplier y_r per row: y_r >= 0 on inequality rows, free on equality
// rows, with y.A <= 0 on nonnegative variables, y.A = 0 on free variables and
// y.b > 0. No x can then satisfy the system.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

using FeasibilityOutcome = std::variant<FeasiblePoint, FarkasCertificate>;

// Phase-I simplex over exact rationals with Bland's rule. Returns a feasible
// point or, when the artificial objective stays positive, the optimal dual of
// the auxiliary problem as a Farkas certificate. Throws std::invalid_argument
// on a malformed system.
FeasibilityOutcome SolveFeasibility(const LinearSystem& system);

// Exact check of either arm.
bool VerifyOutcome(const LinearSystem& system, const FeasibilityOutcome& outcome);
bool VerifyPoint(const LinearSystem& system, const std::vector<Rational>& x);
bool VerifyFarkas(const LinearSystem& system,
                  const std::vector<Rational>& multipliers);

}  // namespace ceaudit

#endif  // CEAUDIT_LP_H_
