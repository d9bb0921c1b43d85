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

#ifndef CEAUDIT_IO_H_
#define CEAUDIT_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/game.h"
#include "ceaudit/nash_analysis.h"

// JSON documents for games, marginals, kernels, schemes and verdicts, plus
// CSV play logs.
//
// Rationals are written as "n" or "n/d" strings. On input, payoffs and
// probabilities may also be JSON numbers or decimal strings; both are read
// exactly. Profiles are always listed in row-major order (players in
// declaration order, the last player's action varying fastest). Output is
// indented with two spaces, keys in a fixed order, and ends with a newline.

namespace ceaudit {

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {"players": [...], "actions": {player: [labels]},
//  "payoffs": {player: [row-major values]}}
Game ParseGame(std::string_view text);
std::string EmitGame(const Game& game);

// {"marginals": {player: {action: probability}}}; omitted actions are 0.
MarginalProfile ParseMarginals(const Game& game, std::string_view text);
std::string EmitMarginals(const Game& game, const MarginalProfile& p);

// {"kernel": {player: {from: {to: weight}}}}. Omitted players and rows are
// identity rows, omitted entries are 0. Rows must sum to one.
DeviationKernel ParseKernel(const Game& game, std::string_view text);
std::string EmitKernel(const Game& game, const DeviationKernel& eta);

using Scheme = std::variant<ActionwiseScheme, ProfilewiseScheme>;
using Certificate = std::variant<JointDistribution, ActionwiseScheme, ProfilewiseScheme>;

// {"type": "actionwise", "fees": {player: {action: fee}}, "kernel": {...}}
// {"type": "profilewise", "fees": [{"profile": [...], "fee": f}], "kernel": {...}}
std::string EmitScheme(const Game& game, const Scheme& scheme);
Scheme ParseScheme(const Game& game, std::string_view text);

// {"type": "witness", "distribution": [{"profile": [...], "probability": q}]}
std::string EmitWitness(const Game& game, const JointDistribution& q);

// Accepts a bare scheme or witness document, or a verdict document carrying
// one.
Certificate ParseCertificate(const Game& game, std::string_view text);

std::string EmitCeVerdict(const Game& game, const CeVerdict& verdict);
CeVerdict ParseCeVerdict(const Game& game, std::string_view text);
std::string EmitNashVerdict(const Game& game, const NashVerdict& verdict);
NashVerdict ParseNashVerdict(const Game& game, std::string_view text);

// {"surplus": [{"profile": [...], "value": s}]}
std::string EmitSurplusTable(const Game& game, const std::vector<Rational>& table);

// Independent per-player action histories; sequences may differ in length.
struct PlayLog {
  std::vector<std::vector<std::string>> sequences;  // indexed by player
};

// CSV with one column per player and a header row of player names. Columns
// may appear in any order; empty cells are skipped.
PlayLog ParsePlayLog(const Game& game, std::string_view csv);

// p_i(a) = count_i(a) / length_i. Throws FormatError on an empty history or
// an unknown label.
MarginalProfile EmpiricalMarginals(const Game& game, const PlayLog& log);

}  // namespace ceaudit

#endif  // CEAUDIT_IO_H_
