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

#include "ceaudit/io.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace ceaudit {
namespace {

using Json = nlohmann::ordered_json;

// Forwards SAX events to the DOM builder but keeps floating-point literals
// as their source text, so "0.1" is read as exactly 1/10.
class ExactNumberSax {
 public:
  explicit ExactNumberSax(Json& root) : dom_(root, true) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(Json::number_integer_t v) { return dom_.number_integer(v); }
  bool number_unsigned(Json::number_unsigned_t v) { return dom_.number_unsigned(v); }
  bool number_float(Json::number_float_t, const Json::string_t& text) {
    Json::string_t copy = text;
    return dom_.string(copy);
  }
  bool string(Json::string_t& v) { return dom_.string(v); }
  bool binary(Json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(Json::string_t& v) { return dom_.key(v); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  bool parse_error(std::size_t position, const std::string& token,
                   const nlohmann::detail::exception& ex) {
    return dom_.parse_error(position, token, ex);
  }

 private:
  nlohmann::detail::json_sax_dom_parser<Json> dom_;
};

Json ParseDocument(std::string_view text) {
  Json root;
  ExactNumberSax sax(root);
  try {
    Json::sax_parse(text.begin(), text.end(), &sax);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw FormatError("document must be a JSON object");
  return root;
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

const Json& Field(const Json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

Rational ToRational(const Json& value, const std::string& context) {
  try {
    if (value.is_string()) return Rational::Parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational::Parse(value.dump());
  } catch (const std::invalid_argument& e) {
    throw FormatError(context + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw FormatError(context + ": " + e.what());
  }
  throw FormatError(context + ": expected a number or rational string");
}

Json FromRational(const Rational& r) { return r.ToString(); }

std::size_t PlayerIndex(const Game& game, const std::string& name) {
  if (auto i = game.FindPlayer(name)) return *i;
  throw FormatError("unknown player '" + name + "'");
}

std::size_t ActionIndex(const Game& game, std::size_t player, const std::string& label) {
  if (auto a = game.FindAction(player, label)) return *a;
  throw FormatError("unknown action '" + label + "' for player '" +
                    game.player_name(player) + "'");
}

Json ProfileJson(const Game& game, std::size_t index) {
  const ActionProfile a = game.ProfileAt(index);
  Json labels = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back(game.action_name(i, a[i]));
  return labels;
}

std::size_t ProfileFromJson(const Game& game, const Json& labels) {
  if (!labels.is_array() || labels.size() != game.num_players()) {
    throw FormatError("profile must list one action per player");
  }
  std::vector<std::size_t> actions;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) throw FormatError("profile entries must be action labels");
    actions.push_back(ActionIndex(game, i, labels[i].get<std::string>()));
  }
  return game.ProfileIndex(ActionProfile(std::move(actions)));
}

// Reads {player: {action: value}} into a dense per-player table; omitted
// entries keep `fill`.
std::vector<std::vector<Rational>> PerActionTable(const Game& game, const Json& obj,
                                                  const std::string& what,
                                                  const Rational& fill) {
  if (!obj.is_object()) throw FormatError(what + " must be an object keyed by player");
  std::vector<std::vector<Rational>> table;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    table.emplace_back(game.num_actions(i), fill);
  }
  for (const auto& [name, entries] : obj.items()) {
    const std::size_t i = PlayerIndex(game, name);
    if (!entries.is_object()) throw FormatError(what + " for '" + name + "' must be an object");
    for (const auto& [label, value] : entries.items()) {
      table[i][ActionIndex(game, i, label)] =
          ToRational(value, what + " " + name + "/" + label);
    }
  }
  return table;
}

Json PerActionJson(const Game& game, const std::vector<std::vector<Rational>>& table) {
  Json out = Json::object();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    Json entries = Json::object();
    for (std::size_t a = 0; a < game.num_actions(i); ++a) {
      entries[game.action_name(i, a)] = FromRational(table[i][a]);
    }
    out[game.player_name(i)] = std::move(entries);
  }
  return out;
}

DeviationKernel KernelFromJson(const Game& game, const Json& obj) {
  if (!obj.is_object()) throw FormatError("kernel must be an object keyed by player");
  std::vector<DeviationKernel::Matrix> rows;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const std::size_t n = game.num_actions(i);
    DeviationKernel::Matrix m(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a) m[a][a] = 1;
    rows.push_back(std::move(m));
  }
  for (const auto& [name, from_rows] : obj.items()) {
    const std::size_t i = PlayerIndex(game, name);
    if (!from_rows.is_object()) throw FormatError("kernel rows for '" + name + "' must be an object");
    for (const auto& [from_label, entries] : from_rows.items()) {
      const std::size_t from = ActionIndex(game, i, from_label);
      if (!entries.is_object()) throw FormatError("kernel row must be an object");
      std::vector<Rational> row(game.num_actions(i));
      for (const auto& [to_label, value] : entries.items()) {
        row[ActionIndex(game, i, to_label)] =
            ToRational(value, "kernel " + name + "/" + from_label + "/" + to_label);
      }
      Rational total;
      for (const Rational& x : row) {
        if (x.Sign() < 0) {
          throw FormatError("kernel row " + name + "/" + from_label + " has a negative entry");
        }
        total += x;
      }
      if (total != 1) {
        throw FormatError("kernel row " + name + "/" + from_label + " sums to " +
                          total.ToString() + ", expected 1");
      }
      rows[i][from] = std::move(row);
    }
  }
  return DeviationKernel(std::move(rows));
}

Json KernelJson(const Game& game, const DeviationKernel& eta) {
  Json out = Json::object();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    Json from_rows = Json::object();
    for (std::size_t a = 0; a < game.num_actions(i); ++a) {
      Json row = Json::object();
      for (std::size_t b = 0; b < game.num_actions(i); ++b) {
        row[game.action_name(i, b)] = FromRational(eta(i, a, b));
      }
      from_rows[game.action_name(i, a)] = std::move(row);
    }
    out[game.player_name(i)] = std::move(from_rows);
  }
  return out;
}

Json SchemeJson(const Game& game, const Scheme& scheme) {
  Json out = Json::object();
  if (const auto* s = std::get_if<ActionwiseScheme>(&scheme)) {
    RequireSameShape(game, s->kernel);
    out["type"] = "actionwise";
    out["fees"] = PerActionJson(game, s->fees);
    out["kernel"] = KernelJson(game, s->kernel);
  } else {
    const auto& ps = std::get<ProfilewiseScheme>(scheme);
    RequireSameShape(game, ps.kernel);
    out["type"] = "profilewise";
    Json fees = Json::array();
    for (std::size_t index = 0; index < game.num_profiles(); ++index) {
      Json entry = Json::object();
      entry["profile"] = ProfileJson(game, index);
      entry["fee"] = FromRational(ps.fees.at(index));
      fees.push_back(std::move(entry));
    }
    out["fees"] = std::move(fees);
    out["kernel"] = KernelJson(game, ps.kernel);
  }
  return out;
}

Scheme SchemeFromJson(const Game& game, const Json& obj) {
  const Json& type = Field(obj, "type");
  if (type == "actionwise") {
    ActionwiseScheme s;
    s.fees = PerActionTable(game, Field(obj, "fees"), "fee", Rational());
    s.kernel = KernelFromJson(game, Field(obj, "kernel"));
    return s;
  }
  if (type == "profilewise") {
    ProfilewiseScheme s;
    s.fees.assign(game.num_profiles(), Rational());
    const Json& fees = Field(obj, "fees");
    if (!fees.is_array()) throw FormatError("profile-wise fees must be an array");
    for (const Json& entry : fees) {
      const std::size_t index = ProfileFromJson(game, Field(entry, "profile"));
      s.fees[index] = ToRational(Field(entry, "fee"), "profile fee");
    }
    s.kernel = KernelFromJson(game, Field(obj, "kernel"));
    return s;
  }
  throw FormatError("unknown scheme type " + type.dump());
}

Json WitnessJson(const Game& game, const JointDistribution& q) {
  RequireSameShape(game, q);
  Json out = Json::object();
  out["type"] = "witness";
  Json dist = Json::array();
  for (std::size_t index = 0; index < game.num_profiles(); ++index) {
    Json entry = Json::object();
    entry["profile"] = ProfileJson(game, index);
    entry["probability"] = FromRational(q[index]);
    dist.push_back(std::move(entry));
  }
  out["distribution"] = std::move(dist);
  return out;
}

JointDistribution WitnessFromJson(const Game& game, const Json& obj) {
  const Json& dist = Field(obj, "distribution");
  if (!dist.is_array()) throw FormatError("distribution must be an array");
  std::vector<Rational> probs(game.num_profiles());
  for (const Json& entry : dist) {
    const std::size_t index = ProfileFromJson(game, Field(entry, "profile"));
    probs[index] = ToRational(Field(entry, "probability"), "probability");
  }
  try {
    return JointDistribution(game.shape(), std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Certificate CertificateFromJson(const Game& game, const Json& obj) {
  if (obj.contains("verdict")) {
    if (obj.contains("witness")) return WitnessFromJson(game, obj["witness"]);
    if (obj.contains("scheme")) {
      Scheme s = SchemeFromJson(game, obj["scheme"]);
      if (auto* a = std::get_if<ActionwiseScheme>(&s)) return std::move(*a);
      return std::get<ProfilewiseScheme>(std::move(s));
    }
    throw FormatError("verdict document carries no certificate");
  }
  const Json& type = Field(obj, "type");
  if (type == "witness") return WitnessFromJson(game, obj);
  Scheme s = SchemeFromJson(game, obj);
  if (auto* a = std::get_if<ActionwiseScheme>(&s)) return std::move(*a);
  return std::get<ProfilewiseScheme>(std::move(s));
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

Game ParseGame(std::string_view text) {
  const Json doc = ParseDocument(text);
  const Json& players_json = Field(doc, "players");
  const Json& actions_json = Field(doc, "actions");
  const Json& payoffs_json = Field(doc, "payoffs");
  if (!players_json.is_array()) throw FormatError("'players' must be an array");

  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;
  std::vector<std::vector<Rational>> payoffs;
  for (const Json& p : players_json) {
    if (!p.is_string()) throw FormatError("player ids must be strings");
    const std::string name = p.get<std::string>();
    players.push_back(name);

    auto a = actions_json.find(name);
    if (a == actions_json.end() || !a->is_array()) {
      throw FormatError("missing action list for player '" + name + "'");
    }
    std::vector<std::string> labels;
    for (const Json& label : *a) {
      if (!label.is_string()) throw FormatError("action labels must be strings");
      labels.push_back(label.get<std::string>());
    }
    actions.push_back(std::move(labels));

    auto u = payoffs_json.find(name);
    if (u == payoffs_json.end() || !u->is_array()) {
      throw FormatError("missing payoff list for player '" + name + "'");
    }
    std::vector<Rational> values;
    for (const Json& v : *u) values.push_back(ToRational(v, "payoff of '" + name + "'"));
    payoffs.push_back(std::move(values));
  }
  for (const auto& [name, unused] : actions_json.items()) {
    if (std::find(players.begin(), players.end(), name) == players.end()) {
      throw FormatError("actions given for unknown player '" + name + "'");
    }
  }
  for (const auto& [name, unused] : payoffs_json.items()) {
    if (std::find(players.begin(), players.end(), name) == players.end()) {
      throw FormatError("payoffs given for unknown player '" + name + "'");
    }
  }
  try {
    return Game(std::move(players), std::move(actions), std::move(payoffs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string EmitGame(const Game& game) {
  Json doc = Json::object();
  doc["players"] = game.players();
  Json actions = Json::object();
  Json payoffs = Json::object();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    actions[game.player_name(i)] = game.actions(i);
    Json values = Json::array();
    for (const Rational& u : game.payoffs(i)) values.push_back(FromRational(u));
    payoffs[game.player_name(i)] = std::move(values);
  }
  doc["actions"] = std::move(actions);
  doc["payoffs"] = std::move(payoffs);
  return Dump(doc);
}

MarginalProfile ParseMarginals(const Game& game, std::string_view text) {
  const Json doc = ParseDocument(text);
  const Json& marginals = Field(doc, "marginals");
  for (const auto& name : game.players()) {
    if (!marginals.contains(name)) throw FormatError("no marginal for player '" + name + "'");
  }
  try {
    return MarginalProfile(PerActionTable(game, marginals, "probability", Rational()));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string EmitMarginals(const Game& game, const MarginalProfile& p) {
  RequireSameShape(game, p);
  Json doc = Json::object();
  doc["marginals"] = PerActionJson(game, p.all());
  return Dump(doc);
}

DeviationKernel ParseKernel(const Game& game, std::string_view text) {
  const Json doc = ParseDocument(text);
  return KernelFromJson(game, Field(doc, "kernel"));
}

std::string EmitKernel(const Game& game, const DeviationKernel& eta) {
  RequireSameShape(game, eta);
  Json doc = Json::object();
  doc["kernel"] = KernelJson(game, eta);
  return Dump(doc);
}

std::string EmitScheme(const Game& game, const Scheme& scheme) {
  return Dump(SchemeJson(game, scheme));
}

Scheme ParseScheme(const Game& game, std::string_view text) {
  const Json doc = ParseDocument(text);
  if (doc.contains("verdict")) return SchemeFromJson(game, Field(doc, "scheme"));
  return SchemeFromJson(game, doc);
}

std::string EmitWitness(const Game& game, const JointDistribution& q) {
  return Dump(WitnessJson(game, q));
}

Certificate ParseCertificate(const Game& game, std::string_view text) {
  return CertificateFromJson(game, ParseDocument(text));
}

std::string EmitCeVerdict(const Game& game, const CeVerdict& verdict) {
  Json doc = Json::object();
  doc["analysis"] = "correlated-equilibrium";
  if (const auto* c = std::get_if<CeCompatible>(&verdict)) {
    doc["verdict"] = "compatible";
    doc["witness"] = WitnessJson(game, c->witness);
  } else {
    const auto& e = std::get<CeExploitable>(verdict);
    doc["verdict"] = "exploitable";
    doc["expected_profit"] = FromRational(e.expected_profit);
    doc["scheme"] = SchemeJson(game, e.scheme);
  }
  return Dump(doc);
}

CeVerdict ParseCeVerdict(const Game& game, std::string_view text) {
  const Json doc = ParseDocument(text);
  if (Field(doc, "analysis") != "correlated-equilibrium") {
    throw FormatError("not a correlated-equilibrium verdict");
  }
  const Json& verdict = Field(doc, "verdict");
  if (verdict == "compatible") return CeCompatible{WitnessFromJson(game, Field(doc, "witness"))};
  if (verdict == "exploitable") {
    Scheme s = SchemeFromJson(game, Field(doc, "scheme"));
    auto* a = std::get_if<ActionwiseScheme>(&s);
    if (a == nullptr) throw FormatError("correlated-equilibrium verdict needs an action-wise scheme");
    return CeExploitable{std::move(*a), ToRational(Field(doc, "expected_profit"), "expected_profit")};
  }
  throw FormatError("unknown verdict " + verdict.dump());
}

std::string EmitNashVerdict(const Game& game, const NashVerdict& verdict) {
  Json doc = Json::object();
  doc["analysis"] = "nash";
  if (std::holds_alternative<IsNashEquilibrium>(verdict)) {
    doc["verdict"] = "nash-equilibrium";
  } else {
    const auto& e = std::get<NashExploitable>(verdict);
    doc["verdict"] = "exploitable";
    doc["expected_profit"] = FromRational(e.expected_profit);
    doc["scheme"] = SchemeJson(game, e.scheme);
  }
  return Dump(doc);
}

NashVerdict ParseNashVerdict(const Game& game, std::string_view text) {
  const Json doc = ParseDocument(text);
  if (Field(doc, "analysis") != "nash") throw FormatError("not a Nash verdict");
  const Json& verdict = Field(doc, "verdict");
  if (verdict == "nash-equilibrium") return IsNashEquilibrium{};
  if (verdict == "exploitable") {
    Scheme s = SchemeFromJson(game, Field(doc, "scheme"));
    auto* ps = std::get_if<ProfilewiseScheme>(&s);
    if (ps == nullptr) throw FormatError("Nash verdict needs a profile-wise scheme");
    return NashExploitable{std::move(*ps), ToRational(Field(doc, "expected_profit"), "expected_profit")};
  }
  throw FormatError("unknown verdict " + verdict.dump());
}

std::string EmitSurplusTable(const Game& game, const std::vector<Rational>& table) {
  if (table.size() != game.num_profiles()) {
    throw std::invalid_argument("surplus table does not cover every profile");
  }
  Json doc = Json::object();
  Json entries = Json::array();
  for (std::size_t index = 0; index < table.size(); ++index) {
    Json entry = Json::object();
    entry["profile"] = ProfileJson(game, index);
    entry["value"] = FromRational(table[index]);
    entries.push_back(std::move(entry));
  }
  doc["surplus"] = std::move(entries);
  return Dump(doc);
}

PlayLog ParsePlayLog(const Game& game, std::string_view csv) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t nl = csv.find('\n', start);
    const std::string_view line =
        csv.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!Trim(line).empty()) lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw FormatError("play log has no header");

  const std::vector<std::string> header = SplitCsvLine(lines.front());
  std::vector<std::size_t> column_player;
  std::vector<bool> seen(game.num_players(), false);
  for (const std::string& name : header) {
    const std::size_t i = PlayerIndex(game, name);
    if (seen[i]) throw FormatError("duplicate column for player '" + name + "'");
    seen[i] = true;
    column_player.push_back(i);
  }

  PlayLog log;
  log.sequences.resize(game.num_players());
  for (std::size_t line = 1; line < lines.size(); ++line) {
    const std::vector<std::string> cells = SplitCsvLine(lines[line]);
    if (cells.size() > header.size()) {
      throw FormatError("play log line " + std::to_string(line + 1) + " has too many cells");
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!cells[c].empty()) log.sequences[column_player[c]].push_back(cells[c]);
    }
  }
  return log;
}

MarginalProfile EmpiricalMarginals(const Game& game, const PlayLog& log) {
  if (log.sequences.size() != game.num_players()) {
    throw FormatError("play log does not cover every player");
  }
  std::vector<std::vector<Rational>> probs;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto& seq = log.sequences[i];
    if (seq.empty()) throw FormatError("empty history for player '" + game.player_name(i) + "'");
    std::vector<std::int64_t> counts(game.num_actions(i), 0);
    for (const std::string& label : seq) ++counts[ActionIndex(game, i, label)];
    std::vector<Rational> row;
    for (std::int64_t c : counts) row.emplace_back(c, static_cast<std::int64_t>(seq.size()));
    probs.push_back(std::move(row));
  }
  return MarginalProfile(std::move(probs));
}

}  // namespace ceaudit
