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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ceaudit/ce_analysis.h"
#include "ceaudit/certificates.h"
#include "ceaudit/io.h"
#include "ceaudit/nash_analysis.h"
#include "ceaudit/oracle.h"

namespace ceaudit::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Oracle cross-checks are skipped above this many profiles.
constexpr std::size_t kOracleMaxProfiles = 16;
constexpr std::size_t kOracleScanResolution = 64;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Options {
  std::string game_file;
  std::string profile_file;
  std::string log_file;
  std::string third_file;
  std::string out_file;
  bool oracle = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

struct Outcome {
  int code = kExitOk;
  std::string document;
  std::vector<std::string> notes;  // oracle diagnostics
};

MarginalProfile LoadProfile(const Game& game, const Options& opts,
                            const std::string& profile_file) {
  if (!opts.log_file.empty()) {
    return EmpiricalMarginals(game, ParsePlayLog(game, ReadFile(opts.log_file)));
  }
  return ParseMarginals(game, ReadFile(profile_file));
}

std::vector<Rational> OracleFeeGrid() {
  return {Rational(-2), Rational(-1), Rational(0), Rational(1), Rational(2)};
}

void CeOracle(const Game& game, const MarginalProfile& p, const CeVerdict& verdict,
              std::uint64_t seed, std::vector<std::string>& notes) {
  if (std::holds_alternative<CeCompatible>(verdict)) {
    if (game.num_profiles() <= kOracleMaxProfiles) {
      const std::vector<Rational> grid = OracleFeeGrid();
      if (auto found = ExhaustiveSchemeSearch(game, p, grid)) {
        throw OracleDisagreement("grid search exploits a compatible profile with profit " +
                                 found->expected_profit.ToString());
      }
      notes.push_back("oracle: grid scheme search found no positive profit");
    }
  } else if (game.num_players() == 2 && CouplingDimension(p) <= 2) {
    if (CouplingScan2x2(game, p, kOracleScanResolution)) {
      throw OracleDisagreement("coupling scan found a witness for an exploitable profile");
    }
    notes.push_back("oracle: coupling scan found no witness");
  }
  const JointDistribution sample = RandomCe(game, seed);
  if (!std::holds_alternative<CeCompatible>(TestCeCompatibility(game, MarginalsOf(sample)))) {
    throw OracleDisagreement("marginals of a sampled correlated equilibrium tested exploitable");
  }
  notes.push_back("oracle: sampled correlated equilibrium (seed " + std::to_string(seed) +
                  ") tested compatible");
}

void NashOracle(const Game& game, const MarginalProfile& p, const NashVerdict& verdict,
                std::vector<std::string>& notes) {
  const bool is_nash = std::holds_alternative<IsNashEquilibrium>(verdict);
  const FeasibilityOutcome lp = SolveFeasibility(BuildNashSystem(game, p));
  if (std::holds_alternative<FeasiblePoint>(lp) != is_nash) {
    throw OracleDisagreement("direct Nash check and LP alternative disagree");
  }
  notes.push_back("oracle: LP alternative agrees with the direct check");
  if (is_nash && !std::holds_alternative<CeCompatible>(TestCeCompatibility(game, p))) {
    throw OracleDisagreement("Nash equilibrium marginals tested CE-exploitable");
  }
}

Outcome TestCe(const Game& game, const MarginalProfile& p, const Options& opts) {
  Outcome outcome;
  const CeVerdict verdict = TestCeCompatibility(game, p);
  outcome.code = std::holds_alternative<CeCompatible>(verdict) ? kExitOk : kExitExploitable;
  outcome.document = EmitCeVerdict(game, verdict);
  if (opts.oracle) CeOracle(game, p, verdict, opts.seed, outcome.notes);
  return outcome;
}

Outcome TestNash(const Game& game, const MarginalProfile& p, const Options& opts) {
  Outcome outcome;
  const NashVerdict verdict = TestNashExploitability(game, p);
  outcome.code =
      std::holds_alternative<IsNashEquilibrium>(verdict) ? kExitOk : kExitExploitable;
  outcome.document = EmitNashVerdict(game, verdict);
  if (opts.oracle) NashOracle(game, p, verdict, outcome.notes);
  return outcome;
}

Json ProfileLabels(const Game& game, const ActionProfile& a) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back(game.action_name(i, a[i]));
  return labels;
}

Json AuditJson(const Game& game, const SchemeCheck& check, Outcome& outcome) {
  Json doc = Json::object();
  if (const auto* audit = std::get_if<SchemeAudit>(&check)) {
    doc["valid"] = true;
    doc["expected_profit"] = audit->expected_profit.ToString();
    doc["exploits"] = audit->expected_profit.Sign() > 0;
    Json tight = Json::array();
    for (std::size_t index : audit->tight_profiles) {
      tight.push_back(ProfileLabels(game, game.ProfileAt(index)));
    }
    doc["tight_profiles"] = std::move(tight);
    outcome.code = kExitOk;
  } else {
    const auto& v = std::get<SchemeViolation>(check);
    doc["valid"] = false;
    Json violation = Json::object();
    violation["profile"] = ProfileLabels(game, v.profile);
    violation["fees"] = v.fees.ToString();
    violation["surplus"] = v.surplus.ToString();
    doc["violation"] = std::move(violation);
    outcome.code = kExitExploitable;
  }
  return doc;
}

Outcome Verify(const Game& game, const MarginalProfile& p, const std::string& cert_text) {
  Outcome outcome;
  const Certificate cert = ParseCertificate(game, cert_text);
  Json doc = Json::object();
  if (const auto* q = std::get_if<JointDistribution>(&cert)) {
    doc["certificate"] = "witness";
    const bool ok = VerifyWitness(game, p, *q);
    doc["valid"] = ok;
    outcome.code = ok ? kExitOk : kExitExploitable;
  } else if (const auto* s = std::get_if<ActionwiseScheme>(&cert)) {
    doc["certificate"] = "actionwise";
    doc.update(AuditJson(game, VerifyActionwise(game, p, *s), outcome));
  } else {
    doc["certificate"] = "profilewise";
    doc.update(AuditJson(game, VerifyProfilewise(game, p, std::get<ProfilewiseScheme>(cert)),
                         outcome));
  }
  outcome.document = doc.dump(2) + "\n";
  return outcome;
}

// Runs `analyze` on every *.json file in `dir` (sorted by name), spread over
// `jobs` workers. The combined document lists files in the same order.
Outcome RunBatch(const Game& game, const fs::path& dir, const Options& opts,
                 const std::function<Outcome(const Game&, const MarginalProfile&)>& analyze) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Slot {
    std::optional<Outcome> outcome;
    std::string error;
    bool disagreement = false;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      try {
        slots[k].outcome = analyze(game, ParseMarginals(game, ReadFile(files[k].string())));
      } catch (const OracleDisagreement& e) {
        slots[k].error = e.what();
        slots[k].disagreement = true;
      } catch (const std::exception& e) {
        slots[k].error = e.what();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.jobs, files.size()));
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  Outcome combined;
  Json results = Json::array();
  for (std::size_t k = 0; k < files.size(); ++k) {
    Json entry = Json::object();
    entry["file"] = files[k].filename().string();
    if (slots[k].outcome) {
      entry["exit_code"] = slots[k].outcome->code;
      entry["result"] = Json::parse(slots[k].outcome->document);
      combined.code = std::max(combined.code, slots[k].outcome->code);
      for (auto& note : slots[k].outcome->notes) {
        combined.notes.push_back(files[k].filename().string() + ": " + note);
      }
    } else {
      const int code = slots[k].disagreement ? kExitOracleDisagreement : kExitInputError;
      entry["exit_code"] = code;
      entry["error"] = slots[k].error;
      combined.code = std::max(combined.code, code);
    }
    results.push_back(std::move(entry));
  }
  Json doc = Json::object();
  doc["batch"] = std::move(results);
  combined.document = doc.dump(2) + "\n";
  return combined;
}

Outcome Analyze(const Options& opts,
                Outcome (*analyze)(const Game&, const MarginalProfile&, const Options&)) {
  const Game game = ParseGame(ReadFile(opts.game_file));
  if (opts.log_file.empty() == opts.profile_file.empty()) {
    throw InputError("give exactly one of a marginals file/directory or --log");
  }
  if (!opts.profile_file.empty() && fs::is_directory(opts.profile_file)) {
    return RunBatch(game, opts.profile_file, opts,
                    [&](const Game& g, const MarginalProfile& p) { return analyze(g, p, opts); });
  }
  return analyze(game, LoadProfile(game, opts, opts.profile_file), opts);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact auditor for correlated and Nash equilibrium marginals", "ceaudit"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_file, "Write the result document to this file");
  };
  auto add_analysis = [&](CLI::App* cmd) {
    cmd->add_option("game", opts.game_file, "Game file")->required();
    cmd->add_option("marginals", opts.profile_file,
                    "Marginals file, or a directory of marginals files");
    cmd->add_option("--log", opts.log_file, "Per-player play log (CSV) instead of marginals");
    cmd->add_flag("--oracle", opts.oracle, "Cross-check the verdict with brute-force oracles");
    cmd->add_option("--jobs", opts.jobs, "Workers for a directory of marginals files")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "Seed for oracle sampling");
    add_common(cmd);
  };

  CLI::App* test_ce = app.add_subcommand(
      "test-ce", "Decide whether marginals are compatible with a correlated equilibrium");
  add_analysis(test_ce);
  CLI::App* test_nash = app.add_subcommand(
      "test-nash", "Decide whether marginals form a Nash equilibrium");
  add_analysis(test_nash);

  CLI::App* verify = app.add_subcommand("verify", "Check a witness or transfer scheme");
  verify->add_option("game", opts.game_file, "Game file")->required();
  verify->add_option("marginals", opts.profile_file, "Marginals file")->required();
  verify->add_option("certificate", opts.third_file, "Witness or scheme file")->required();
  add_common(verify);

  CLI::App* surplus = app.add_subcommand("surplus", "Tabulate the deviation surplus of a kernel");
  surplus->add_option("game", opts.game_file, "Game file")->required();
  surplus->add_option("kernel", opts.third_file, "Kernel file")->required();
  add_common(surplus);

  CLI::App* marginals = app.add_subcommand("marginals", "Empirical marginals of a play log");
  marginals->add_option("game", opts.game_file, "Game file")->required();
  marginals->add_option("log", opts.log_file, "Play log (CSV)")->required();
  add_common(marginals);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  Outcome outcome;
  try {
    if (test_ce->parsed()) {
      outcome = Analyze(opts, &TestCe);
    } else if (test_nash->parsed()) {
      outcome = Analyze(opts, &TestNash);
    } else if (verify->parsed()) {
      const Game game = ParseGame(ReadFile(opts.game_file));
      outcome = Verify(game, ParseMarginals(game, ReadFile(opts.profile_file)),
                       ReadFile(opts.third_file));
    } else if (surplus->parsed()) {
      const Game game = ParseGame(ReadFile(opts.game_file));
      const DeviationKernel eta = ParseKernel(game, ReadFile(opts.third_file));
      outcome.document = EmitSurplusTable(game, SurplusTable(game, eta));
    } else if (marginals->parsed()) {
      const Game game = ParseGame(ReadFile(opts.game_file));
      outcome.document = EmitMarginals(
          game, EmpiricalMarginals(game, ParsePlayLog(game, ReadFile(opts.log_file))));
    }
  } catch (const OracleDisagreement& e) {
    err << "oracle disagreement: " << e.what() << "\n";
    return kExitOracleDisagreement;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  for (const std::string& note : outcome.notes) err << note << "\n";
  if (opts.out_file.empty()) {
    out << outcome.document;
  } else {
    std::ofstream file(opts.out_file, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << opts.out_file << "'\n";
      return kExitInputError;
    }
    file << outcome.document;
  }
  return outcome.code;
}

}  // namespace ceaudit::cli
