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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceaudit/ce_analysis.h"
#include "ceaudit/certificates.h"
#include "ceaudit/io.h"
#include "ceaudit/nash_analysis.h"
#include "ceaudit/oracle.h"
#include "cli.h"
#include "test_util.h"

namespace ceaudit {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using testing::Q;

// Collects the failures of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::ostringstream s;
    s << (count_ - failed_) << "/" << count_ << " checks";
    for (const auto& f : failures_) s << "\n       - " << f;
    if (failed_ > static_cast<int>(failures_.size())) s << "\n       - ...";
    return s.str();
  }

 private:
  int count_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "ceaudit");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Run(args, out, err);
  return {code, out.str()};
}

std::string Data(const std::string& name) { return std::string(CEAUDIT_TEST_DATA_DIR) + "/" + name; }

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / "ceaudit_acceptance") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string Write(const std::string& name, const std::string& text) const {
    const fs::path path = dir_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

const Scratch& Tmp() {
  static const Scratch scratch;
  return scratch;
}

std::vector<Rational> SurplusColumn(const std::string& document) {
  const Json doc = Json::parse(document);
  std::vector<Rational> values;
  for (const auto& e : doc["surplus"]) {
    values.push_back(Rational::Parse(e["value"].get<std::string>()));
  }
  return values;
}

std::string Show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].ToString();
  return s + ")";
}

// Runs test-ce through the CLI and checks the returned certificate
// independently.
void ExpectCliExploitable(Check& check, const Game& g, const MarginalProfile& p,
                          const std::string& label) {
  const std::string file = Tmp().Write("p.json", EmitMarginals(g, p));
  const CliResult r = RunCli({"test-ce", Data("coordination.json"), file});
  check.Expect(r.code == cli::kExitExploitable, label + ": exit code " + std::to_string(r.code));
  if (r.code != cli::kExitExploitable) return;
  const CeVerdict v = ParseCeVerdict(g, r.out);
  const auto* e = std::get_if<CeExploitable>(&v);
  check.Expect(e != nullptr, label + ": verdict document");
  if (e == nullptr) return;
  const SchemeCheck audit = VerifyActionwise(g, p, e->scheme);
  const auto* a = std::get_if<SchemeAudit>(&audit);
  check.Expect(a != nullptr && a->expected_profit.Sign() > 0 &&
                   a->expected_profit == e->expected_profit,
               label + ": certificate does not verify with positive profit");
}

bool Ac1(std::string& detail) {
  Check check;
  const Game g = testing::CoordinationGame();
  const ActionwiseScheme scheme{{{0, 0}, {0, 0, Q(1, 2)}},
                                testing::CoordinationKernel(2, {Q(1, 2), Q(1, 2), 0})};
  std::mt19937_64 rng(101);
  for (const Rational& r : {Q(1, 4), Q(1, 2), Q(1)}) {
    for (int k = 0; k < 20; ++k) {
      const Rational t(static_cast<std::int64_t>(rng() % 21), 20);
      const Rational split(static_cast<std::int64_t>(rng() % 11), 10);
      const MarginalProfile p = testing::Marginals(
          {{t, 1 - t}, {(1 - r) * split, (1 - r) * (1 - split), r}});
      ExpectCliExploitable(check, g, p, "p2(R)=" + r.ToString() + " #" + std::to_string(k));
      const SchemeCheck audit = VerifyActionwise(g, p, scheme);
      const auto* a = std::get_if<SchemeAudit>(&audit);
      check.Expect(a != nullptr && a->expected_profit == r / 2,
                   "published scheme at p2(R)=" + r.ToString());
    }
  }
  const CliResult s = RunCli({"surplus", Data("coordination.json"), Data("dominated_kernel.json")});
  const std::vector<Rational> expected = {0, 0, Q(1, 2), 0, 0, Q(1, 2)};
  const std::vector<Rational> got = SurplusColumn(s.out);
  check.Expect(s.code == 0 && got == expected,
               "surplus table " + Show(got) + " differs from published " + Show(expected));
  detail = check.Summary();
  return check.ok();
}

bool Ac2(std::string& detail) {
  Check check;
  const Game g = testing::CoordinationGame();
  ExpectCliExploitable(check, g, testing::MiscoordinationMarginals(), "p~");
  const CliResult v = RunCli({"verify", Data("coordination.json"), Data("miscoordination_marginals.json"),
                              Data("miscoordination_scheme.json")});
  const Json doc = Json::parse(v.out);
  check.Expect(v.code == 0 && doc["valid"] == true && doc["expected_profit"] == "7/4",
               "published scheme profit " + doc.value("expected_profit", std::string("?")));
  const CliResult s = RunCli({"surplus", Data("coordination.json"), Data("miscoordination_kernel.json")});
  const std::vector<Rational> expected = {0, 9, 0, 0, -1, 0};
  const std::vector<Rational> got = SurplusColumn(s.out);
  check.Expect(s.code == 0 && got == expected, "surplus table " + Show(got));
  detail = check.Summary();
  return check.ok();
}

// The 200-game corpus: shapes cycled, seeds fixed.
std::vector<Game> Corpus() {
  std::vector<Game> games;
  const auto shapes = testing::CorpusShapes();
  for (std::uint64_t k = 0; k < 200; ++k) {
    games.push_back(testing::RandomGame(1000 + k, shapes[k % shapes.size()]));
  }
  return games;
}

bool Ac3(std::string& detail) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t seed = 0;
  for (const Game& g : Corpus()) {
    const JointDistribution q = RandomCe(g, seed);
    const std::string label = "game " + std::to_string(seed);
    check.Expect(IsCorrelatedEquilibrium(g, q) && testing::BruteForceIsCe(g, q), label + ": sample");
    const MarginalProfile p = MarginalsOf(q);
    const CeVerdict v = TestCeCompatibility(g, p);
    const auto* c = std::get_if<CeCompatible>(&v);
    check.Expect(c != nullptr && VerifyWitness(g, p, c->witness), label + ": compatibility");
    ++seed;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.Expect(seconds < 60, "runtime " + std::to_string(seconds) + " s");
  detail = check.Summary() + ", " + std::to_string(seconds).substr(0, 5) + " s";
  return check.ok();
}

bool Ac4(std::string& detail) {
  Check check;
  std::vector<Rational> grid;
  for (int v = -2; v <= 2; ++v) grid.emplace_back(v);
  std::mt19937_64 rng(404);
  int scans = 0;
  int searches = 0;
  int exploitable = 0;
  const auto shapes = testing::CorpusShapes();
  const std::vector<Game> corpus = Corpus();
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const Game& g = corpus[s];  // the first game of each shape
    for (int k = 0; k < 200; ++k) {
      const MarginalProfile p = testing::RandomMarginals(rng, shapes[s]);
      const std::string label = "shape " + std::to_string(s) + " #" + std::to_string(k);
      const CeVerdict v = TestCeCompatibility(g, p);
      const bool small = g.num_players() == 2 && CouplingDimension(p) <= 2;
      if (const auto* c = std::get_if<CeCompatible>(&v)) {
        check.Expect(VerifyWitness(g, p, c->witness), label + ": witness");
        if (small) {
          ++searches;
          check.Expect(!ExhaustiveSchemeSearch(g, p, grid).has_value(),
                       label + ": grid search exploits a compatible profile");
        }
      } else {
        ++exploitable;
        const auto& e = std::get<CeExploitable>(v);
        const SchemeCheck audit = VerifyActionwise(g, p, e.scheme);
        const auto* a = std::get_if<SchemeAudit>(&audit);
        check.Expect(a != nullptr && a->expected_profit.Sign() > 0, label + ": scheme");
        check.Expect(!VerifyWitness(g, p, ProductDistribution(p)), label + ": product is a witness");
        if (small) {
          ++scans;
          check.Expect(!CouplingScan2x2(g, p, 64).has_value(),
                       label + ": coupling scan found a witness");
        }
      }
    }
  }
  // Random marginals rarely land on compatible two-player profiles with a
  // small coupling polytope; sampled equilibria supply more of them.
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Game& g = corpus[k];
    if (g.num_players() != 2) continue;
    const MarginalProfile p = MarginalsOf(RandomCe(g, k));
    if (CouplingDimension(p) > 2) continue;
    ++searches;
    check.Expect(!ExhaustiveSchemeSearch(g, p, grid).has_value(),
                 "sampled game " + std::to_string(k) + ": grid search exploits a compatible profile");
  }
  detail = check.Summary() + ", " + std::to_string(exploitable) + " exploitable, " +
           std::to_string(scans) + " scans, " + std::to_string(searches) + " searches";
  return check.ok();
}

bool Ac5(std::string& detail) {
  Check check;
  std::mt19937_64 rng(505);
  int nash = 0;
  int total = 0;
  for (const Game& g : Corpus()) {
    std::vector<MarginalProfile> profiles;
    for (const ActionProfile& a : testing::PureNashEquilibria(g)) {
      profiles.push_back(testing::PureMarginals(g.shape(), a));
    }
    for (int k = 0; k < 3; ++k) profiles.push_back(testing::RandomMarginals(rng, g.shape()));
    for (const MarginalProfile& p : profiles) {
      ++total;
      const bool direct = IsNash(g, p);
      const NashVerdict v = TestNashExploitability(g, p);
      check.Expect(std::holds_alternative<IsNashEquilibrium>(v) == direct, "arm disagrees");
      if (direct) {
        ++nash;
        continue;
      }
      if (const auto* e = std::get_if<NashExploitable>(&v)) {
        const SchemeCheck audit = VerifyProfilewise(g, p, e->scheme);
        const auto* a = std::get_if<SchemeAudit>(&audit);
        check.Expect(a != nullptr && a->expected_profit.Sign() > 0 &&
                         a->expected_profit == e->expected_profit,
                     "profile-wise scheme does not verify");
      }
    }
  }
  const Game g = testing::CoordinationGame();
  check.Expect(std::holds_alternative<IsNashEquilibrium>(
                   TestNashExploitability(g, testing::MixedEquilibriumMarginals())),
               "mixed equilibrium is not reported as Nash");
  check.Expect(RunCli({"test-nash", Data("coordination.json"), Data("mixed_nash_marginals.json")}).code == 0,
               "test-nash on the mixed equilibrium");
  check.Expect(RunCli({"test-ce", Data("coordination.json"), Data("mixed_nash_marginals.json")}).code == 0,
               "test-ce on the mixed equilibrium");
  detail = check.Summary() + ", " + std::to_string(nash) + "/" + std::to_string(total) + " Nash";
  return check.ok();
}

bool Ac6(std::string& detail) {
  Check check;
  const Game g = testing::CoordinationGame();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const JointDistribution q = RandomCe(g, seed);
    check.Expect(IsCorrelatedEquilibrium(g, q) && q[2].IsZero() && q[5].IsZero(),
                 "seed " + std::to_string(seed));
  }
  detail = check.Summary();
  return check.ok();
}

ActionwiseScheme ScaleFees(const ActionwiseScheme& s, const Rational& alpha) {
  ActionwiseScheme out = s;
  for (auto& row : out.fees) {
    for (Rational& f : row) f *= alpha;
  }
  return out;
}

ActionwiseScheme RelabelScheme(const ActionwiseScheme& s, const testing::Relabeling& perm) {
  ActionwiseScheme out{s.fees, testing::RelabelKernel(s.kernel, perm)};
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t a = 0; a < perm[i].size(); ++a) out.fees[i][perm[i][a]] = s.fees[i][a];
  }
  return out;
}

bool SchemeProfitIs(const Game& g, const MarginalProfile& p, const ActionwiseScheme& s,
                    const Rational& profit) {
  const SchemeCheck audit = VerifyActionwise(g, p, s);
  const auto* a = std::get_if<SchemeAudit>(&audit);
  return a != nullptr && a->expected_profit == profit;
}

bool Ac7(std::string& detail) {
  Check check;
  std::mt19937_64 rng(707);
  const std::vector<Game> corpus = Corpus();
  int exploitable = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const Game& g = corpus[k];
    // Alternate between sampled-CE marginals and arbitrary ones so both arms
    // show up.
    const MarginalProfile p =
        k % 2 ? MarginalsOf(RandomCe(g, k)) : testing::RandomMarginals(rng, g.shape());
    const CeVerdict v = TestCeCompatibility(g, p);
    const std::string label = "instance " + std::to_string(k);
    if (std::holds_alternative<CeExploitable>(v)) ++exploitable;

    for (const Rational& alpha : {Q(1, 2), Q(3)}) {
      const Game h = testing::ScaleGame(g, alpha);
      const CeVerdict w = TestCeCompatibility(h, p);
      check.Expect(w.index() == v.index(), label + ": arm changes under scaling");
      if (const auto* c = std::get_if<CeCompatible>(&v)) {
        check.Expect(VerifyWitness(h, p, c->witness), label + ": scaled witness");
      } else {
        const auto& e = std::get<CeExploitable>(v);
        check.Expect(SchemeProfitIs(h, p, ScaleFees(e.scheme, alpha), alpha * e.expected_profit),
                     label + ": scaled scheme");
      }
    }

    const testing::Relabeling perm = testing::RandomRelabeling(rng, g.shape());
    const Game h = testing::RelabelGame(g, perm);
    const MarginalProfile hp = testing::RelabelMarginals(p, perm);
    const CeVerdict w = TestCeCompatibility(h, hp);
    check.Expect(w.index() == v.index(), label + ": arm changes under relabeling");
    if (const auto* c = std::get_if<CeCompatible>(&v)) {
      check.Expect(VerifyWitness(h, hp, testing::RelabelJoint(g, c->witness, perm)),
                   label + ": relabeled witness");
    } else {
      const auto& e = std::get<CeExploitable>(v);
      check.Expect(SchemeProfitIs(h, hp, RelabelScheme(e.scheme, perm), e.expected_profit),
                   label + ": relabeled scheme");
    }
  }
  detail = check.Summary() + ", " + std::to_string(exploitable) + "/50 exploitable";
  return check.ok();
}

void ExpectStable(Check& check, const std::string& first, const std::function<std::string(const std::string&)>& again,
                  const std::string& label) {
  check.Expect(again(first) == first, label + " does not round-trip byte-exactly");
}

bool Ac8(std::string& detail) {
  Check check;
  std::mt19937_64 rng(808);
  const std::vector<Game> corpus = Corpus();
  for (std::size_t k = 0; k < 60; ++k) {
    const Game& g = corpus[k];
    const std::string label = "instance " + std::to_string(k);
    const MarginalProfile p = testing::RandomMarginals(rng, g.shape());

    const std::string game_text = EmitGame(g);
    ExpectStable(check, game_text, [](const std::string& t) { return EmitGame(ParseGame(t)); }, label + " game");
    check.Expect(ParseGame(game_text).payoffs(0) == g.payoffs(0), label + " game values");

    const std::string p_text = EmitMarginals(g, p);
    ExpectStable(check, p_text, [&](const std::string& t) { return EmitMarginals(g, ParseMarginals(g, t)); },
                 label + " marginals");
    check.Expect(ParseMarginals(g, p_text) == p, label + " marginal values");

    const CeVerdict v = TestCeCompatibility(g, p);
    ExpectStable(check, EmitCeVerdict(g, v),
                 [&](const std::string& t) { return EmitCeVerdict(g, ParseCeVerdict(g, t)); },
                 label + " CE verdict");
    if (const auto* e = std::get_if<CeExploitable>(&v)) {
      ExpectStable(check, EmitScheme(g, e->scheme),
                   [&](const std::string& t) { return EmitScheme(g, ParseScheme(g, t)); },
                   label + " action-wise scheme");
      ExpectStable(check, EmitKernel(g, e->scheme.kernel),
                   [&](const std::string& t) { return EmitKernel(g, ParseKernel(g, t)); },
                   label + " kernel");
      check.Expect(std::get<ActionwiseScheme>(ParseScheme(g, EmitScheme(g, e->scheme))) == e->scheme,
                   label + " scheme values");
    }
    const NashVerdict n = TestNashExploitability(g, p);
    ExpectStable(check, EmitNashVerdict(g, n),
                 [&](const std::string& t) { return EmitNashVerdict(g, ParseNashVerdict(g, t)); },
                 label + " Nash verdict");
    if (const auto* e = std::get_if<NashExploitable>(&n)) {
      check.Expect(std::get<ProfilewiseScheme>(ParseScheme(g, EmitScheme(g, e->scheme))) == e->scheme,
                   label + " profile-wise scheme values");
    }
    const JointDistribution q = RandomCe(g, k);
    const std::string w_text = EmitWitness(g, q);
    check.Expect(std::get<JointDistribution>(ParseCertificate(g, w_text)) == q, label + " witness values");
    ExpectStable(check, w_text,
                 [&](const std::string& t) {
                   return EmitWitness(g, std::get<JointDistribution>(ParseCertificate(g, t)));
                 },
                 label + " witness");
  }

  const fs::path batch = Tmp().dir() / "batch";
  fs::create_directories(batch);
  fs::copy_file(Data("miscoordination_marginals.json"), batch / "a.json", fs::copy_options::overwrite_existing);
  fs::copy_file(Data("mixed_nash_marginals.json"), batch / "b.json", fs::copy_options::overwrite_existing);
  fs::copy_file(Data("pure_tl_marginals.json"), batch / "c.json", fs::copy_options::overwrite_existing);
  const std::string game = Data("coordination.json");
  const std::vector<std::vector<std::string>> commands = {
      {"test-ce", game, Data("miscoordination_marginals.json")},
      {"test-ce", game, Data("mixed_nash_marginals.json"), "--oracle", "--seed", "3"},
      {"test-ce", game, "--log", Data("miscoordination_log.csv")},
      {"test-ce", game, batch.string(), "--jobs", "3"},
      {"test-nash", game, Data("miscoordination_marginals.json")},
      {"test-nash", game, Data("mixed_nash_marginals.json"), "--oracle"},
      {"verify", game, Data("miscoordination_marginals.json"), Data("miscoordination_scheme.json")},
      {"surplus", game, Data("dominated_kernel.json")},
      {"surplus", game, Data("miscoordination_kernel.json")},
      {"marginals", game, Data("miscoordination_log.csv")},
  };
  for (const auto& cmd : commands) {
    const CliResult a = RunCli(cmd);
    const CliResult b = RunCli(cmd);
    check.Expect(a.code == b.code && a.out == b.out && !a.out.empty(), "CLI " + cmd[0] + " is not deterministic");
  }
  detail = check.Summary();
  return check.ok();
}

}  // namespace
}  // namespace ceaudit

int main() {
  using Criterion = std::pair<const char*, bool (*)(std::string&)>;
  const Criterion criteria[] = {
      {"AC1 dominated action exclusion example", ceaudit::Ac1},
      {"AC2 miscoordination example", ceaudit::Ac2},
      {"AC3 sampled CE marginals are compatible", ceaudit::Ac3},
      {"AC4 exactly one verified verdict, oracle agreement", ceaudit::Ac4},
      {"AC5 Nash check agrees with profile-wise schemes", ceaudit::Ac5},
      {"AC6 dominated action never sampled", ceaudit::Ac6},
      {"AC7 scaling and relabeling invariance", ceaudit::Ac7},
      {"AC8 round trips and CLI determinism", ceaudit::Ac8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << ms << " ms): " << detail
              << std::endl;
    if (!ok) ++failed;
  }
  std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria) << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
