/* origin_main.cpp -- command-line front end: containment / equivalence
 * checks (plain and modulo a resynchronizer), boundedness queries, busy
 * normalization, bounded enumeration with DOT export, and a seeded
 * random cross-validation suite.
 *
 * SPDX-License-Identifier: MIT
 *
 * Exit codes: 0 = property holds / command succeeded, 1 = property fails
 * (a JSON verdict with a counterexample is printed), 2 = input error.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "origin/containment.hpp"
#include "origin/json_io.hpp"
#include "origin/normalization.hpp"
#include "origin/random_gen.hpp"
#include "origin/resync.hpp"

namespace {

using namespace origin;

struct Args {
  std::string command;
  std::vector<std::string> files;
  int max_input = 6;
  int max_out = 8;
  std::size_t state_budget = 1000000;
  std::string resync_path;
  std::string input_word;
  bool have_input = false;
  std::string dot_path;
  bool busy = false;
  std::uint64_t seed = 0;
  int count = 0;
};

int usage() {
  std::cerr
      << "usage:\n"
      << "  origin check-containment A.json B.json\n"
      << "  origin check-equivalence A.json B.json\n"
      << "  origin check-containment-modulo A.json B.json --resync R.json\n"
      << "  origin resync-bounded R.json\n"
      << "  origin normalize --busy T.json [--input WORD]\n"
      << "  origin enumerate T.json --input WORD --max-out N [--dot out.dot]\n"
      << "  origin random-suite --seed N --count K\n"
      << "common flags: --max-input N  --max-out N  --state-budget N\n"
      << "env: ORIGIN_STATE_BUDGET overrides the search budget\n";
  return 2;
}

Args parse_args(int argc, char** argv) {
  Args a;
  if (const char* e = std::getenv("ORIGIN_STATE_BUDGET")) {
    long v = std::atol(e);
    if (v > 0) a.state_budget = static_cast<std::size_t>(v);
  }
  if (argc < 2) throw InputError("missing command");
  a.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string s = argv[i];
    auto next = [&]() -> std::string {
      if (++i >= argc) throw InputError("flag " + s + " needs a value");
      return argv[i];
    };
    if (s == "--max-input") a.max_input = std::stoi(next());
    else if (s == "--max-out") a.max_out = std::stoi(next());
    else if (s == "--state-budget") a.state_budget = std::stoul(next());
    else if (s == "--resync") a.resync_path = next();
    else if (s == "--input") { a.input_word = next(); a.have_input = true; }
    else if (s == "--dot") a.dot_path = next();
    else if (s == "--busy") a.busy = true;
    else if (s == "--seed") a.seed = std::stoull(next());
    else if (s == "--count") a.count = std::stoi(next());
    else if (!s.empty() && s[0] == '-') throw InputError("unknown flag " + s);
    else a.files.push_back(s);
  }
  return a;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

/// The --input string as a word over the transducer's input alphabet:
/// comma-separated tokens, or greedy longest-match tokenization.
Word parse_input_word(const std::string& s, const std::vector<Sym>& alphabet) {
  Word w;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(tok);
  } else {
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t best = 0;
      for (const auto& sym : alphabet)
        if (s.compare(i, sym.size(), sym) == 0 && sym.size() > best) best = sym.size();
      if (best == 0)
        throw InputError("cannot tokenize input word at \"" + s.substr(i) + "\"");
      w.push_back(s.substr(i, best));
      i += best;
    }
  }
  for (const auto& sym : w)
    if (std::find(alphabet.begin(), alphabet.end(), sym) == alphabet.end())
      throw InputError("input symbol not in alphabet: " + sym);
  return w;
}

void print_containment_verdict(const ContainmentResult& r) {
  std::cout << verdict_to_json(r).dump(2) << "\n";
}

int cmd_check(const Args& a, bool equivalence) {
  if (a.files.size() != 2) throw InputError("expected two transducer files");
  TwoWayTransducer t1 = transducer_from_json(load_json(a.files[0]));
  TwoWayTransducer t2 = transducer_from_json(load_json(a.files[1]));
  if (!equivalence) {
    auto r = origin_containment(t1, t2, a.state_budget, a.max_out);
    print_containment_verdict(r);
    return r.contained ? 0 : 1;
  }
  auto r = origin_equivalence(t1, t2, a.state_budget, a.max_out);
  json j;
  j["verdict"] = r.equivalent ? "equivalent" : "not-equivalent";
  if (!r.equivalent) {
    j["failing_direction"] = r.failing_direction;
    json c;
    c["input"] = r.detail.input;
    if (r.detail.evidence) c["output"] = sync_pair_to_json(*r.detail.evidence)["output"];
    j["counterexample"] = c;
    j["confirmed"] = r.detail.confirmed;
  }
  std::cout << j.dump(2) << "\n";
  return r.equivalent ? 0 : 1;
}

int cmd_check_modulo(const Args& a) {
  if (a.files.size() != 2 || a.resync_path.empty())
    throw InputError("expected two transducer files and --resync R.json");
  TwoWayTransducer t1 = transducer_from_json(load_json(a.files[0]));
  TwoWayTransducer t2 = transducer_from_json(load_json(a.files[1]));
  Resynchronizer r = resync_from_json(load_json(a.resync_path));
  auto res = containment_modulo(t1, t2, r, a.state_budget, a.max_out);
  json j;
  j["verdict"] = res.contained ? "contained" : "not-contained";
  if (!res.contained) {
    json c;
    c["input"] = res.input;
    if (res.evidence) {
      json o = json::array();
      for (const auto& [s, q] : res.evidence->output) o.push_back(json::array({s, q}));
      c["output"] = o;
    }
    j["counterexample"] = c;
    j["confirmed"] = res.confirmed;
  }
  std::cout << j.dump(2) << "\n";
  return res.contained ? 0 : 1;
}

int cmd_resync_bounded(const Args& a) {
  if (a.files.size() != 1) throw InputError("expected one resynchronizer file");
  Resynchronizer r = resync_from_json(load_json(a.files[0]));
  bool b = is_bounded(r, default_sigma_for(r), a.state_budget);
  std::cout << json{{"bounded", b}}.dump(2) << "\n";
  return b ? 0 : 1;
}

int cmd_normalize(const Args& a) {
  if (!a.busy) throw InputError("normalize: only --busy is supported");
  if (a.files.size() != 1) throw InputError("expected one transducer file");
  TwoWayTransducer t = transducer_from_json(load_json(a.files[0]));
  Word u;
  if (a.have_input) u = parse_input_word(a.input_word, t.input_alphabet);
  Word w = annotate_word(t, u);
  BusyView view(t, 1, BusyStage::kBusy);
  TwoWayTransducer busy = materialize_for_word(view, w);
  json j;
  j["input"] = u;
  j["annotated_input"] = w;
  j["pad"] = view.pad();
  j["transducer"] = transducer_to_json(busy);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_enumerate(const Args& a) {
  if (a.files.size() != 1) throw InputError("expected one transducer file");
  TwoWayTransducer t = transducer_from_json(load_json(a.files[0]));
  Word u;
  if (a.have_input) u = parse_input_word(a.input_word, t.input_alphabet);
  auto pairs = enumerate_sync_pairs(t, u, a.max_out);
  // Stable order: lexicographic by output letters, then by origin sequence.
  std::vector<SyncPair> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end(), [](const SyncPair& x, const SyncPair& y) {
    Word vx, vy;
    std::vector<int> ox, oy;
    for (const auto& [s, q] : x.output) { vx.push_back(s); ox.push_back(q); }
    for (const auto& [s, q] : y.output) { vy.push_back(s); oy.push_back(q); }
    if (vx != vy) return vx < vy;
    return ox < oy;
  });
  json j = json::array();
  for (const auto& p : sorted) j.push_back(sync_pair_to_json(p));
  std::cout << j.dump(2) << "\n";
  if (!a.dot_path.empty()) {
    std::ofstream out(a.dot_path);
    if (!out) throw InputError("cannot write " + a.dot_path);
    int k = 0;
    for (const auto& p : sorted) out << sync_pair_to_dot(p, "pair" + std::to_string(k++));
  }
  return 0;
}

int cmd_random_suite(const Args& a) {
  std::mt19937_64 rng(a.seed);
  RandomTransducerOptions opt;
  auto words = all_words_up_to(opt.input_alphabet, std::min(a.max_input, 4));
  json cases = json::array();
  int disagreements = 0;
  for (int c = 0; c < a.count; ++c) {
    TwoWayTransducer t1 = random_transducer(rng, opt);
    TwoWayTransducer t2 = random_transducer(rng, opt);
    json entry{{"case", c}};
    std::optional<Word> oracleCex;
    for (const auto& u : words) {
      auto p1 = enumerate_sync_pairs(t1, u, a.max_out);
      auto p2 = enumerate_sync_pairs(t2, u, a.max_out);
      for (const auto& p : p1)
        if (!p2.count(p)) { oracleCex = u; break; }
      if (oracleCex) break;
    }
    try {
      auto r = origin_containment(t1, t2, a.state_budget, a.max_out);
      entry["verdict"] = r.contained ? "contained" : "not-contained";
      bool agree = r.contained ? !oracleCex.has_value() : r.confirmed;
      entry["agree"] = agree;
      if (!agree) ++disagreements;
    } catch (const BudgetError&) {
      entry["verdict"] = "budget";
      entry["agree"] = true;  // inconclusive, not a disagreement
    }
    cases.push_back(entry);
  }
  json report{{"seed", a.seed},
              {"count", a.count},
              {"max_input", std::min(a.max_input, 4)},
              {"max_out", a.max_out},
              {"cases", cases},
              {"disagreements", disagreements}};
  std::cout << report.dump(2) << "\n";
  return disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    Args a = parse_args(argc, argv);
    if (a.command == "check-containment") return cmd_check(a, false);
    if (a.command == "check-equivalence") return cmd_check(a, true);
    if (a.command == "check-containment-modulo") return cmd_check_modulo(a);
    if (a.command == "resync-bounded") return cmd_resync_bounded(a);
    if (a.command == "normalize") return cmd_normalize(a);
    if (a.command == "enumerate") return cmd_enumerate(a);
    if (a.command == "random-suite") return cmd_random_suite(a);
    std::cerr << "unknown command: " << a.command << "\n";
    return usage();
  } catch (const origin::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const origin::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
