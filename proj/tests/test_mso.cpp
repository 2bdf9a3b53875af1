/* Tests for the MSO-over-words layer: parsing, direct evaluation, compiled
 * automata cross-checked against evaluation on all small words, negation
 * identities, first-order track discipline, and mark-and-project ambiguity.
 *
 * SPDX-License-Identifier: MIT
 */

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "origin/mso.hpp"

using namespace origin;

namespace {

std::vector<Word> words_up_to(const std::vector<Sym>& sigma, int maxLen) {
  std::vector<Word> out{{}};
  std::size_t lo = 0;
  for (int len = 1; len <= maxLen; ++len) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& s : sigma) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

/// All assignments of the slots over positions 1..n.
std::vector<Assignment> all_assignments(const std::vector<MsoVar>& slots, int n) {
  std::vector<Assignment> out{{}};
  for (const auto& v : slots) {
    std::vector<Assignment> next;
    for (const auto& a : out) {
      if (v.second_order) {
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
          Assignment b = a;
          std::set<int> s;
          for (int p = 1; p <= n; ++p)
            if (mask & (1ull << (p - 1))) s.insert(p);
          b.sets[v.name] = std::move(s);
          next.push_back(std::move(b));
        }
      } else {
        for (int p = 1; p <= n; ++p) {
          Assignment b = a;
          b.pos[v.name] = p;
          next.push_back(std::move(b));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Check compiled membership == direct evaluation for every word up to
/// maxLen and every assignment of the declared frees.
void check_agreement(const FormulaSpec& fs, const std::vector<Sym>& sigma,
                     int maxLen) {
  Nfa compiled = compile_mso(fs, sigma);
  auto slots = fs.slots();
  for (const auto& w : words_up_to(sigma, maxLen)) {
    int n = static_cast<int>(w.size());
    bool any_fo = false;
    for (const auto& v : slots) any_fo = any_fo || !v.second_order;
    if (n == 0 && any_fo) continue;  // no encoding exists
    for (const auto& asg : all_assignments(slots, n)) {
      Word enc = encode_assignment(w, slots, asg);
      INFO("word size " << n);
      CHECK(nfa_accepts(compiled, enc) == evaluate(fs.body, w, asg));
    }
  }
}

FormulaSpec spec_of(const std::string& body, std::vector<std::string> free1 = {},
                    std::vector<std::string> free2 = {}) {
  FormulaSpec fs;
  fs.free1 = std::move(free1);
  fs.free2 = std::move(free2);
  fs.body = parse_formula(body);
  return fs;
}

/// Number of accepting runs of an automaton on a word.
std::uint64_t count_runs(const Nfa& a, const Word& w) {
  std::vector<std::uint64_t> cnt(a.n, 0);
  for (int q : a.initial) cnt[q] += 1;
  auto adj = a.out_edges();
  for (const auto& s : w) {
    int sy = a.sym_index(s);
    std::vector<std::uint64_t> next(a.n, 0);
    for (int q = 0; q < a.n; ++q)
      if (cnt[q])
        for (auto [x, t] : adj[q])
          if (x == sy) next[t] += cnt[q];
    cnt = std::move(next);
  }
  std::uint64_t total = 0;
  for (int q : a.final_) total += cnt[q];
  return total;
}

}  // namespace

TEST_CASE("parser handles every operator and rejects malformed input") {
  FormulaSpec fs = formula_from_json(
      {{"free1", {"y", "z"}}, {"free2", {"I1"}},
       {"body", "(and (in y I1) (or (lt y z) (not (succ y z))))"}});
  CHECK(fs.body.kind == MsoFormula::kAnd);
  CHECK(fs.slots().size() == 3);
  CHECK(fs.slots()[2].second_order);

  CHECK_NOTHROW(parse_formula("(exists2 X (forall1 x (in x X)))"));
  CHECK_NOTHROW(parse_formula("(eq y z)"));
  CHECK_NOTHROW(parse_formula("(and (first x) (last x))"));
  CHECK_NOTHROW(parse_formula("(label a x)"));
  CHECK_NOTHROW(parse_formula("true"));
  CHECK_THROWS_AS(parse_formula("(and true)"), InputError);
  CHECK_THROWS_AS(parse_formula("(frobnicate x)"), InputError);
  CHECK_THROWS_AS(parse_formula("(lt y z) extra"), InputError);
  CHECK_THROWS_AS(parse_formula("(exists1 (lt y z))"), InputError);
}

TEST_CASE("direct evaluation: adjacency, extremes, sets, quantifiers") {
  Word w{"a", "b", "a"};
  MsoFormula adj = parse_formula("(or (succ z y) (succ y z))");
  Assignment a;
  a.pos = {{"y", 2}, {"z", 3}};
  CHECK(evaluate(adj, w, a));
  a.pos = {{"y", 2}, {"z", 2}};
  CHECK_FALSE(evaluate(adj, w, a));
  a.pos = {{"y", 1}, {"z", 3}};
  CHECK_FALSE(evaluate(adj, w, a));

  Assignment b;
  b.pos = {{"x", 1}};
  b.sets = {{"X", {1, 3}}};
  CHECK(evaluate(parse_formula("(in x X)"), w, b));
  CHECK(evaluate(parse_formula("(first x)"), w, b));
  CHECK_FALSE(evaluate(parse_formula("(last x)"), w, b));
  CHECK(evaluate(parse_formula("(label a x)"), w, b));

  CHECK(evaluate(parse_formula("(exists1 x (label b x))"), w, {}));
  CHECK_FALSE(evaluate(parse_formula("(forall1 x (label a x))"), w, {}));
  CHECK(evaluate(parse_formula("(exists2 X (forall1 x (in x X)))"), w, {}));
  // Out-of-range bindings are rejected.
  Assignment bad;
  bad.pos = {{"x", 4}};
  CHECK_THROWS_AS(evaluate(parse_formula("(first x)"), w, bad), InputError);
}

TEST_CASE("compiled automata agree with evaluation on all small inputs") {
  std::vector<Sym> sigma{"a", "b"};
  // Sentences.
  check_agreement(spec_of("(exists1 x (label a x))"), sigma, 5);
  check_agreement(spec_of("(forall1 x (label a x))"), sigma, 5);
  check_agreement(spec_of("(exists1 x (and (first x) (label b x)))"), sigma, 5);
  check_agreement(spec_of("(exists1 x (exists1 y (and (lt x y) (and (label a x) (label b y)))))"),
                  sigma, 5);
  check_agreement(spec_of("(forall1 x (forall1 y (or (not (succ x y)) (not (and (label a x) (label a y))))))"),
                  sigma, 5);
  check_agreement(spec_of("(exists2 X (forall1 x (in x X)))"), sigma, 4);
  check_agreement(spec_of("(forall2 X (exists1 x (in x X)))"), sigma, 4);
  // Open formulas.
  check_agreement(spec_of("(or (succ z y) (succ y z))", {"y", "z"}), sigma, 5);
  check_agreement(spec_of("(lt y z)", {"y", "z"}), sigma, 5);
  check_agreement(spec_of("(eq y z)", {"y", "z"}), sigma, 5);
  check_agreement(spec_of("(and (first y) (last z))", {"y", "z"}), sigma, 5);
  check_agreement(spec_of("(in y I1)", {"y"}, {"I1"}), sigma, 4);
  check_agreement(spec_of("(not (in y I1))", {"y"}, {"I1"}), sigma, 4);
  check_agreement(spec_of("(exists1 x (and (in x I1) (succ x y)))", {"y"}, {"I1"}),
                  sigma, 4);
  check_agreement(spec_of("(forall1 x (or (not (in x I1)) (label a x)))", {}, {"I1"}),
                  sigma, 4);
}

TEST_CASE("double negation and De Morgan compile to equal languages") {
  std::vector<Sym> sigma{"a", "b"};
  auto langs_equal = [&](const FormulaSpec& f, const FormulaSpec& g, int maxLen) {
    Nfa cf = compile_mso(f, sigma), cg = compile_mso(g, sigma);
    REQUIRE(cf.alphabet == cg.alphabet);
    CHECK(enumerate_words(cf, maxLen) == enumerate_words(cg, maxLen));
  };
  langs_equal(spec_of("(exists1 x (label a x))"),
              spec_of("(not (not (exists1 x (label a x))))"), 5);
  langs_equal(spec_of("(not (and (exists1 x (label a x)) (exists1 x (label b x))))"),
              spec_of("(or (not (exists1 x (label a x))) (not (exists1 x (label b x))))"),
              5);
  langs_equal(spec_of("(not (or (first y) (last y)))", {"y"}),
              spec_of("(and (not (first y)) (not (last y)))", {"y"}), 4);
}

TEST_CASE("first-order tracks must carry exactly one mark") {
  std::vector<Sym> sigma{"a"};
  Nfa c = compile_mso(spec_of("(first y)", {"y"}), sigma);
  auto enc = [](std::vector<int> marks) {
    Word w;
    for (int m : marks) w.push_back(enc_flagged("a", {m}));
    return w;
  };
  CHECK(nfa_accepts(c, enc({1, 0})));
  CHECK_FALSE(nfa_accepts(c, enc({0, 0})));   // no mark
  CHECK_FALSE(nfa_accepts(c, enc({1, 1})));   // two marks
  CHECK_FALSE(nfa_accepts(c, enc({0, 1})));   // one mark, wrong place
  CHECK_FALSE(nfa_accepts(c, {}));            // empty word, no mark possible
}

TEST_CASE("mark-and-project counts satisfying marked positions") {
  std::vector<Sym> sigma{"a", "b"};
  auto marked = [&](const std::string& body) {
    Nfa c = compile_mso(spec_of(body, {"y"}), sigma);
    return mark_and_project(dfa_to_nfa(determinize(c)), 0);
  };

  // Exactly one satisfying position per word: unambiguous.
  Nfa first = marked("(first y)");
  CHECK(is_finitely_ambiguous(first));
  CHECK(count_runs(first, {enc_flagged("a", {}), enc_flagged("b", {})}) == 1);
  CHECK_FALSE(nfa_accepts(first, {}));

  // Every position satisfies: one run per position, unbounded.
  Nfa any = marked("(eq y y)");
  CHECK_FALSE(is_finitely_ambiguous(any));
  CHECK(count_runs(any, {enc_flagged("a", {}), enc_flagged("a", {})}) == 2);

  // Runs count the a-positions.
  Nfa as = marked("(label a y)");
  CHECK_FALSE(is_finitely_ambiguous(as));
  Word abab{enc_flagged("a", {}), enc_flagged("b", {}),
            enc_flagged("a", {}), enc_flagged("b", {})};
  CHECK(count_runs(as, abab) == 2);
  Word bb{enc_flagged("b", {}), enc_flagged("b", {})};
  CHECK(count_runs(as, bb) == 0);
  CHECK_FALSE(nfa_accepts(as, bb));
}
