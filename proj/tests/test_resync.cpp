// Resynchronizer tests: direct semantics against hand-computed cases,
// boundedness against position counting, every application stage against the
// closure of the enumeration oracle under the direct semantics, and
// containment modulo a resynchronizer on crafted and random instances.
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "origin/containment.hpp"
#include "origin/random_gen.hpp"
#include "origin/resync.hpp"

#include "fixtures.hpp"
#include "resync_fixtures.hpp"

using namespace origin;
using namespace origin::fixtures;

namespace {

SyncPair pair_of(const Word& u, const std::vector<std::pair<Sym, int>>& out) {
  SyncPair p;
  p.input = u;
  for (const auto& [s, o] : out) p.output.push_back({s, o});
  return p;
}

/// All retagged variants of T's pairs admitted by the direct semantics.
std::set<SyncPair> closure_oracle(const Resynchronizer& r, const TwoWayTransducer& t,
                                  const Word& u, int maxOut) {
  std::set<SyncPair> out;
  int n = static_cast<int>(u.size());
  for (const auto& src : enumerate_sync_pairs(t, u, maxOut)) {
    bool marker = false;
    for (const auto& [s, o] : src.output)
      if (o < 1 || o > n) marker = true;
    if (marker) continue;
    int len = static_cast<int>(src.output.size());
    if (len == 0) {
      if (resync_semantics(r, src, src)) out.insert(src);
      continue;
    }
    std::vector<int> z(len, 1);
    for (;;) {
      SyncPair tgt;
      tgt.input = u;
      for (int i = 0; i < len; ++i) tgt.output.push_back({src.output[i].first, z[i]});
      if (resync_semantics(r, src, tgt)) out.insert(tgt);
      int i = 0;
      while (i < len && ++z[i] > n) z[i++] = 1;
      if (i == len) break;
    }
  }
  return out;
}

void check_apply_matches_oracle(const Resynchronizer& r, const TwoWayTransducer& t,
                                int maxLen, int maxOut) {
  Applied ap = apply(r, t, universal_nfa(t.input_alphabet));
  for (const auto& u : all_words_up_to(t.input_alphabet, maxLen)) {
    INFO("input \"" << [&] {
      std::string s;
      for (const auto& a : u) s += a;
      return s;
    }() << "\"");
    CHECK(image_pairs(ap, u, maxOut) == closure_oracle(r, t, u, maxOut));
  }
}

int max_matching_sources(const MsoFormula& gamma, int params, int maxLen) {
  // Direct counting: over all words, parameter sets and target positions,
  // the largest number of source positions the constraint admits.
  int best = 0;
  for (const auto& u : all_words_up_to({"a", "b"}, maxLen)) {
    int n = static_cast<int>(u.size());
    std::vector<std::set<int>> subsets;
    for (unsigned long m = 0; m < (1ul << n); ++m) {
      std::set<int> s;
      for (int i = 0; i < n; ++i)
        if (m & (1ul << i)) s.insert(i + 1);
      subsets.push_back(s);
    }
    std::vector<std::size_t> odo(params, 0);
    for (;;) {
      Assignment a;
      for (int p = 0; p < params; ++p) a.sets["I" + std::to_string(p + 1)] = subsets[odo[p]];
      for (int z = 1; z <= n; ++z) {
        int cnt = 0;
        for (int y = 1; y <= n; ++y) {
          Assignment b = a;
          b.pos["y"] = y;
          b.pos["z"] = z;
          if (evaluate(gamma, u, b)) ++cnt;
        }
        best = std::max(best, cnt);
      }
      std::size_t p = 0;
      while (p < odo.size() && ++odo[p] == subsets.size()) odo[p++] = 0;
      if (p == odo.size()) break;
      if (params == 0) break;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("resynchronizer JSON parsing and guard selection") {
  nlohmann::json j = {
      {"input_params", {"I1"}},
      {"output_params", {"O1"}},
      {"alpha", "(exists1 x (in x I1))"},
      {"gamma", {{"x:1", "(succ y z)"}, {"*", "(eq y z)"}}},
      {"delta", {{"x,*", "(lt z zp)"}, {"default", "true"}}},
  };
  Resynchronizer r = resync_from_json(j);
  CHECK(r.input_params == std::vector<std::string>{"I1"});
  CHECK(r.beta.kind == MsoFormula::kTrue);
  CHECK(format_formula(r.gamma_for({"x", {1}})) == "(succ y z)");
  CHECK(format_formula(r.gamma_for({"x", {0}})) == "(eq y z)");
  CHECK(format_formula(r.gamma_for({"w", {1}})) == "(eq y z)");
  CHECK(format_formula(r.delta_for({"x", {0}}, {"w", {0}})) == "(lt z zp)");
  CHECK(r.delta_for({"w", {0}}, {"x", {0}}).kind == MsoFormula::kTrue);

  Resynchronizer none = resync_from_json(nlohmann::json::object());
  CHECK(format_formula(none.gamma_for({"q", {}})) == "(eq y z)");

  Resynchronizer bad;
  bad.delta.emplace_back("x", parse_formula("true"));  // missing second part
  CHECK_THROWS_AS(bad.delta_for({"x", {}}, {"x", {}}), InputError);
}

TEST_CASE("direct semantics on hand-checked cases") {
  Word u = {"a", "a", "a"};
  auto src = pair_of(u, {{"x", 1}, {"x", 2}, {"x", 3}});

  CHECK(resync_semantics(r_identity(), src, src));
  CHECK_FALSE(resync_semantics(r_identity(), src, pair_of(u, {{"x", 1}, {"x", 2}, {"x", 2}})));

  auto shifted = pair_of(u, {{"x", 2}, {"x", 3}, {"x", 2}});
  CHECK(resync_semantics(r_adjacent(), src, shifted));
  CHECK(resync_semantics(r_adjacent(), src, pair_of(u, {{"x", 2}, {"x", 1}, {"x", 2}})));
  CHECK_FALSE(resync_semantics(r_adjacent(), src, src));  // must move by one
  CHECK_FALSE(resync_semantics(r_adjacent(), src, pair_of(u, {{"x", 3}, {"x", 3}, {"x", 2}})));

  // Different letters or lengths never match.
  CHECK_FALSE(resync_semantics(r_identity(), src, pair_of(u, {{"x", 1}, {"x", 2}})));
  CHECK_FALSE(resync_semantics(r_identity(), src, pair_of({"a", "a"}, {{"x", 1}, {"x", 2}, {"x", 3}})));

  // Marker origins are outside the semantics.
  CHECK_THROWS_AS(resync_semantics(r_identity(), pair_of(u, {{"x", 0}}), pair_of(u, {{"x", 0}})),
                  InputError);

  auto first = pair_of(u, {{"x", 1}});
  auto last = pair_of(u, {{"x", 3}});
  CHECK(resync_semantics(r_first_to_last(), first, last));
  CHECK_FALSE(resync_semantics(r_first_to_last(), last, first));
  CHECK(resync_semantics(r_last_to_first(), last, first));

  // Parity: odd output positions shift right, even ones shift left.
  auto par_src = pair_of(u, {{"x", 2}, {"x", 2}});
  CHECK(resync_semantics(r_parity(), par_src, pair_of(u, {{"x", 3}, {"x", 1}})));
  CHECK_FALSE(resync_semantics(r_parity(), par_src, pair_of(u, {{"x", 1}, {"x", 3}})));

  // Consecutive-origin constraints act on the target side.
  auto mono_src = pair_of(u, {{"x", 2}, {"x", 1}});
  CHECK_FALSE(resync_semantics(r_monotone(), mono_src, mono_src));
  CHECK(resync_semantics(r_monotone(), pair_of(u, {{"x", 1}, {"x", 2}}),
                         pair_of(u, {{"x", 1}, {"x", 2}})));
  CHECK(resync_semantics(r_decreasing(), mono_src, mono_src));
}

TEST_CASE("boundedness agrees with direct source counting") {
  std::vector<Sym> sigma{"a", "b"};
  CHECK(is_bounded(r_identity(), sigma));
  CHECK(is_bounded(r_adjacent(), sigma));
  CHECK(is_bounded(r_first_to_last(), sigma));
  CHECK(is_bounded(r_parity(), sigma));
  CHECK(is_bounded(r_marked_targets(), sigma));
  CHECK_FALSE(is_bounded(r_universal(), sigma));

  // An unbounded constraint mentioning letters: any a-position may source z.
  Resynchronizer all_as;
  all_as.gamma.emplace_back("default", parse_formula("(label a y)"));
  CHECK_FALSE(is_bounded(all_as, sigma));

  // Counting oracle: bounded entries stop growing, unbounded ones track the
  // word length.
  CHECK(max_matching_sources(r_adjacent().gamma[0].second, 0, 4) == 2);
  CHECK(max_matching_sources(r_first_to_last().gamma[0].second, 0, 4) == 1);
  CHECK(max_matching_sources(r_universal().gamma[0].second, 0, 4) == 4);
  CHECK(max_matching_sources(all_as.gamma[0].second, 0, 4) == 4);

  // Default working alphabet for standalone queries.
  CHECK(default_sigma_for(all_as) == std::vector<Sym>{"_", "a"});
}

TEST_CASE("identity application reproduces the original semantics") {
  for (const auto& t : {identity_copier({"a", "b"}), roundtrip_copier({"a", "b"})})
    check_apply_matches_oracle(r_identity(), t, 2, 6);
}

TEST_CASE("input constraints restrict the annotated inputs") {
  Resynchronizer r = r_identity();
  r.alpha = parse_formula("(forall1 x (label a x))");
  TwoWayTransducer t = identity_copier({"a", "b"});
  Applied ap = apply(r, t, universal_nfa(t.input_alphabet));
  CHECK(image_pairs(ap, {"a", "a"}, 4) ==
        std::set<SyncPair>{pair_of({"a", "a"}, {{"a", 1}, {"a", 2}})});
  CHECK(image_pairs(ap, {"a", "b"}, 4).empty());
  check_apply_matches_oracle(r, t, 2, 4);
}

TEST_CASE("output constraints filter productions") {
  Resynchronizer r = r_identity();
  r.beta = parse_formula("(exists1 x (first x))");  // nonempty outputs only
  TwoWayTransducer t = identity_copier({"a", "b"});
  Applied ap = apply(r, t, universal_nfa(t.input_alphabet));
  CHECK(image_pairs(ap, {}, 4).empty());
  CHECK_FALSE(image_pairs(ap, {"b"}, 4).empty());
  check_apply_matches_oracle(r, t, 2, 4);

  Resynchronizer rf = r_identity();
  rf.beta = MsoFormula::mk(MsoFormula::kFalse);
  Applied apf = apply(rf, t, universal_nfa(t.input_alphabet));
  CHECK(image_pairs(apf, {"a"}, 4).empty());
}

TEST_CASE("origin moves: adjacent-shift application matches the oracle") {
  check_apply_matches_oracle(r_adjacent(), identity_copier({"a", "b"}), 3, 3);
  check_apply_matches_oracle(r_adjacent(), roundtrip_copier({"a"}), 2, 6);
}

TEST_CASE("origin moves: first-to-last application matches the oracle") {
  check_apply_matches_oracle(r_first_to_last(), identity_copier({"a", "b"}), 3, 3);
  check_apply_matches_oracle(r_first_to_last(), first_position_emitter(), 3, 2);
}

TEST_CASE("origin moves with input parameters match the oracle") {
  check_apply_matches_oracle(r_marked_targets(), identity_copier({"a", "b"}), 2, 3);
}

TEST_CASE("output parameters: parity shifts match the oracle") {
  check_apply_matches_oracle(r_parity(), identity_copier({"a", "b"}), 2, 3);
}

TEST_CASE("word-independent busy form agrees with the enumeration oracle") {
  std::mt19937_64 rng(20260826);
  std::vector<TwoWayTransducer> pool{identity_copier({"a", "b"}),
                                     roundtrip_copier({"a", "b"}),
                                     reverse_origin_copier()};
  while (pool.size() < 8) {
    auto t = random_transducer(rng);
    bool markerOut = false;
    for (const auto& tr : t.transitions)
      if (is_marker(tr.read) && !nfa_is_empty(minus_epsilon(trim(tr.output))))
        markerOut = true;
    if (!markerOut) pool.push_back(t);
  }
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& t = pool[k];
    std::vector<Sym> annotAlpha;
    TwoWayTransducer tb = rdetail::normalized_letters(t, annotAlpha);
    for (const auto& u : all_words_up_to(t.input_alphabet, 2)) {
      Word w = annotate_word(t, u);
      std::set<TaggedOutput> expect, got;
      for (const auto& p : enumerate_sync_pairs(t, u, 5)) expect.insert(p.output);
      for (const auto& p : enumerate_sync_pairs(tb, w, 5)) got.insert(p.output);
      INFO("transducer " << k << ", |u|=" << u.size());
      CHECK(got == expect);
    }
  }
}

TEST_CASE("consecutive-origin constraints match the oracle") {
  check_apply_matches_oracle(r_monotone(), identity_copier({"a", "b"}), 2, 4);
  check_apply_matches_oracle(r_monotone(), roundtrip_copier({"a"}), 2, 6);
  check_apply_matches_oracle(r_decreasing(), roundtrip_copier({"a"}), 2, 6);
  check_apply_matches_oracle(r_decreasing(), reverse_origin_copier(), 2, 4);
}

TEST_CASE("containment modulo the identity matches plain containment") {
  std::mt19937_64 rng(777);
  int done = 0;
  for (int i = 0; done < 10 && i < 300; ++i) {
    auto t1 = random_transducer(rng);
    auto t2 = random_transducer(rng);
    bool markerOut = false;
    for (const auto* t : {&t1, &t2})
      for (const auto& tr : t->transitions)
        if (is_marker(tr.read) && !nfa_is_empty(minus_epsilon(trim(tr.output))))
          markerOut = true;
    if (markerOut) continue;
    ContainmentResult plain;
    ModuloResult mod;
    try {
      plain = origin_containment(t1, t2);
      mod = containment_modulo(t1, t2, r_identity());
    } catch (const BudgetError&) {
      continue;
    }
    ++done;
    INFO("pair " << i);
    CHECK(plain.contained == mod.contained);
  }
  CHECK(done == 10);
}

TEST_CASE("containment modulo moves origins across the word") {
  auto tf = first_position_emitter();
  auto tl = last_position_emitter();
  auto hold = containment_modulo(tf, tl, r_last_to_first());
  CHECK(hold.contained);
  auto fail = containment_modulo(tl, tf, r_last_to_first());
  REQUIRE_FALSE(fail.contained);
  CHECK(fail.confirmed);
  CHECK(fail.input.size() >= 2);  // one-letter inputs agree

  // Plain containment fails in both directions from length two.
  CHECK_FALSE(origin_containment(tf, tl).contained);
  CHECK_FALSE(origin_containment(tl, tf).contained);
}

TEST_CASE("containment modulo adjacent shifts is not transitive") {
  auto t1 = position_k_emitter(1);
  auto t2 = position_k_emitter(2);
  auto t3 = position_k_emitter(3);
  CHECK(containment_modulo(t1, t2, r_adjacent()).contained);
  CHECK(containment_modulo(t2, t3, r_adjacent()).contained);
  auto res = containment_modulo(t1, t3, r_adjacent());
  REQUIRE_FALSE(res.contained);
  CHECK(res.confirmed);
}

TEST_CASE("unbounded resynchronizers are rejected") {
  auto t = identity_copier({"a", "b"});
  CHECK_THROWS_WITH(containment_modulo(t, t, r_universal()),
                    "resynchronizer not bounded");
}
