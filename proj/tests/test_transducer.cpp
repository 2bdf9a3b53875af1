// Unit tests for the two-way transducer core and the enumeration oracle.
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "origin/transducer.hpp"

using namespace origin;

TEST_CASE("validate accepts the fixtures and reports violations") {
  auto ok = validate(fixtures::identity_copier({"a", "b"}));
  CHECK(ok.empty());
  CHECK(validate(fixtures::roundtrip_copier({"a", "b", "c"})).empty());

  TwoWayTransducer bad;
  bad.input_alphabet = {"a"};
  bad.output_alphabet = {"a"};
  bad.add_state("p", true);
  bad.add_state("q", false);
  bad.initial = {0};  // left-reading initial: violation
  bad.final_ = {1};
  // Leftward transition on the left marker: violation.
  bad.add_transition_words("p", kLeftMarker, {{}}, "p", true);
  // Empty output language: violation.
  bad.add_transition("q", "a", empty_nfa({"a"}), "q", false);
  auto errs = validate(bad);
  CHECK(errs.size() >= 3);
}

TEST_CASE("origin of a step follows the reading class") {
  auto t = fixtures::roundtrip_copier({"a"});
  // s0 is right-reading, s1 left-reading.
  CHECK(origin_of_step(t, 0, 3) == 3);
  CHECK(origin_of_step(t, 1, 3) == 2);
  CHECK(origin_of_step(t, 1, 1) == 0);
}

TEST_CASE("identity copier oracle") {
  auto t = fixtures::identity_copier({"a", "b"});
  auto ps = enumerate_sync_pairs(t, {"a", "b"}, 2);
  REQUIRE(ps.size() == 1);
  SyncPair expect{{"a", "b"}, {{"a", 1}, {"b", 2}}};
  CHECK(*ps.begin() == expect);
  // maxOut too small: no pair fits.
  CHECK(enumerate_sync_pairs(t, {"a", "b"}, 1).empty());
  // Empty input accepts with empty output.
  auto pe = enumerate_sync_pairs(t, {}, 0);
  REQUIRE(pe.size() == 1);
  CHECK(pe.begin()->output.empty());
}

TEST_CASE("roundtrip copier reproduces the three-letter trace") {
  auto t = fixtures::roundtrip_copier({"a", "b", "c"});
  auto ps = enumerate_sync_pairs(t, {"a", "b", "c"}, 8);
  REQUIRE(ps.size() == 1);
  TaggedOutput expect{{"a", 1}, {"b", 2}, {"c", 3}, {"b", 2},
                      {"a", 1}, {"a", 1}, {"b", 2}, {"c", 3}};
  CHECK(ps.begin()->output == expect);
}

TEST_CASE("bounded containment distinguishes origin-different copiers") {
  auto id = fixtures::identity_copier({"a"});
  auto rev = fixtures::reverse_origin_copier();
  std::vector<Word> inputs{{}, {"a"}, {"a", "a"}};
  CHECK_FALSE(bounded_containment(id, id, inputs, 4).has_value());
  auto cex = bounded_containment(id, rev, inputs, 4);
  REQUIRE(cex.has_value());
  CHECK(cex->input == Word{"a", "a"});
  TaggedOutput expect{{"a", 1}, {"a", 2}};
  CHECK(cex->output == expect);
  // Classical (origin-erased) outputs coincide on these inputs.
  for (const auto& u : inputs) {
    auto p1 = enumerate_sync_pairs(id, u, 4);
    auto p2 = enumerate_sync_pairs(rev, u, 4);
    std::set<Word> w1, w2;
    for (const auto& p : p1) {
      Word w;
      for (auto& [s, o] : p.output) w.push_back(s);
      w1.insert(w);
    }
    for (const auto& p : p2) {
      Word w;
      for (auto& [s, o] : p.output) w.push_back(s);
      w2.insert(w);
    }
    CHECK(w1 == w2);
  }
}

TEST_CASE("single-letter form preserves the origin semantics") {
  // A transducer with a two-letter output word on one transition.
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"x", "y"};
  t.add_state("q", false);
  t.initial = {0};
  t.final_ = {0};
  t.add_transition_words("q", "a", {{"x", "y"}}, "q", false);
  auto s = single_letter_form(t);
  CHECK(validate(s).empty());
  for (const auto& tr : s.transitions)
    for (const auto& w : enumerate_words(tr.output, 5)) CHECK(w.size() <= 1);
  auto ps = enumerate_sync_pairs(s, {"a"}, 4);
  REQUIRE(ps.size() == 1);
  TaggedOutput expect{{"x", 1}, {"y", 1}};
  CHECK(ps.begin()->output == expect);

  // Infinite output language x*: pairs x^k, all at origin 1.
  TwoWayTransducer t2;
  t2.input_alphabet = {"a"};
  t2.output_alphabet = {"x"};
  t2.add_state("q", false);
  t2.initial = {0};
  t2.final_ = {0};
  Nfa xstar = universal_nfa({"x"});
  t2.transitions.push_back({0, "a", xstar, 0, false});
  auto s2 = single_letter_form(t2);
  CHECK(validate(s2).empty());
  auto a1 = enumerate_sync_pairs(t2, {"a"}, 3);
  auto a2 = enumerate_sync_pairs(s2, {"a"}, 3);
  CHECK(a1 == a2);
  CHECK(a1.size() == 4);  // x^0..x^3 at origin 1

  // Fixture suite: oracle equality on all inputs up to length 3.
  for (auto base : {fixtures::roundtrip_copier({"a", "b"}),
                    fixtures::identity_copier({"a", "b"})}) {
    auto slf = single_letter_form(base);
    CHECK(validate(slf).empty());
    std::vector<Word> inputs{{}};
    for (int len = 0; len < 3; ++len) {
      std::size_t sz = inputs.size();
      for (std::size_t i = 0; i < sz; ++i)
        if (static_cast<int>(inputs[i].size()) == len)
          for (Sym c : {std::string("a"), std::string("b")}) {
            Word w = inputs[i];
            w.push_back(c);
            inputs.push_back(w);
          }
    }
    for (const auto& u : inputs)
      CHECK(enumerate_sync_pairs(base, u, 4) == enumerate_sync_pairs(slf, u, 4));
  }
}

TEST_CASE("input lifting ignores the extension track") {
  auto t = fixtures::identity_copier({"a", "b"});
  auto l = lift_input(t, {"0", "1"});
  CHECK(validate(l).empty());
  Word u{enc_tuple({"a", "0"}), enc_tuple({"b", "1"})};
  auto ps = enumerate_sync_pairs(l, u, 2);
  REQUIRE(ps.size() == 1);
  TaggedOutput expect{{"a", 1}, {"b", 2}};
  CHECK(ps.begin()->output == expect);
}

TEST_CASE("oracle erasure drops padding letters without charging the budget") {
  // Outputs "# x" per letter; erased set {#} should behave like outputting x.
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"x", "#"};
  t.add_state("q", false);
  t.initial = {0};
  t.final_ = {0};
  t.add_transition_words("q", "a", {{"#", "x"}}, "q", false);
  auto ps = enumerate_sync_pairs(t, {"a", "a"}, 2, {"#"});
  REQUIRE(ps.size() == 1);
  TaggedOutput expect{{"x", 1}, {"x", 2}};
  CHECK(ps.begin()->output == expect);
}
