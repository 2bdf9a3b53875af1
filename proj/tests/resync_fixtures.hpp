// Shared resynchronizer and emitter fixtures for the test suite.
// SPDX-License-Identifier: MIT

#ifndef ORIGIN_TESTS_RESYNC_FIXTURES_HPP_
#define ORIGIN_TESTS_RESYNC_FIXTURES_HPP_

#include "origin/resync.hpp"
#include "origin/transducer.hpp"

namespace origin::fixtures {

inline Resynchronizer r_identity() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(eq y z)"));
  return r;
}

/// Every output position may move from its source origin by exactly one.
inline Resynchronizer r_adjacent() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(or (succ z y) (succ y z))"));
  return r;
}

/// Arbitrary origin moves; not bounded.
inline Resynchronizer r_universal() {
  Resynchronizer r;
  r.gamma.emplace_back("default", MsoFormula::mk(MsoFormula::kTrue));
  return r;
}

/// Moves origins from the first input position to the last.
inline Resynchronizer r_first_to_last() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(and (first y) (last z))"));
  return r;
}

inline Resynchronizer r_last_to_first() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(and (last y) (first z))"));
  return r;
}

/// One output parameter holding exactly the odd output positions; marked
/// positions shift right by one, unmarked ones shift left by one.
inline Resynchronizer r_parity() {
  Resynchronizer r;
  r.output_params = {"O"};
  r.beta = parse_formula(
      "(and (forall1 x (or (not (first x)) (in x O)))"
      " (forall1 x (forall1 w (or (not (succ x w))"
      " (or (and (in x O) (not (in w O))) (and (not (in x O)) (in w O)))))))");
  r.gamma.emplace_back("*:1", parse_formula("(succ y z)"));
  r.gamma.emplace_back("*:0", parse_formula("(succ z y)"));
  return r;
}

/// Origins may stay or move, but only onto positions in the guessed input
/// set I; exercises input parameters end to end.
inline Resynchronizer r_marked_targets() {
  Resynchronizer r;
  r.input_params = {"I"};
  r.gamma.emplace_back("default", parse_formula("(and (eq y z) (in z I))"));
  return r;
}

/// Identity on origins, but consecutive output origins must not decrease.
inline Resynchronizer r_monotone() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(eq y z)"));
  r.delta.emplace_back("default", parse_formula("(not (lt zp z))"));
  return r;
}

/// Identity on origins with strictly decreasing consecutive output origins.
inline Resynchronizer r_decreasing() {
  Resynchronizer r;
  r.gamma.emplace_back("default", parse_formula("(eq y z)"));
  r.delta.emplace_back("default", parse_formula("(lt zp z)"));
  return r;
}

/// Emits one x whose origin is the first input position, on inputs a+.
inline TwoWayTransducer first_position_emitter() {
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"x"};
  t.add_state("e0", false);
  t.add_state("e1", false);
  t.initial = {0};
  t.final_ = {1};
  t.add_transition_words("e0", "a", {{"x"}}, "e1", false);
  t.add_transition_words("e1", "a", {{}}, "e1", false);
  return t;
}

/// Emits one x whose origin is the last input position, on inputs a+.
inline TwoWayTransducer last_position_emitter() {
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"x"};
  t.add_state("e0", false);
  t.add_state("e1", false);
  t.initial = {0};
  t.final_ = {1};
  t.add_transition_words("e0", "a", {{}}, "e0", false);
  t.add_transition_words("e0", "a", {{"x"}}, "e1", false);
  return t;
}

/// On inputs a^n with n >= 3: reads three letters, walks back and emits one
/// x at position k (1, 2 or 3), then runs to the right end.
inline TwoWayTransducer position_k_emitter(int k) {
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"x"};
  t.add_state("r0", false);
  t.add_state("r1", false);
  t.add_state("r2", false);
  t.add_state("r3", false);
  t.add_state("l4", true);
  t.add_state("l3", true);
  t.add_state("l2", true);
  t.add_state("w", false);
  t.initial = {0};
  t.final_ = {7};
  t.add_transition_words("r0", "a", {{}}, "r1", false);
  t.add_transition_words("r1", "a", {{}}, "r2", false);
  t.add_transition_words("r2", "a", {{}}, "r3", false);
  t.add_transition_words("r3", "a", {{}}, "l4", true);
  t.add_transition_words("r3", kRightMarker, {{}}, "l4", true);
  t.add_transition_words("l4", "a", {{}}, "l3", true);
  t.add_transition_words("l3", "a", {{}}, "l2", true);
  const char* from = k == 3 ? "l4" : k == 2 ? "l3" : "l2";
  t.add_transition_words(from, "a", {{"x"}}, "w", false);
  t.add_transition_words("w", "a", {{}}, "w", false);
  return t;
}

}  // namespace origin::fixtures

#endif  // ORIGIN_TESTS_RESYNC_FIXTURES_HPP_
