// Shared hand-built transducer fixtures for the test suite.
// SPDX-License-Identifier: MIT

#ifndef ORIGIN_TESTS_FIXTURES_HPP_
#define ORIGIN_TESTS_FIXTURES_HPP_

#include "origin/transducer.hpp"

namespace origin::fixtures {

/// One-way copier: outputs each letter read at its own position.
inline TwoWayTransducer identity_copier(const std::vector<Sym>& sigma) {
  TwoWayTransducer t;
  t.input_alphabet = sigma;
  t.output_alphabet = sigma;
  t.add_state("c0", false);
  t.initial = {0};
  t.final_ = {0};
  for (const auto& a : sigma) t.add_transition_words("c0", a, {{a}}, "c0", false);
  return t;
}

/// Forward-backward-forward copier: copies the input left to right, then
/// copies positions n-1..1 while walking back (skipping the last letter),
/// bounces off the left marker and copies the whole input again.
inline TwoWayTransducer roundtrip_copier(const std::vector<Sym>& sigma) {
  TwoWayTransducer t;
  t.input_alphabet = sigma;
  t.output_alphabet = sigma;
  t.add_state("s0", false);
  t.add_state("s1", true);
  t.add_state("s2", true);
  t.add_state("s3", false);
  t.initial = {0};
  t.final_ = {3};
  for (const auto& a : sigma) {
    t.add_transition_words("s0", a, {{a}}, "s0", false);
    t.add_transition_words("s1", a, {{}}, "s2", true);
    t.add_transition_words("s2", a, {{a}}, "s2", true);
    t.add_transition_words("s3", a, {{a}}, "s3", false);
  }
  t.add_transition_words("s0", kRightMarker, {{}}, "s1", true);
  t.add_transition_words("s2", kLeftMarker, {{}}, "s3", false);
  return t;
}

/// Unary copier emitting the letters in reverse position order: classically
/// equivalent to the identity copier on a*, origin-inequivalent from length 2.
inline TwoWayTransducer reverse_origin_copier() {
  TwoWayTransducer t;
  t.input_alphabet = {"a"};
  t.output_alphabet = {"a"};
  t.add_state("d0", false);
  t.add_state("d1", true);
  t.add_state("d2", false);
  t.initial = {0};
  t.final_ = {2};
  t.add_transition_words("d0", "a", {{}}, "d0", false);
  t.add_transition_words("d0", kRightMarker, {{}}, "d1", true);
  t.add_transition_words("d1", "a", {{"a"}}, "d1", true);
  t.add_transition_words("d1", kLeftMarker, {{}}, "d2", false);
  t.add_transition_words("d2", "a", {{}}, "d2", false);
  return t;
}

}  // namespace origin::fixtures

#endif  // ORIGIN_TESTS_FIXTURES_HPP_
