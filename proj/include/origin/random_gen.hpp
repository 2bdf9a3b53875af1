/* random_gen.hpp -- seeded random generation of small well-formed two-way
 * transducers for cross-validation suites.
 *
 * SPDX-License-Identifier: MIT
 */

#ifndef ORIGIN_RANDOM_GEN_HPP_
#define ORIGIN_RANDOM_GEN_HPP_

#include <random>
#include <set>
#include <string>
#include <vector>

#include "origin/transducer.hpp"

namespace origin {

struct RandomTransducerOptions {
  std::vector<Sym> input_alphabet{"a", "b"};
  std::vector<Sym> output_alphabet{"x", "y"};
  int min_states = 2;
  int max_states = 3;
  int min_transitions = 3;
  int max_transitions = 8;
  int max_output_words = 2;   // non-empty words per transition language
  int max_output_len = 2;
  double epsilon_prob = 0.35;  // chance a language also contains the empty word
  double marker_read_prob = 0.25;
};

/// Draws a transducer satisfying all well-formedness rules.  State 0 is the
/// right-reading initial state; state 1 is left-reading so both classes are
/// always inhabited.
inline TwoWayTransducer random_transducer(std::mt19937_64& rng,
                                          const RandomTransducerOptions& o = {}) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  TwoWayTransducer t;
  t.input_alphabet = o.input_alphabet;
  t.output_alphabet = o.output_alphabet;
  int ns = o.min_states + pick(o.max_states - o.min_states + 1);
  if (ns < 2) ns = 2;
  for (int i = 0; i < ns; ++i) {
    bool left = (i == 1) || (i >= 2 && coin(rng) < 0.5);
    if (i == 0) left = false;
    t.add_state("q" + std::to_string(i), left);
  }
  t.initial.push_back(0);
  for (int i = 0; i < ns; ++i)
    if (coin(rng) < 0.5) t.final_.push_back(i);
  if (t.final_.empty()) t.final_.push_back(pick(ns));

  std::vector<int> lefts, rights;
  for (int i = 0; i < ns; ++i)
    (t.states[i].left_reading ? lefts : rights).push_back(i);

  std::set<std::tuple<int, Sym, int, bool>> used;
  int want = o.min_transitions + pick(o.max_transitions - o.min_transitions + 1);
  for (int attempt = 0; attempt < want * 4 && static_cast<int>(t.transitions.size()) < want;
       ++attempt) {
    int from = pick(ns);
    Sym read;
    bool leftward;
    if (coin(rng) < o.marker_read_prob) {
      // Markers force direction: the left marker bounces right, the right
      // marker bounces left, and each is readable by one class only.
      if (t.states[from].left_reading) { read = kLeftMarker; leftward = false; }
      else { read = kRightMarker; leftward = true; }
    } else {
      read = o.input_alphabet[pick(static_cast<int>(o.input_alphabet.size()))];
      leftward = coin(rng) < 0.5;
    }
    const auto& pool = leftward ? lefts : rights;
    int to = pool[pick(static_cast<int>(pool.size()))];
    if (!used.insert({from, read, to, leftward}).second) continue;
    std::vector<Word> words;
    if (coin(rng) < o.epsilon_prob) words.push_back({});
    int nw = pick(o.max_output_words + 1);
    for (int w = 0; w < nw; ++w) {
      Word word;
      int len = 1 + pick(o.max_output_len);
      for (int j = 0; j < len; ++j)
        word.push_back(o.output_alphabet[pick(static_cast<int>(o.output_alphabet.size()))]);
      words.push_back(word);
    }
    if (words.empty()) words.push_back({});
    t.add_transition_words(t.states[from].name, read, words, t.states[to].name, leftward);
  }
  return t;
}

/// All words over the alphabet of length at most maxLen, shortlex order.
inline std::vector<Word> all_words_up_to(const std::vector<Sym>& alphabet, int maxLen) {
  std::vector<Word> out{{}};
  std::size_t lo = 0;
  for (int len = 1; len <= maxLen; ++len) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

}  // namespace origin

#endif  // ORIGIN_RANDOM_GEN_HPP_
