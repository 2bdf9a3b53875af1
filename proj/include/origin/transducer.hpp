/* transducer.hpp -- nondeterministic two-way word transducers with regular
 * output languages, origin-tagged semantics, and the bounded brute-force
 * oracle that enumerates synchronized pairs.
 *
 * SPDX-License-Identifier: MIT
 *
 * Conventions (fixed throughout the library):
 *  - tape positions are 1..|u|+1; w(0) = "^" (left marker), w(|u|+1) = "$"
 *    (right marker);
 *  - a right-reading state at position i reads w(i); a left-reading state at
 *    position i reads w(i-1);
 *  - moves: right-reading + right -> i+1; right-reading + left -> i;
 *    left-reading + right -> i; left-reading + left -> i-1;
 *  - the origin of a step from (q,i) is i for right-reading q, i-1 otherwise.
 */

#ifndef ORIGIN_TRANSDUCER_HPP_
#define ORIGIN_TRANSDUCER_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "origin/nfa.hpp"
#include "origin/symbols.hpp"

namespace origin {

struct TwoWayTransducer {
  std::vector<Sym> input_alphabet;
  std::vector<Sym> output_alphabet;

  struct State {
    std::string name;
    bool left_reading = false;  // false: right-reading
  };
  std::vector<State> states;
  std::vector<int> initial;  // must be right-reading
  std::vector<int> final_;

  struct Transition {
    int from = 0;
    Sym read;      // input symbol, or "^"/"$"
    Nfa output;    // non-empty language over the output alphabet
    int to = 0;
    bool leftward = false;
  };
  std::vector<Transition> transitions;

  int state_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(states.size()); ++i)
      if (states[i].name == name) return i;
    return -1;
  }

  int add_state(const std::string& name, bool left_reading) {
    states.push_back({name, left_reading});
    return static_cast<int>(states.size()) - 1;
  }

  void add_transition(const std::string& from, const Sym& read, const Nfa& out,
                      const std::string& to, bool leftward) {
    Transition t;
    t.from = state_index(from);
    t.read = read;
    t.output = out;
    t.to = state_index(to);
    t.leftward = leftward;
    if (t.from < 0 || t.to < 0) throw InputError("add_transition: unknown state");
    transitions.push_back(t);
  }

  /// Finite-language convenience: output given explicitly as a word list.
  void add_transition_words(const std::string& from, const Sym& read,
                            const std::vector<Word>& words, const std::string& to,
                            bool leftward) {
    Nfa lang = empty_nfa(output_alphabet);
    bool first = true;
    for (const auto& w : words) {
      if (first) {
        lang = single_word_nfa(output_alphabet, w);
        first = false;
      } else {
        lang = plus_word(lang, w);
      }
    }
    add_transition(from, read, lang, to, leftward);
  }
};

/// Origin of a step taken from configuration (q, i).
inline int origin_of_step(const TwoWayTransducer& t, int q, int i) {
  return t.states[q].left_reading ? i - 1 : i;
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

inline std::vector<std::string> validate(const TwoWayTransducer& t) {
  std::vector<std::string> errs;
  for (const auto& s : t.input_alphabet)
    if (is_marker(s)) errs.push_back("input alphabet contains a marker token: " + s);
  for (int q : t.initial)
    if (t.states[q].left_reading)
      errs.push_back("initial state is left-reading: " + t.states[q].name);
  for (std::size_t k = 0; k < t.transitions.size(); ++k) {
    const auto& tr = t.transitions[k];
    std::string tag = "transition #" + std::to_string(k) + " (" +
                      t.states[tr.from].name + "," + tr.read + ")";
    if (tr.read != kLeftMarker && tr.read != kRightMarker) {
      bool known = false;
      for (const auto& s : t.input_alphabet)
        if (s == tr.read) { known = true; break; }
      if (!known) errs.push_back(tag + ": read symbol not in input alphabet");
    }
    if (tr.read == kLeftMarker && tr.leftward)
      errs.push_back(tag + ": leftward transition on the left marker");
    if (tr.read == kRightMarker && !tr.leftward)
      errs.push_back(tag + ": rightward transition on the right marker");
    if (tr.leftward && !t.states[tr.to].left_reading)
      errs.push_back(tag + ": leftward target must be left-reading");
    if (!tr.leftward && t.states[tr.to].left_reading)
      errs.push_back(tag + ": rightward target must be right-reading");
    // Read-class constraint: "^" is only readable by left-reading states,
    // "$" only by right-reading states.
    if (tr.read == kLeftMarker && !t.states[tr.from].left_reading)
      errs.push_back(tag + ": only left-reading states can read the left marker");
    if (tr.read == kRightMarker && t.states[tr.from].left_reading)
      errs.push_back(tag + ": only right-reading states can read the right marker");
    if (nfa_is_empty(tr.output)) errs.push_back(tag + ": empty output language");
  }
  // At most one language per (source, symbol, target, direction).
  std::set<std::tuple<int, Sym, int, bool>> keys;
  for (const auto& tr : t.transitions)
    if (!keys.insert({tr.from, tr.read, tr.to, tr.leftward}).second)
      errs.push_back("duplicate transition (" + t.states[tr.from].name + "," +
                     tr.read + "," + t.states[tr.to].name + ")");
  return errs;
}

// ---------------------------------------------------------------------------
// The bounded enumeration oracle.
// ---------------------------------------------------------------------------

using TaggedOutput = std::vector<std::pair<Sym, int>>;

struct SyncPair {
  Word input;
  TaggedOutput output;
  bool operator<(const SyncPair& o) const {
    if (input != o.input) return input < o.input;
    return output < o.output;
  }
  bool operator==(const SyncPair& o) const {
    return input == o.input && output == o.output;
  }
};

/// Exactly { (u,v) in the origin semantics of T : |v| <= maxOut }, where
/// letters in `erase` (e.g. busy padding) do not count toward the budget and
/// are dropped from the reported outputs.
inline std::set<SyncPair> enumerate_sync_pairs(const TwoWayTransducer& t, const Word& u,
                                               int maxOut,
                                               const std::set<Sym>& erase = {}) {
  int n = static_cast<int>(u.size());
  auto read_at = [&](int q, int i) -> Sym {
    int pos = t.states[q].left_reading ? i - 1 : i;
    if (pos == 0) return kLeftMarker;
    if (pos == n + 1) return kRightMarker;
    return u[pos - 1];
  };
  struct Node {
    int q, i;
    TaggedOutput out;
  };
  auto key = [](const Node& nd) {
    json j = json::array();
    j.push_back(nd.q);
    j.push_back(nd.i);
    json o = json::array();
    for (const auto& [s, p] : nd.out) o.push_back(json::array({s, p}));
    j.push_back(o);
    return j.dump();
  };
  std::set<SyncPair> result;
  std::deque<Node> work;
  std::set<std::string> seen;
  std::map<std::size_t, Nfa> proj_cache;  // per-transition erased projections
  auto push = [&](Node nd) {
    std::string k = key(nd);
    if (seen.insert(k).second) work.push_back(std::move(nd));
  };
  for (int q : t.initial) push({q, 1, {}});
  while (!work.empty()) {
    Node nd = std::move(work.front());
    work.pop_front();
    if (nd.i == n + 1 && std::binary_search(t.final_.begin(), t.final_.end(), nd.q))
      result.insert({u, nd.out});
    for (const auto& tr : t.transitions) {
      if (tr.from != nd.q) continue;
      if (tr.read != read_at(nd.q, nd.i)) continue;
      bool lr = t.states[nd.q].left_reading;
      int ni = lr ? (tr.leftward ? nd.i - 1 : nd.i) : (tr.leftward ? nd.i : nd.i + 1);
      if (ni < 1 || ni > n + 1) continue;
      int o = origin_of_step(t, nd.q, nd.i);
      int budget = maxOut - static_cast<int>(nd.out.size());
      // Padding letters do not consume budget and are dropped from the
      // reported outputs, so only the projection of the language matters.
      const Nfa* lang = &tr.output;
      if (!erase.empty()) {
        std::size_t ti = static_cast<std::size_t>(&tr - t.transitions.data());
        auto it = proj_cache.find(ti);
        if (it == proj_cache.end())
          it = proj_cache.emplace(ti, erase_letters(tr.output, erase)).first;
        lang = &it->second;
      }
      for (const auto& v : enumerate_words(*lang, budget)) {
        Node nx;
        nx.q = tr.to;
        nx.i = ni;
        nx.out = nd.out;
        for (const auto& s : v) nx.out.push_back({s, o});
        push(std::move(nx));
      }
    }
  }
  return result;
}

/// Merge transitions sharing (source, symbol, target, direction) by language
/// union; used by constructions that synthesize transitions piecemeal.
inline TwoWayTransducer merge_parallel_transitions(const TwoWayTransducer& t) {
  TwoWayTransducer r = t;
  r.transitions.clear();
  std::map<std::tuple<int, Sym, int, bool>, std::size_t> at;
  for (const auto& tr : t.transitions) {
    auto k = std::make_tuple(tr.from, tr.read, tr.to, tr.leftward);
    auto it = at.find(k);
    if (it == at.end()) {
      at[k] = r.transitions.size();
      r.transitions.push_back(tr);
    } else {
      auto& have = r.transitions[it->second].output;
      if (have.alphabet == tr.output.alphabet)
        have = nfa_union(have, tr.output);
      else
        for (const auto& w : enumerate_words(tr.output, tr.output.n + 1))
          have = plus_word(have, w);
    }
  }
  return r;
}

/// First synchronized pair (by input order, then set order) produced by t1 on
/// one of the inputs but not by t2; nullopt if none within the bounds.
inline std::optional<SyncPair> bounded_containment(const TwoWayTransducer& t1,
                                                   const TwoWayTransducer& t2,
                                                   const std::vector<Word>& inputs,
                                                   int maxOut) {
  for (const auto& u : inputs) {
    auto p1 = enumerate_sync_pairs(t1, u, maxOut);
    auto p2 = enumerate_sync_pairs(t2, u, maxOut);
    for (const auto& p : p1)
      if (!p2.count(p)) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Single-letter form.
// ---------------------------------------------------------------------------

/// Origin-equivalent transducer whose output languages only contain words of
/// length <= 1.  Longer outputs are emitted letter by letter: each emission
/// happens on a transition whose origin is the original position; between
/// emissions the head flips away and epsilon-returns (reading whatever letter
/// is on the neighboring cell).
inline TwoWayTransducer single_letter_form(const TwoWayTransducer& t) {
  TwoWayTransducer r;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  r.states = t.states;
  r.initial = t.initial;
  r.final_ = t.final_;
  auto letter_nfa = [&](const Sym& b) {
    return single_word_nfa(r.output_alphabet, Word{b});
  };
  auto eps_nfa = [&]() { return single_word_nfa(r.output_alphabet, Word{}); };
  // Map (transition, nfa state, phase) -> control state; phase 0 = ready to
  // emit, phase 1 = returning.
  std::map<std::tuple<std::size_t, int, int>, int> ctrl;
  for (std::size_t k = 0; k < t.transitions.size(); ++k) {
    const auto& tr = t.transitions[k];
    bool src_left = t.states[tr.from].left_reading;
    Nfa lang = trim(tr.output);
    auto adj = lang.out_edges();
    if (nfa_accepts_epsilon(lang)) {
      TwoWayTransducer::Transition nt;
      nt.from = tr.from;
      nt.read = tr.read;
      nt.output = eps_nfa();
      nt.to = tr.to;
      nt.leftward = tr.leftward;
      r.transitions.push_back(nt);
    }
    auto get = [&](int s, int phase) {
      auto it = ctrl.find({k, s, phase});
      if (it != ctrl.end()) return it->second;
      std::string nm = "t" + std::to_string(k) + (phase == 0 ? "_e" : "_r") +
                       std::to_string(s);
      // Emission states share the reading class of the source; return states
      // are flipped.
      bool lr = (phase == 0) ? src_left : !src_left;
      int id = r.add_state(nm, lr);
      ctrl[{k, s, phase}] = id;
      return id;
    };
    auto emit = [&](int from_state, int nfa_from, bool entry) {
      // One emission step from an emission-capable state.
      for (auto [sy, nxt] : adj[nfa_from]) {
        Sym b = lang.alphabet[sy];
        if (lang.is_final(nxt)) {
          // Final emission rides the original transition.
          TwoWayTransducer::Transition nt;
          nt.from = from_state;
          nt.read = tr.read;
          nt.output = letter_nfa(b);
          nt.to = tr.to;
          nt.leftward = tr.leftward;
          r.transitions.push_back(nt);
        }
        bool has_more = !adj[nxt].empty();
        if (has_more) {
          TwoWayTransducer::Transition nt;
          nt.from = from_state;
          nt.read = tr.read;
          nt.output = letter_nfa(b);
          nt.to = get(nxt, 1);
          // Flip away: right-reading sources flip leftward (stay), left-
          // reading sources flip rightward (stay).
          nt.leftward = !src_left;
          r.transitions.push_back(nt);
        }
      }
      (void)entry;
    };
    // Entry emissions directly from the original source state.
    for (int s0 : lang.initial) emit(tr.from, s0, true);
    // Continue/return machinery for visited NFA states.
    for (int s = 0; s < lang.n; ++s) {
      if (adj[s].empty()) continue;
      bool reachable_mid = false;
      for (const auto& e : lang.edges)
        if (e[2] == s) { reachable_mid = true; break; }
      if (!reachable_mid) continue;
      int rs = get(s, 1);
      int es = get(s, 0);
      // Epsilon-return reads whatever neighbor letter is present.
      std::vector<Sym> wild = t.input_alphabet;
      wild.push_back(src_left ? kRightMarker : kLeftMarker);
      for (const auto& c : wild) {
        TwoWayTransducer::Transition nt;
        nt.from = rs;
        nt.read = c;
        nt.output = eps_nfa();
        nt.to = es;
        nt.leftward = src_left;  // mirror of the flip-away direction
        r.transitions.push_back(nt);
      }
      emit(es, s, false);
    }
  }
  return merge_parallel_transitions(r);
}

// ---------------------------------------------------------------------------
// Input lifting.
// ---------------------------------------------------------------------------

/// Reads the product alphabet Sigma x E, ignoring the E component.
inline TwoWayTransducer lift_input(const TwoWayTransducer& t, const std::vector<Sym>& ext) {
  TwoWayTransducer r;
  for (const auto& a : t.input_alphabet)
    for (const auto& e : ext) r.input_alphabet.push_back(enc_tuple({a, e}));
  r.output_alphabet = t.output_alphabet;
  r.states = t.states;
  r.initial = t.initial;
  r.final_ = t.final_;
  for (const auto& tr : t.transitions) {
    if (is_marker(tr.read)) {
      r.transitions.push_back(tr);
      continue;
    }
    for (const auto& e : ext) {
      auto nt = tr;
      nt.read = enc_tuple({tr.read, e});
      r.transitions.push_back(nt);
    }
  }
  return r;
}

}  // namespace origin

#endif  // ORIGIN_TRANSDUCER_HPP_
