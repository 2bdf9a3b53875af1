/* normalization.hpp -- lazy-U-turn analysis and the busy pipeline: U-pair
 * annotations, the annotation checker, alphabet expansion, per-column output
 * saturation, epsilon removal on position-preserving transitions, and busy
 * padding.
 *
 * SPDX-License-Identifier: MIT
 *
 * Annotation convention: U-pair sets are indexed by CONFIG position 1..|u|+1.
 * The annotated symbol at input position i carries
 *   leftPairs  = left U-pairs at config position i   (turns below i), and
 *   rightPairs = right U-pairs at config position i+1 (turns above i+1),
 * i.e. exactly the two pair sets a transition chain reading letter i can
 * interleave with.  The right-hand track is therefore shifted by one column
 * relative to the letter it rides on; the checker enforces the boundary
 * conditions at both markers.
 */

#ifndef ORIGIN_NORMALIZATION_HPP_
#define ORIGIN_NORMALIZATION_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "origin/nfa.hpp"
#include "origin/symbols.hpp"
#include "origin/transducer.hpp"

namespace origin {

using IdxPairSet = std::vector<std::pair<int, int>>;  // state indices, sorted

inline void canon_idx(IdxPairSet& ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

inline PairSet to_names(const TwoWayTransducer& t, const IdxPairSet& ps) {
  PairSet out;
  for (auto [a, b] : ps) out.emplace_back(t.states[a].name, t.states[b].name);
  canon_pairset(out);
  return out;
}

inline IdxPairSet to_indices(const TwoWayTransducer& t, const PairSet& ps) {
  IdxPairSet out;
  for (const auto& [a, b] : ps) {
    int i = t.state_index(a), j = t.state_index(b);
    if (i < 0 || j < 0) throw InputError("unknown state in pair set: " + a + "," + b);
    out.emplace_back(i, j);
  }
  canon_idx(out);
  return out;
}

/// Index of epsilon-capable transitions by read symbol.
struct EpsIndex {
  // per read symbol: (from, to, leftward)
  std::map<Sym, std::vector<std::tuple<int, int, bool>>> by_read;

  explicit EpsIndex(const TwoWayTransducer& t) {
    for (const auto& tr : t.transitions)
      if (nfa_accepts_epsilon(tr.output))
        by_read[tr.read].push_back({tr.from, tr.to, tr.leftward});
  }
};

// ---------------------------------------------------------------------------
// U-pair recursions.
// ---------------------------------------------------------------------------

/// Left U-pairs at a config position, from the pairs one column to the left
/// and the letter between them (the letter read inside the turns).
inline IdxPairSet left_upair_step(const TwoWayTransducer& t, const EpsIndex& eps,
                                  const IdxPairSet& prev, const Sym& letter) {
  IdxPairSet out;
  auto it = eps.by_read.find(letter);
  if (it == eps.by_read.end()) return out;
  const auto& trans = it->second;
  for (const auto& [q, q2, lw] : trans) {
    if (!t.states[q].left_reading) continue;
    if (!lw) out.emplace_back(q, q2);  // unit turn: one rightward flip
  }
  // Chains: leftward step to p1, then alternate (pair at prev, leftward step),
  // ending with a pair followed by a rightward step.
  for (const auto& [q, p1, lw] : trans) {
    if (!t.states[q].left_reading || !lw) continue;
    std::set<int> starts{p1};
    std::deque<int> work{p1};
    while (!work.empty()) {
      int p = work.front(); work.pop_front();
      for (auto [x, y] : prev) {
        if (x != p) continue;
        for (const auto& [f2, t2, lw2] : trans)
          if (f2 == y && lw2 && starts.insert(t2).second) work.push_back(t2);
      }
    }
    for (int p : starts)
      for (auto [x, y] : prev) {
        if (x != p) continue;
        for (const auto& [f2, t2, lw2] : trans)
          if (f2 == y && !lw2) out.emplace_back(q, t2);
      }
  }
  canon_idx(out);
  return out;
}

/// Right U-pairs at a config position, from the pairs one column to the right
/// and the letter read inside the turns.
inline IdxPairSet right_upair_step(const TwoWayTransducer& t, const EpsIndex& eps,
                                   const IdxPairSet& next, const Sym& letter) {
  IdxPairSet out;
  auto it = eps.by_read.find(letter);
  if (it == eps.by_read.end()) return out;
  const auto& trans = it->second;
  for (const auto& [q, q2, lw] : trans) {
    if (t.states[q].left_reading) continue;
    if (lw) out.emplace_back(q, q2);  // unit turn: one leftward flip
  }
  for (const auto& [q, p1, lw] : trans) {
    if (t.states[q].left_reading || lw) continue;
    std::set<int> starts{p1};
    std::deque<int> work{p1};
    while (!work.empty()) {
      int p = work.front(); work.pop_front();
      for (auto [x, y] : next) {
        if (x != p) continue;
        for (const auto& [f2, t2, lw2] : trans)
          if (f2 == y && !lw2 && starts.insert(t2).second) work.push_back(t2);
      }
    }
    for (int p : starts)
      for (auto [x, y] : next) {
        if (x != p) continue;
        for (const auto& [f2, t2, lw2] : trans)
          if (f2 == y && lw2) out.emplace_back(q, t2);
      }
  }
  canon_idx(out);
  return out;
}

/// Left U-pair sets at config positions 1..|u|+1 (vector index c-1).
inline std::vector<IdxPairSet> left_upairs_idx(const TwoWayTransducer& t, const Word& u) {
  EpsIndex eps(t);
  std::vector<IdxPairSet> out;
  out.push_back(left_upair_step(t, eps, {}, kLeftMarker));
  for (std::size_t i = 0; i < u.size(); ++i)
    out.push_back(left_upair_step(t, eps, out.back(), u[i]));
  return out;
}

/// Right U-pair sets at config positions 1..|u|+1 (vector index c-1).
inline std::vector<IdxPairSet> right_upairs_idx(const TwoWayTransducer& t, const Word& u) {
  EpsIndex eps(t);
  std::vector<IdxPairSet> out(u.size() + 1);
  out[u.size()] = right_upair_step(t, eps, {}, kRightMarker);
  for (int c = static_cast<int>(u.size()) - 1; c >= 0; --c)
    out[c] = right_upair_step(t, eps, out[c + 1], u[c]);
  return out;
}

inline std::vector<PairSet> left_upairs(const TwoWayTransducer& t, const Word& u) {
  std::vector<PairSet> out;
  for (const auto& ps : left_upairs_idx(t, u)) out.push_back(to_names(t, ps));
  return out;
}

inline std::vector<PairSet> right_upairs(const TwoWayTransducer& t, const Word& u) {
  std::vector<PairSet> out;
  for (const auto& ps : right_upairs_idx(t, u)) out.push_back(to_names(t, ps));
  return out;
}

/// The correctly annotated form of u (single transducer: tracks 1 only).
inline Word annotate_word(const TwoWayTransducer& t, const Word& u) {
  auto l = left_upairs_idx(t, u);
  auto r = right_upairs_idx(t, u);
  Word out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    AnnotSym a;
    a.base = u[i];
    a.l1 = to_names(t, l[i]);      // config position i+1 == input position
    a.r1 = to_names(t, r[i + 1]);  // config position i+2
    out.push_back(enc_annot(a));
  }
  return out;
}

/// Joint annotation for a transducer pair (four tracks).
inline Word annotate_word_joint(const TwoWayTransducer& t1, const TwoWayTransducer& t2,
                                const Word& u) {
  auto l1 = left_upairs_idx(t1, u), r1 = right_upairs_idx(t1, u);
  auto l2 = left_upairs_idx(t2, u), r2 = right_upairs_idx(t2, u);
  Word out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    AnnotSym a;
    a.base = u[i];
    a.l1 = to_names(t1, l1[i]);
    a.r1 = to_names(t1, r1[i + 1]);
    a.l2 = to_names(t2, l2[i]);
    a.r2 = to_names(t2, r2[i + 1]);
    out.push_back(enc_annot(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annotation checker: accepts exactly the correctly annotated words.
// ---------------------------------------------------------------------------

/// Deterministic forward checker for one or two transducers.  The state is
/// the previously read annotated symbol (or the start marker): the left
/// tracks advance deterministically, the right tracks are guesses verified
/// one step later; boundary sets are checked at both ends.
class AnnotationChecker {
 public:
  AnnotationChecker(const TwoWayTransducer& t1, const TwoWayTransducer* t2,
                    std::vector<Sym> base_alphabet)
      : t1_(t1), t2_(t2), eps1_(t1), eps2_(t2 ? *t2 : t1), base_(std::move(base_alphabet)) {}

  std::string initial_state() const { return "start"; }
  bool is_start(const std::string& s) const { return s == "start"; }

  /// nullopt if the symbol is inconsistent with the state.
  std::optional<std::string> step(const std::string& state, const Sym& sym) const {
    AnnotSym a = dec_annot(sym);
    IdxPairSet l1 = to_indices(t1_, a.l1), r1 = to_indices(t1_, a.r1);
    IdxPairSet l2, r2;
    if (t2_) { l2 = to_indices(*t2_, a.l2); r2 = to_indices(*t2_, a.r2); }
    if (is_start(state)) {
      if (l1 != left_upair_step(t1_, eps1_, {}, kLeftMarker)) return std::nullopt;
      if (t2_ && l2 != left_upair_step(*t2_, eps2_, {}, kLeftMarker)) return std::nullopt;
    } else {
      AnnotSym p = dec_annot(state);
      IdxPairSet pl1 = to_indices(t1_, p.l1), pr1 = to_indices(t1_, p.r1);
      if (l1 != left_upair_step(t1_, eps1_, pl1, p.base)) return std::nullopt;
      if (pr1 != right_upair_step(t1_, eps1_, r1, a.base)) return std::nullopt;
      if (t2_) {
        IdxPairSet pl2 = to_indices(*t2_, p.l2), pr2 = to_indices(*t2_, p.r2);
        if (l2 != left_upair_step(*t2_, eps2_, pl2, p.base)) return std::nullopt;
        if (pr2 != right_upair_step(*t2_, eps2_, r2, a.base)) return std::nullopt;
      }
    }
    return sym;
  }

  bool accepting(const std::string& state) const {
    if (is_start(state)) return true;  // the empty word is correctly annotated
    AnnotSym p = dec_annot(state);
    if (to_indices(t1_, p.r1) != right_upair_step(t1_, eps1_, {}, kRightMarker))
      return false;
    if (t2_ && to_indices(*t2_, p.r2) != right_upair_step(*t2_, eps2_, {}, kRightMarker))
      return false;
    return true;
  }

  bool accepts(const Word& w) const {
    std::string st = initial_state();
    for (const auto& s : w) {
      auto nx = step(st, s);
      if (!nx) return false;
      st = *nx;
    }
    return accepting(st);
  }

  /// All annotated symbols that can validly follow the given state, in
  /// deterministic order (base alphabet order, then pair-set order).
  std::vector<Sym> valid_successors(const std::string& state) const {
    std::vector<Sym> out;
    for (const auto& b : base_) {
      const auto& r1s = right_candidates(t1_);
      std::vector<IdxPairSet> r2s{{}};
      if (t2_) r2s = right_candidates(*t2_);
      for (const auto& r1 : r1s)
        for (const auto& r2 : r2s) {
          AnnotSym a;
          a.base = b;
          a.r1 = to_names(t1_, r1);
          if (t2_) a.r2 = to_names(*t2_, r2);
          // Forced left tracks.
          if (is_start(state)) {
            a.l1 = to_names(t1_, left_upair_step(t1_, eps1_, {}, kLeftMarker));
            if (t2_) a.l2 = to_names(*t2_, left_upair_step(*t2_, eps2_, {}, kLeftMarker));
          } else {
            AnnotSym p = dec_annot(state);
            a.l1 = to_names(t1_, left_upair_step(t1_, eps1_, to_indices(t1_, p.l1), p.base));
            if (t2_)
              a.l2 = to_names(*t2_,
                              left_upair_step(*t2_, eps2_, to_indices(*t2_, p.l2), p.base));
          }
          Sym enc = enc_annot(a);
          if (step(state, enc)) out.push_back(enc);
        }
    }
    return out;
  }

  const std::vector<Sym>& base_alphabet() const { return base_; }

 private:
  const std::vector<IdxPairSet>& right_candidates(const TwoWayTransducer& t) const {
    // Only values reachable by the right-pair step from the right marker can
    // appear as the right track of a consistent annotation, so the candidate
    // set is that fixpoint rather than every subset of Q_right x Q_left.
    auto it = rcache_.find(&t);
    if (it != rcache_.end()) return it->second;
    const EpsIndex& eps = (&t == &t1_) ? eps1_ : eps2_;
    std::set<IdxPairSet> vals;
    std::deque<IdxPairSet> work{right_upair_step(t, eps, {}, kRightMarker)};
    vals.insert(work.front());
    while (!work.empty()) {
      IdxPairSet cur = work.front();
      work.pop_front();
      for (const auto& b : base_) {
        auto nx = right_upair_step(t, eps, cur, b);
        if (vals.insert(nx).second) work.push_back(nx);
      }
    }
    return rcache_.emplace(&t, std::vector<IdxPairSet>(vals.begin(), vals.end()))
        .first->second;
  }

  const TwoWayTransducer& t1_;
  const TwoWayTransducer* t2_;
  EpsIndex eps1_, eps2_;
  std::vector<Sym> base_;
  mutable std::map<const TwoWayTransducer*, std::vector<IdxPairSet>> rcache_;
};

/// Lazy NFA over annotated symbols accepting the correctly annotated words.
inline LazyNfaView annotation_nfa(std::shared_ptr<AnnotationChecker> ck) {
  LazyNfaView v;
  v.initials = [ck]() { return std::vector<std::string>{ck->initial_state()}; };
  v.successors = [ck](const std::string& s) {
    std::vector<std::pair<Sym, std::string>> out;
    for (const auto& sym : ck->valid_successors(s)) out.push_back({sym, sym});
    return out;
  };
  v.is_final = [ck](const std::string& s) { return ck->accepting(s); };
  return v;
}

// ---------------------------------------------------------------------------
// Expansion, saturation, epsilon removal, busy padding (per-symbol views).
// ---------------------------------------------------------------------------

enum class BusyStage { kExpand, kShortcut, kNorm, kBusy };

struct ColumnTransition {
  int from = 0;
  Nfa output;
  int to = 0;
  bool leftward = false;
};

/// Per-annotated-symbol transition view of the pipeline stages for one
/// transducer.  `track` selects which annotation block (1 or 2) the
/// transducer reads.  Memoized per symbol.
class BusyView {
 public:
  BusyView(const TwoWayTransducer& t, int track, BusyStage stage, Sym pad = "#")
      : t_(t), track_(track), stage_(stage), pad_(std::move(pad)), eps_(t) {
    out_alpha_ = t.output_alphabet;
    if (stage_ == BusyStage::kBusy) {
      for (const auto& s : out_alpha_)
        if (s == pad_) throw InputError("busy: padding symbol collides with output alphabet");
      out_alpha_.push_back(pad_);
    }
  }

  const TwoWayTransducer& transducer() const { return t_; }
  int track() const { return track_; }
  BusyStage stage() const { return stage_; }
  const Sym& pad() const { return pad_; }
  const std::vector<Sym>& output_alphabet() const { return out_alpha_; }

  /// Transitions reading the given annotated symbol.
  const std::vector<ColumnTransition>& letter_transitions(const Sym& annot_sym) const {
    auto it = cache_.find(annot_sym);
    if (it != cache_.end()) return it->second;
    AnnotSym a = dec_annot(annot_sym);
    IdxPairSet lp = to_indices(t_, track_ == 1 ? a.l1 : a.l2);
    IdxPairSet rp = to_indices(t_, track_ == 1 ? a.r1 : a.r2);
    std::vector<const TwoWayTransducer::Transition*> col;
    for (const auto& tr : t_.transitions)
      if (tr.read == a.base) col.push_back(&tr);
    auto res = build_column(col, lp, rp);
    return cache_.emplace(annot_sym, std::move(res)).first->second;
  }

  /// Left-marker transitions; the saturation pairs depend on the first
  /// annotated symbol (or on the right marker directly for the empty input).
  const std::vector<ColumnTransition>& lmarker_transitions(
      const std::optional<Sym>& first_sym) const {
    std::string key = first_sym ? *first_sym : "";
    auto it = lcache_.find(key);
    if (it != lcache_.end()) return it->second;
    IdxPairSet rp;
    if (first_sym) {
      AnnotSym a = dec_annot(*first_sym);
      rp = right_upair_step(t_, eps_, to_indices(t_, track_ == 1 ? a.r1 : a.r2), a.base);
    } else {
      rp = right_upair_step(t_, eps_, {}, kRightMarker);
    }
    std::vector<const TwoWayTransducer::Transition*> col;
    for (const auto& tr : t_.transitions)
      if (tr.read == kLeftMarker) col.push_back(&tr);
    auto res = build_column(col, {}, rp);
    return lcache_.emplace(key, std::move(res)).first->second;
  }

  /// Right-marker transitions; pairs depend on the last annotated symbol.
  const std::vector<ColumnTransition>& rmarker_transitions(
      const std::optional<Sym>& last_sym) const {
    std::string key = last_sym ? *last_sym : "";
    auto it = rcache_.find(key);
    if (it != rcache_.end()) return it->second;
    IdxPairSet lp;
    if (last_sym) {
      AnnotSym a = dec_annot(*last_sym);
      lp = left_upair_step(t_, eps_, to_indices(t_, track_ == 1 ? a.l1 : a.l2), a.base);
    } else {
      lp = left_upair_step(t_, eps_, {}, kLeftMarker);
    }
    std::vector<const TwoWayTransducer::Transition*> col;
    for (const auto& tr : t_.transitions)
      if (tr.read == kRightMarker) col.push_back(&tr);
    auto res = build_column(col, lp, {});
    return rcache_.emplace(key, std::move(res)).first->second;
  }

 private:
  std::vector<ColumnTransition> build_column(
      const std::vector<const TwoWayTransducer::Transition*>& col, const IdxPairSet& lp,
      const IdxPairSet& rp) const {
    std::vector<ColumnTransition> out;
    if (stage_ == BusyStage::kExpand) {
      for (const auto* tr : col) out.push_back({tr->from, tr->output, tr->to, tr->leftward});
      return out;
    }
    // Saturation graph: nodes are (column transition index, output NFA state);
    // epsilon links join a final state of t_k to an initial state of t_m when
    // the matching U-pair (target of t_k, source of t_m) is annotated.
    struct NodeRef { int tr; int st; };
    std::vector<NodeRef> nodes;
    std::vector<int> base_of(col.size() + 1, 0);
    for (std::size_t k = 0; k < col.size(); ++k) {
      base_of[k] = static_cast<int>(nodes.size());
      for (int s = 0; s < col[k]->output.n; ++s)
        nodes.push_back({static_cast<int>(k), s});
    }
    base_of[col.size()] = static_cast<int>(nodes.size());
    int nn = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> eps_links(nn);
    auto linked = [&](int k, int m) {
      auto tgt = col[k]->to;
      auto src = col[m]->from;
      const IdxPairSet& ps = col[k]->leftward ? lp : rp;
      return std::binary_search(ps.begin(), ps.end(), std::make_pair(tgt, src));
    };
    for (std::size_t k = 0; k < col.size(); ++k)
      for (std::size_t m = 0; m < col.size(); ++m) {
        if (!linked(static_cast<int>(k), static_cast<int>(m))) continue;
        for (int f : col[k]->output.final_)
          for (int i0 : col[m]->output.initial)
            eps_links[base_of[k] + f].push_back(base_of[m] + i0);
      }
    // Epsilon closure per node.
    std::vector<std::vector<int>> closure(nn);
    for (int v = 0; v < nn; ++v) {
      std::vector<char> seen(nn, 0);
      std::deque<int> work{v};
      seen[v] = 1;
      while (!work.empty()) {
        int x = work.front(); work.pop_front();
        closure[v].push_back(x);
        for (int y : eps_links[x])
          if (!seen[y]) { seen[y] = 1; work.push_back(y); }
      }
    }
    // Letter edges (in the shared graph): from node to closure of target.
    std::vector<std::vector<std::pair<int, int>>> edges(nn);  // (sym idx in out_alpha_, node)
    for (std::size_t k = 0; k < col.size(); ++k) {
      const Nfa& N = col[k]->output;
      for (const auto& e : N.edges) {
        const Sym& b = N.alphabet[e[1]];
        int bi = -1;
        for (int i = 0; i < static_cast<int>(out_alpha_.size()); ++i)
          if (out_alpha_[i] == b) { bi = i; break; }
        if (bi < 0) continue;  // letter outside the declared output alphabet
        for (int c : closure[base_of[k] + e[2]])
          edges[base_of[k] + e[0]].push_back({bi, c});
      }
    }
    // Assemble one NFA per (source state, target state, direction).
    std::map<std::tuple<int, int, bool>, std::vector<std::size_t>> ends;
    for (std::size_t k = 0; k < col.size(); ++k)
      ends[{col[k]->from, col[k]->to, col[k]->leftward}].push_back(k);
    std::set<std::tuple<int, int, bool>> combos;
    for (std::size_t k = 0; k < col.size(); ++k)
      for (std::size_t m = 0; m < col.size(); ++m)
        combos.insert({col[k]->from, col[m]->to, col[m]->leftward});
    for (const auto& [q, q2, d] : combos) {
      Nfa lang = empty_nfa(out_alpha_);
      for (int v = 0; v < nn; ++v) lang.add_state();
      for (int v = 0; v < nn; ++v)
        for (auto [bi, w] : edges[v]) lang.add_edge_idx(v, bi, w);
      for (std::size_t k = 0; k < col.size(); ++k) {
        if (col[k]->from != q) continue;
        for (int i0 : col[k]->output.initial)
          for (int c : closure[base_of[k] + i0]) lang.mark_initial(c);
      }
      for (std::size_t k = 0; k < col.size(); ++k) {
        if (col[k]->to != q2 || col[k]->leftward != d) continue;
        for (int f : col[k]->output.final_) lang.mark_final(base_of[k] + f);
      }
      lang = trim(lang);
      bool flip = t_.states[q].left_reading != t_.states[q2].left_reading;
      if (stage_ >= BusyStage::kNorm && flip) lang = trim(minus_epsilon(lang));
      if (stage_ == BusyStage::kBusy && !flip && nfa_accepts_epsilon(lang))
        lang = plus_word(trim(minus_epsilon(lang)), Word{pad_});
      if (nfa_is_empty(lang)) continue;
      out.push_back({q, lang, q2, d});
    }
    return out;
  }

  const TwoWayTransducer& t_;
  int track_;
  BusyStage stage_;
  Sym pad_;
  EpsIndex eps_;
  std::vector<Sym> out_alpha_;
  mutable std::map<Sym, std::vector<ColumnTransition>> cache_;
  mutable std::map<std::string, std::vector<ColumnTransition>> lcache_;
  mutable std::map<std::string, std::vector<ColumnTransition>> rcache_;
};

/// Closure of a state set under silent excursions anchored at one end
/// column: `pairs` are the U-pairs available there and `flips` the silent
/// marker bounces; both edge relations alternate reading classes.
inline std::set<int> silent_end_closure(std::set<int> seed, const IdxPairSet& pairs,
                                        const IdxPairSet& flips) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& ps : {pairs, flips})
      for (auto [a, b] : ps)
        if (seed.count(a) && seed.insert(b).second) grew = true;
  }
  return seed;
}

/// Materialize the pipeline stage for one concrete annotated input word,
/// producing an ordinary transducer usable by the enumeration oracle.  The
/// marker transitions are instantiated for this word's end columns.
///
/// Silent-end repair: once epsilon is removed from position-preserving
/// transitions, runs that begin or end with an all-silent excursion at the
/// first or last config position have no transition left to ride on.  Their
/// effect is restored by closing the initial set forward (and the final set
/// backward) under the silent excursion relations of the end columns.  The
/// containment product applies the same closure at its own boundary.  Note
/// this can make left-reading states initial in the materialized object.
inline TwoWayTransducer materialize_for_word(const BusyView& view, const Word& w) {
  const auto& t = view.transducer();
  TwoWayTransducer r;
  std::set<Sym> alpha(w.begin(), w.end());
  r.input_alphabet.assign(alpha.begin(), alpha.end());
  r.output_alphabet = view.output_alphabet();
  for (const auto& s : t.states) r.states.push_back(s);
  r.initial = t.initial;
  r.final_ = t.final_;
  auto push = [&](const ColumnTransition& c, const Sym& read) {
    TwoWayTransducer::Transition tr;
    tr.from = c.from;
    tr.read = read;
    tr.output = c.output;
    tr.to = c.to;
    tr.leftward = c.leftward;
    r.transitions.push_back(tr);
  };
  for (const auto& s : alpha)
    for (const auto& c : view.letter_transitions(s)) push(c, s);
  std::optional<Sym> first, last;
  if (!w.empty()) { first = w.front(); last = w.back(); }
  for (const auto& c : view.lmarker_transitions(first)) push(c, kLeftMarker);
  for (const auto& c : view.rmarker_transitions(last)) push(c, kRightMarker);
  if (view.stage() >= BusyStage::kNorm) {
    EpsIndex eps(t);
    IdxPairSet lflips = left_upair_step(t, eps, {}, kLeftMarker);    // silent bounces on ^
    IdxPairSet rflips = right_upair_step(t, eps, {}, kRightMarker);  // silent bounces on $
    IdxPairSet rp1, lpTop;  // right U-pairs at config 1, left U-pairs at the top config
    if (w.empty()) {
      rp1 = rflips;
      lpTop = lflips;
    } else {
      AnnotSym a0 = dec_annot(w.front()), aN = dec_annot(w.back());
      rp1 = right_upair_step(t, eps,
                             to_indices(t, view.track() == 1 ? a0.r1 : a0.r2), a0.base);
      lpTop = left_upair_step(t, eps,
                              to_indices(t, view.track() == 1 ? aN.l1 : aN.l2), aN.base);
    }
    std::set<int> init(r.initial.begin(), r.initial.end());
    init = silent_end_closure(init, rp1, lflips);
    r.initial.assign(init.begin(), init.end());
    // Backward closure of the finals: reverse both edge relations.
    auto rev = [](const IdxPairSet& ps) {
      IdxPairSet o;
      for (auto [a, b] : ps) o.emplace_back(b, a);
      canon_idx(o);
      return o;
    };
    std::set<int> fin(r.final_.begin(), r.final_.end());
    fin = silent_end_closure(fin, rev(lpTop), rev(rflips));
    r.final_.assign(fin.begin(), fin.end());
  }
  return merge_parallel_transitions(r);
}

}  // namespace origin

#endif  // ORIGIN_NORMALIZATION_HPP_
