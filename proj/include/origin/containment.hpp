/* containment.hpp -- origin-containment and origin-equivalence deciders:
 * transition shapes, witness profiles, the crossing-sequence automaton over
 * annotated inputs, and the top-level drivers with oracle-confirmed
 * counterexamples.
 *
 * SPDX-License-Identifier: MIT
 */

#ifndef ORIGIN_CONTAINMENT_HPP_
#define ORIGIN_CONTAINMENT_HPP_

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "origin/nfa.hpp"
#include "origin/normalization.hpp"
#include "origin/symbols.hpp"
#include "origin/transducer.hpp"

namespace origin {

struct Shape {
  Sym read;
  bool src_left = false;
  bool tgt_left = false;
  bool operator==(const Shape& o) const {
    return read == o.read && src_left == o.src_left && tgt_left == o.tgt_left;
  }
};

inline Shape shape_of(const TwoWayTransducer& t, const TwoWayTransducer::Transition& tr) {
  return {tr.read, t.states[tr.from].left_reading, t.states[tr.to].left_reading};
}

inline bool same_shape(const Shape& a, const Shape& b) { return a == b; }

/// Distinct realizable sets { j : v in L(cands[j]) } over words v in L(base).
/// Computed exactly on the product of the determinized languages; profiles
/// are collected at product states where the base component accepts.
inline std::set<std::set<int>> witness_profiles_langs(const Nfa& base,
                                                      const std::vector<const Nfa*>& cands,
                                                      std::size_t budget = 1u << 18) {
  std::vector<Dfa> dfas;
  dfas.push_back(determinize(base));
  for (const Nfa* c : cands) dfas.push_back(determinize(*c));
  // Step a DFA by an external symbol; -1 is a dead (rejecting) state.
  auto step = [](const Dfa& d, int q, const Sym& s) -> int {
    if (q < 0) return -1;
    for (std::size_t i = 0; i < d.alphabet.size(); ++i)
      if (d.alphabet[i] == s) return d.delta[q][i];
    return -1;
  };
  std::set<std::set<int>> profiles;
  std::vector<int> start(dfas.size());
  for (std::size_t i = 0; i < dfas.size(); ++i) start[i] = dfas[i].initial;
  std::set<std::vector<int>> seen{start};
  std::deque<std::vector<int>> work{start};
  auto accepting = [&](const Dfa& d, int q) { return q >= 0 && d.final_[q]; };
  while (!work.empty()) {
    auto st = work.front();
    work.pop_front();
    if (seen.size() > budget) throw BudgetError("witness profile product too large");
    if (accepting(dfas[0], st[0])) {
      std::set<int> x;
      for (std::size_t j = 1; j < dfas.size(); ++j)
        if (accepting(dfas[j], st[j])) x.insert(static_cast<int>(j - 1));
      profiles.insert(x);
    }
    for (const auto& s : dfas[0].alphabet) {
      std::vector<int> nx(dfas.size());
      for (std::size_t i = 0; i < dfas.size(); ++i) nx[i] = step(dfas[i], st[i], s);
      if (nx[0] < 0) continue;  // words outside L(base) are irrelevant
      if (seen.insert(nx).second) work.push_back(nx);
    }
  }
  return profiles;
}

/// Busy transitions of both transducers at one column, with the witness
/// profiles of every left-side transition against the same-shape right-side
/// transitions.
struct ColumnContext {
  std::vector<ColumnTransition> t1, t2;
  // per t1 index: the realizable profiles, each a set of t2 indices
  std::vector<std::vector<std::vector<int>>> profiles;
};

inline ColumnContext make_column_context(const TwoWayTransducer& m1,
                                         const std::vector<ColumnTransition>& t1,
                                         const TwoWayTransducer& m2,
                                         const std::vector<ColumnTransition>& t2,
                                         std::size_t budget) {
  ColumnContext ctx;
  ctx.t1 = t1;
  ctx.t2 = t2;
  for (const auto& a : ctx.t1) {
    std::vector<int> mates;
    std::vector<const Nfa*> langs;
    for (std::size_t j = 0; j < ctx.t2.size(); ++j) {
      const auto& b = ctx.t2[j];
      if (m1.states[a.from].left_reading == m2.states[b.from].left_reading &&
          m1.states[a.to].left_reading == m2.states[b.to].left_reading &&
          a.leftward == b.leftward) {
        mates.push_back(static_cast<int>(j));
        langs.push_back(&b.output);
      }
    }
    std::vector<std::vector<int>> out;
    for (const auto& x : witness_profiles_langs(a.output, langs, budget)) {
      std::vector<int> prof;
      for (int k : x) prof.push_back(mates[k]);
      out.push_back(prof);
    }
    ctx.profiles.push_back(std::move(out));
  }
  return ctx;
}

using Rel = std::set<std::pair<int, int>>;  // tracked T2 pairs (start, current)
using RMap = std::map<std::pair<int, int>, Rel>;

/// Chain closure at one column.  Walks the alternation of leftward column
/// transitions (each with a chosen witness profile) and P-pair applications
/// (mapped through R), collecting every endpoint reachable by a closing
/// rightward transition together with the exact tracked relation.  The first
/// components of the relation are never touched, so the same routine serves
/// both the S-chains (seed first components ignored) and the R-block chains
/// (seed is the identity on left-reading states).
inline std::vector<std::pair<int, Rel>> chain_closure(const TwoWayTransducer& m1,
                                                      const ColumnContext& ctx,
                                                      const IdxPairSet& P, const RMap& R,
                                                      int start, const Rel& seed,
                                                      std::size_t budget = 1u << 18) {
  auto key = [](int c, const Rel& r) {
    std::string k = std::to_string(c);
    for (auto [a, b] : r) k += "," + std::to_string(a) + ":" + std::to_string(b);
    return k;
  };
  std::vector<std::pair<int, Rel>> results;
  std::set<std::string> resk, seen;
  std::deque<std::pair<int, Rel>> work{{start, seed}};
  seen.insert(key(start, seed));
  while (!work.empty()) {
    auto [c, rel] = work.front();
    work.pop_front();
    if (seen.size() > budget) throw BudgetError("chain closure too large");
    if (m1.states[c].left_reading) {
      for (auto [p, p2] : P) {
        if (p != c) continue;
        auto it = R.find({p, p2});
        Rel nx;
        if (it != R.end())
          for (auto [s0, s] : rel)
            for (auto [r1, r2] : it->second)
              if (r1 == s) nx.insert({s0, r2});
        if (seen.insert(key(p2, nx)).second) work.push_back({p2, nx});
      }
    } else {
      for (std::size_t i = 0; i < ctx.t1.size(); ++i) {
        if (ctx.t1[i].from != c) continue;
        for (const auto& prof : ctx.profiles[i]) {
          Rel nx;
          for (auto [s0, s] : rel)
            for (int j : prof)
              if (ctx.t2[j].from == s) nx.insert({s0, ctx.t2[j].to});
          if (ctx.t1[i].leftward) {
            if (seen.insert(key(ctx.t1[i].to, nx)).second)
              work.push_back({ctx.t1[i].to, nx});
          } else {
            if (resk.insert(key(ctx.t1[i].to, nx)).second)
              results.push_back({ctx.t1[i].to, nx});
          }
        }
      }
    }
  }
  return results;
}

/// Crossing-sequence state: the frontier of a guessed left-side run together
/// with the exactly tracked compatible right-side runs.
struct BState {
  int qhat = 0;
  IdxPairSet P;
  std::set<int> S;
  RMap R;

  json to_json() const {
    json j;
    j["q"] = qhat;
    json p = json::array();
    for (auto [a, b] : P) p.push_back(json::array({a, b}));
    j["P"] = p;
    j["S"] = std::vector<int>(S.begin(), S.end());
    json r = json::array();
    for (const auto& [pr, rel] : R) {
      json blk = json::array();
      for (auto [a, b] : rel) blk.push_back(json::array({a, b}));
      r.push_back(json::array({json::array({pr.first, pr.second}), blk}));
    }
    j["R"] = r;
    return j;
  }
  static BState from_json(const json& j) {
    BState b;
    b.qhat = j.at("q").get<int>();
    for (const auto& p : j.at("P")) b.P.emplace_back(p[0].get<int>(), p[1].get<int>());
    for (const auto& s : j.at("S")) b.S.insert(s.get<int>());
    for (const auto& r : j.at("R")) {
      std::pair<int, int> pr{r[0][0].get<int>(), r[0][1].get<int>()};
      Rel rel;
      for (const auto& e : r[1]) rel.insert({e[0].get<int>(), e[1].get<int>()});
      b.R[pr] = rel;
    }
    return b;
  }
};

/// The emptiness core: a lazy NFA over jointly annotated symbols accepting
/// exactly the annotated inputs on which the left transducer has a successful
/// run and a witness choice ruling out every compatible right-side run.
/// Combined with the annotation checker by the caller.
class BAutomaton {
 public:
  BAutomaton(const TwoWayTransducer& t1, const TwoWayTransducer& t2, std::size_t budget)
      : t1_(t1),
        t2_(t2),
        v1_(t1, 1, BusyStage::kBusy),
        v2_(t2, 2, BusyStage::kBusy),
        eps1_(t1),
        eps2_(t2),
        budget_(budget) {}

  const ColumnContext& column(const Sym& annot_sym) const {
    auto it = colcache_.find(annot_sym);
    if (it != colcache_.end()) return it->second;
    auto ctx = make_column_context(t1_, v1_.letter_transitions(annot_sym), t2_,
                                   v2_.letter_transitions(annot_sym), budget_);
    return colcache_.emplace(annot_sym, std::move(ctx)).first->second;
  }

  const ColumnContext& lmarker_column(const std::optional<Sym>& first) const {
    std::string k = first ? *first : "";
    auto it = lmcache_.find(k);
    if (it != lmcache_.end()) return it->second;
    auto ctx = make_column_context(t1_, v1_.lmarker_transitions(first), t2_,
                                   v2_.lmarker_transitions(first), budget_);
    return lmcache_.emplace(k, std::move(ctx)).first->second;
  }

  const ColumnContext& rmarker_column(const std::optional<Sym>& last) const {
    std::string k = last ? *last : "";
    auto it = rmcache_.find(k);
    if (it != rmcache_.end()) return it->second;
    auto ctx = make_column_context(t1_, v1_.rmarker_transitions(last), t2_,
                                   v2_.rmarker_transitions(last), budget_);
    return rmcache_.emplace(k, std::move(ctx)).first->second;
  }

  /// Silent excursion relations at the first config position (pairs of the
  /// given transducer): right U-pairs at config 1 plus silent left-marker
  /// flips; used to close initial sets (see the silent-end repair note).
  static std::set<int> initial_closure(const TwoWayTransducer& t, const EpsIndex& eps,
                                       const std::vector<int>& init, int track,
                                       const std::optional<Sym>& first) {
    IdxPairSet rp1;
    if (first) {
      AnnotSym a = dec_annot(*first);
      rp1 = right_upair_step(t, eps, to_indices(t, track == 1 ? a.r1 : a.r2), a.base);
    } else {
      rp1 = right_upair_step(t, eps, {}, kRightMarker);
    }
    IdxPairSet lflips = left_upair_step(t, eps, {}, kLeftMarker);
    return silent_end_closure(std::set<int>(init.begin(), init.end()), rp1, lflips);
  }

  static std::set<int> final_closure(const TwoWayTransducer& t, const EpsIndex& eps,
                                     const std::vector<int>& fin, int track,
                                     const std::optional<Sym>& last) {
    IdxPairSet lpTop;
    if (last) {
      AnnotSym a = dec_annot(*last);
      lpTop = left_upair_step(t, eps, to_indices(t, track == 1 ? a.l1 : a.l2), a.base);
    } else {
      lpTop = left_upair_step(t, eps, {}, kLeftMarker);
    }
    IdxPairSet rflips = right_upair_step(t, eps, {}, kRightMarker);
    auto rev = [](const IdxPairSet& ps) {
      IdxPairSet o;
      for (auto [a, b] : ps) o.emplace_back(b, a);
      canon_idx(o);
      return o;
    };
    return silent_end_closure(std::set<int>(fin.begin(), fin.end()), rev(lpTop),
                              rev(rflips));
  }

  /// States reachable before consuming the first symbol: the left-marker
  /// bounces become P-pairs with witness-chosen R-blocks, and the frontier
  /// state may itself ride one left-marker transition.
  std::vector<BState> init_fold(const std::optional<Sym>& first) const {
    const ColumnContext& lm = lmarker_column(first);
    std::set<int> i1c = initial_closure(t1_, eps1_, t1_.initial, 1, first);
    std::set<int> i2c = initial_closure(t2_, eps2_, t2_.initial, 2, first);
    // Frontier options: (qhat, S).
    std::vector<std::pair<int, std::set<int>>> fronts;
    std::set<int> s_triv;
    for (int s : i2c)
      if (!t2_.states[s].left_reading) s_triv.insert(s);
    for (int q : i1c)
      if (!t1_.states[q].left_reading) fronts.push_back({q, s_triv});
    for (std::size_t i = 0; i < lm.t1.size(); ++i) {
      if (!i1c.count(lm.t1[i].from)) continue;
      for (const auto& prof : lm.profiles[i]) {
        std::set<int> s;
        for (int j : prof)
          if (i2c.count(lm.t2[j].from)) s.insert(lm.t2[j].to);
        fronts.push_back({lm.t1[i].to, s});
      }
    }
    // P-pairs: every left-marker bounce pair is available (an unused pair is
    // harmless, and any witness using fewer pairs extends to all of them), so
    // only the choice of tracking profile per pair branches.
    std::map<std::pair<int, int>, std::set<Rel>> blocks;
    for (std::size_t i = 0; i < lm.t1.size(); ++i)
      for (const auto& prof : lm.profiles[i]) {
        Rel blk;
        for (int j : prof) blk.insert({lm.t2[j].from, lm.t2[j].to});
        blocks[{lm.t1[i].from, lm.t1[i].to}].insert(blk);
      }
    std::vector<std::pair<IdxPairSet, RMap>> prs{{IdxPairSet{}, RMap{}}};
    for (const auto& [pr, opts] : blocks) {
      std::vector<std::pair<IdxPairSet, RMap>> next;
      for (const auto& base : prs)
        for (const auto& blk : opts) {
          auto ext = base;
          ext.first.push_back(pr);
          canon_idx(ext.first);
          ext.second[pr] = blk;
          next.push_back(std::move(ext));
        }
      prs = std::move(next);
      if (prs.size() > budget_) throw BudgetError("initial marker combination blowup");
    }
    std::vector<BState> out;
    for (const auto& [q, s] : fronts)
      for (const auto& [p, r] : prs) out.push_back({q, p, s, r});
    return out;
  }

  /// Successors of a crossing state on one annotated symbol.
  std::vector<BState> letter_step(const BState& src, const Sym& sym) const {
    const ColumnContext& ctx = column(sym);
    // Frontier chains: seed relation tracks S in the second component.
    Rel seed;
    for (int s : src.S) seed.insert({-1, s});
    auto hat = chain_closure(t1_, ctx, src.P, src.R, src.qhat, seed, budget_);
    // Candidate new P-pairs: chains started by a leftward transition from a
    // left-reading state; seed is the identity on left-reading T2 states.
    Rel idseed;
    for (int s = 0; s < static_cast<int>(t2_.states.size()); ++s)
      if (t2_.states[s].left_reading) idseed.insert({s, s});
    std::map<std::pair<int, int>, std::set<Rel>> popts;
    for (int q = 0; q < static_cast<int>(t1_.states.size()); ++q) {
      if (!t1_.states[q].left_reading) continue;
      for (const auto& [end, rel] : chain_closure(t1_, ctx, src.P, src.R, q, idseed, budget_))
        popts[{q, end}].insert(rel);
    }
    // As in init_fold, every realizable pair is kept; only the per-pair
    // tracking profile branches.
    std::vector<std::pair<IdxPairSet, RMap>> prs{{IdxPairSet{}, RMap{}}};
    for (const auto& [pr, opts] : popts) {
      std::vector<std::pair<IdxPairSet, RMap>> next;
      for (const auto& base : prs)
        for (const auto& blk : opts) {
          auto ext = base;
          ext.first.push_back(pr);
          canon_idx(ext.first);
          ext.second[pr] = blk;
          next.push_back(std::move(ext));
        }
      prs = std::move(next);
      if (prs.size() > budget_) throw BudgetError("crossing-state fanout blowup");
    }
    std::vector<BState> out;
    std::set<std::string> uniq;
    for (const auto& [q2, srel] : hat) {
      std::set<int> s2;
      for (auto [ig, s] : srel) s2.insert(s);
      for (const auto& [p, r] : prs) {
        BState b{q2, p, s2, r};
        if (uniq.insert(b.to_json().dump()).second) out.push_back(b);
      }
    }
    return out;
  }

  /// Right-marker finalization: walk bounce transitions and P-pairs from the
  /// frontier; accept when the left run reaches a (silently closed) final
  /// state while no tracked right-side endpoint can silently reach one.
  bool accepts(const BState& b, const std::optional<Sym>& last) const {
    const ColumnContext& rm = rmarker_column(last);
    std::set<int> f1c = final_closure(t1_, eps1_, t1_.final_, 1, last);
    std::set<int> f2c = final_closure(t2_, eps2_, t2_.final_, 2, last);
    auto key = [](int c, const std::set<int>& a) {
      std::string k = std::to_string(c);
      for (int s : a) k += "," + std::to_string(s);
      return k;
    };
    std::set<std::string> seen;
    std::deque<std::pair<int, std::set<int>>> work{{b.qhat, b.S}};
    seen.insert(key(b.qhat, b.S));
    while (!work.empty()) {
      auto [c, a] = work.front();
      work.pop_front();
      if (f1c.count(c)) {
        bool hit = false;
        for (int s : a)
          if (f2c.count(s)) { hit = true; break; }
        if (!hit) return true;
      }
      if (t1_.states[c].left_reading) {
        for (auto [p, p2] : b.P) {
          if (p != c) continue;
          std::set<int> nx;
          auto it = b.R.find({p, p2});
          if (it != b.R.end())
            for (auto [r1, r2] : it->second)
              if (a.count(r1)) nx.insert(r2);
          if (seen.insert(key(p2, nx)).second) work.push_back({p2, nx});
        }
      } else {
        for (std::size_t i = 0; i < rm.t1.size(); ++i) {
          if (rm.t1[i].from != c) continue;
          for (const auto& prof : rm.profiles[i]) {
            std::set<int> nx;
            for (int j : prof)
              if (a.count(rm.t2[j].from)) nx.insert(rm.t2[j].to);
            if (seen.insert(key(rm.t1[i].to, nx)).second) work.push_back({rm.t1[i].to, nx});
          }
        }
      }
    }
    return false;
  }

  const TwoWayTransducer& left() const { return t1_; }
  const TwoWayTransducer& right() const { return t2_; }

 private:
  const TwoWayTransducer& t1_;
  const TwoWayTransducer& t2_;
  BusyView v1_, v2_;
  EpsIndex eps1_, eps2_;
  std::size_t budget_;
  mutable std::map<Sym, ColumnContext> colcache_;
  mutable std::map<std::string, ColumnContext> lmcache_, rmcache_;
};

/// Lazy product of the crossing automaton with the joint annotation checker.
/// The checker state after any prefix is the last symbol read, which also
/// provides the context for marker finalization.
inline LazyNfaView b_automaton(std::shared_ptr<BAutomaton> ba,
                               std::shared_ptr<AnnotationChecker> ck) {
  LazyNfaView v;
  v.initials = []() { return std::vector<std::string>{"init"}; };
  auto encode = [](const BState& b, const Sym& last) {
    json j;
    j["b"] = b.to_json();
    j["last"] = last;
    return j.dump();
  };
  v.successors = [ba, ck, encode](const std::string& st) {
    std::vector<std::pair<Sym, std::string>> out;
    std::set<std::string> uniq;
    std::string ckstate = st == "init" ? ck->initial_state() : json::parse(st).at("last").get<Sym>();
    for (const auto& sym : ck->valid_successors(ckstate)) {
      std::vector<BState> bases;
      if (st == "init") bases = ba->init_fold(sym);
      else bases = {BState::from_json(json::parse(st).at("b"))};
      for (const auto& b : bases)
        for (const auto& nb : ba->letter_step(b, sym)) {
          std::string enc = encode(nb, sym);
          if (uniq.insert(enc).second) out.push_back({sym, enc});
        }
    }
    return out;
  };
  v.is_final = [ba, ck](const std::string& st) {
    if (st == "init") {
      for (const auto& b : ba->init_fold(std::nullopt))
        if (ba->accepts(b, std::nullopt)) return true;
      return false;
    }
    json j = json::parse(st);
    Sym last = j.at("last").get<Sym>();
    if (!ck->accepting(last)) return false;
    return ba->accepts(BState::from_json(j.at("b")), last);
  };
  return v;
}

/// Run an automaton over the base letters of a lazy view's symbols in
/// lockstep, pruning state-set-empty branches and conjoining acceptance.
inline LazyNfaView restrict_lazy_view(LazyNfaView inner, std::shared_ptr<Nfa> rn,
                                      std::function<Sym(const Sym&)> letter_of) {
  auto v = std::make_shared<LazyNfaView>(std::move(inner));
  auto encode = [](const std::string& s, const std::vector<int>& rs) {
    json j;
    j["s"] = s;
    j["r"] = rs;
    return j.dump();
  };
  LazyNfaView out;
  out.initials = [v, rn, encode]() {
    std::vector<std::string> o;
    std::vector<int> rs(rn->initial.begin(), rn->initial.end());
    for (const auto& s : v->initials()) o.push_back(encode(s, rs));
    return o;
  };
  // The same inner state recurs under many restriction-set companions, so
  // its expansion is computed once and shared.
  auto cache =
      std::make_shared<std::map<std::string, std::vector<std::pair<Sym, std::string>>>>();
  out.successors = [v, rn, encode, letter_of, cache](const std::string& st) {
    json j = json::parse(st);
    std::string s = j.at("s").get<std::string>();
    std::vector<int> rs = j.at("r").get<std::vector<int>>();
    auto ci = cache->find(s);
    if (ci == cache->end()) ci = cache->emplace(s, v->successors(s)).first;
    std::vector<std::pair<Sym, std::string>> o;
    std::map<Sym, std::vector<int>> stepped;
    for (const auto& [sym, ns] : ci->second) {
      auto it = stepped.find(sym);
      if (it == stepped.end()) {
        std::set<int> nxt;
        int si = rn->sym_index(letter_of(sym));
        if (si >= 0)
          for (const auto& e : rn->edges)
            if (e[1] == si && std::binary_search(rs.begin(), rs.end(), e[0]))
              nxt.insert(e[2]);
        it = stepped.emplace(sym, std::vector<int>(nxt.begin(), nxt.end())).first;
      }
      if (!it->second.empty()) o.push_back({sym, encode(ns, it->second)});
    }
    return o;
  };
  out.is_final = [v, rn](const std::string& st) {
    json j = json::parse(st);
    if (!v->is_final(j.at("s").get<std::string>())) return false;
    for (int q : j.at("r").get<std::vector<int>>())
      if (rn->is_final(q)) return true;
    return false;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Drivers.
// ---------------------------------------------------------------------------

inline std::size_t default_state_budget() {
  if (const char* e = std::getenv("ORIGIN_STATE_BUDGET")) {
    long v = std::atol(e);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

struct ContainmentResult {
  bool contained = true;
  Word input;                        // counterexample base word
  std::optional<SyncPair> evidence;  // produced by T1, absent from T2
  bool confirmed = false;
  std::size_t explored = 0;
};

inline std::vector<Sym> shared_base_alphabet(const TwoWayTransducer& t1,
                                             const TwoWayTransducer& t2) {
  std::set<Sym> a1, a2;
  for (const auto& s : t1.input_alphabet)
    if (!is_marker(s)) a1.insert(s);
  for (const auto& s : t2.input_alphabet)
    if (!is_marker(s)) a2.insert(s);
  if (a1 != a2) throw InputError("transducers must share their input alphabet");
  return {a1.begin(), a1.end()};
}

/// Containment of T1 in T2 over input words drawn from `restriction` (over
/// the shared input alphabet); pass nullptr for all words.
inline ContainmentResult origin_containment_restricted(
    const TwoWayTransducer& t1, const TwoWayTransducer& t2, const Nfa* restriction,
    std::size_t budget = default_state_budget(), int confirmMaxOut = 10) {
  auto sigma = shared_base_alphabet(t1, t2);
  auto ba = std::make_shared<BAutomaton>(t1, t2, budget);
  auto ck = std::make_shared<AnnotationChecker>(t1, &t2, sigma);
  auto view = b_automaton(ba, ck);
  if (restriction)
    view = restrict_lazy_view(std::move(view), std::make_shared<Nfa>(*restriction),
                              [](const Sym& s) { return dec_annot(s).base; });
  auto res = lazy_shortest_accept(view, budget);
  ContainmentResult out;
  out.explored = res.explored;
  if (res.status == LazySearchResult::kBudget)
    throw BudgetError("state budget exhausted while deciding containment");
  if (res.status == LazySearchResult::kEmpty) return out;
  out.contained = false;
  for (const auto& sym : res.witness) out.input.push_back(dec_annot(sym).base);
  for (int maxOut = 1; maxOut <= confirmMaxOut; ++maxOut) {
    auto p1 = enumerate_sync_pairs(t1, out.input, maxOut);
    auto p2 = enumerate_sync_pairs(t2, out.input, maxOut);
    for (const auto& p : p1)
      if (!p2.count(p)) {
        out.evidence = p;
        out.confirmed = true;
        return out;
      }
  }
  return out;  // counterexample reported but not confirmed within the budget
}

inline ContainmentResult origin_containment(const TwoWayTransducer& t1,
                                            const TwoWayTransducer& t2,
                                            std::size_t budget = default_state_budget(),
                                            int confirmMaxOut = 10) {
  return origin_containment_restricted(t1, t2, nullptr, budget, confirmMaxOut);
}

struct EquivalenceResult {
  bool equivalent = true;
  int failing_direction = 0;  // 1: T1 not contained in T2; 2: converse
  ContainmentResult detail;
};

inline EquivalenceResult origin_equivalence(const TwoWayTransducer& t1,
                                            const TwoWayTransducer& t2,
                                            std::size_t budget = default_state_budget(),
                                            int confirmMaxOut = 10) {
  EquivalenceResult r;
  auto c12 = origin_containment(t1, t2, budget, confirmMaxOut);
  if (!c12.contained) {
    r.equivalent = false;
    r.failing_direction = 1;
    r.detail = c12;
    return r;
  }
  auto c21 = origin_containment(t2, t1, budget, confirmMaxOut);
  if (!c21.contained) {
    r.equivalent = false;
    r.failing_direction = 2;
    r.detail = c21;
  }
  return r;
}

}  // namespace origin

#endif  // ORIGIN_CONTAINMENT_HPP_
