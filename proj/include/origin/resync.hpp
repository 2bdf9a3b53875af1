/* resync.hpp -- bounded resynchronizers over origin graphs: parameterized
 * formula families (alpha/beta/gamma/delta), a direct pair-level semantics,
 * the finite-ambiguity boundedness check, and the four-stage application
 * pipeline that turns a transducer into one realizing the resynchronized
 * relation over annotated inputs, plus containment modulo a resynchronizer.
 *
 * SPDX-License-Identifier: MIT
 */

#ifndef ORIGIN_RESYNC_HPP_
#define ORIGIN_RESYNC_HPP_

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "origin/containment.hpp"
#include "origin/mso.hpp"
#include "origin/nfa.hpp"
#include "origin/normalization.hpp"
#include "origin/symbols.hpp"
#include "origin/transducer.hpp"

namespace origin {

// ---------------------------------------------------------------------------
// Resynchronizer: input/output parameter lists, a global input constraint
// (alpha), a global output constraint (beta), per-output-type source/target
// origin constraints (gamma, frees y = source origin, z = target origin) and
// per-consecutive-pair target origin constraints (delta, frees z, zp).
//
// gamma/delta entries are keyed by output-type patterns:
//   "<letter or *>"            matches the output letter
//   "<letter or *>:<bits>"     additionally matches the output-parameter
//                              membership bits (chars 0/1/*)
// delta keys are two such patterns joined by ",".  The key "default" acts as
// a fallback; entries are tried in declared order.
// ---------------------------------------------------------------------------

struct OutputType {
  Sym letter;
  std::vector<int> bits;  // membership in each output parameter
};

namespace rdetail {

inline bool match_bits(const std::string& pat, const std::vector<int>& bits) {
  if (pat.size() != bits.size()) return false;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (pat[i] == '*') continue;
    if ((pat[i] == '1') != (bits[i] != 0)) return false;
  }
  return true;
}

inline bool match_otype(const std::string& pat, const OutputType& o) {
  auto colon = pat.find(':');
  std::string sp = colon == std::string::npos ? pat : pat.substr(0, colon);
  if (sp != "*" && sp != o.letter) return false;
  if (colon == std::string::npos) return true;
  return match_bits(pat.substr(colon + 1), o.bits);
}

}  // namespace rdetail

struct Resynchronizer {
  std::vector<std::string> input_params;   // set variables over input positions
  std::vector<std::string> output_params;  // set variables over output positions
  MsoFormula alpha = MsoFormula::mk(MsoFormula::kTrue);
  MsoFormula beta = MsoFormula::mk(MsoFormula::kTrue);
  std::vector<std::pair<std::string, MsoFormula>> gamma;  // otype pattern -> phi(y,z)
  std::vector<std::pair<std::string, MsoFormula>> delta;  // pair pattern -> phi(z,zp)

  const MsoFormula& gamma_for(const OutputType& o) const {
    const MsoFormula* fallback = nullptr;
    // Exact-letter patterns take precedence over "*" patterns regardless of
    // entry order (JSON objects do not preserve declaration order).
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& [pat, f] : gamma) {
        if (pat == "default") { if (!fallback) fallback = &f; continue; }
        if ((pat.rfind("*", 0) == 0) != (pass == 1)) continue;
        if (rdetail::match_otype(pat, o)) return f;
      }
    if (fallback) return *fallback;
    if (gamma.empty()) {
      static const MsoFormula id = MsoFormula::atom2(MsoFormula::kEq, "y", "z");
      return id;
    }
    throw InputError("no gamma entry matches output letter " + o.letter);
  }

  const MsoFormula& delta_for(const OutputType& a, const OutputType& b) const {
    const MsoFormula* fallback = nullptr;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& [pat, f] : delta) {
        if (pat == "default") { if (!fallback) fallback = &f; continue; }
        auto comma = pat.find(',');
        if (comma == std::string::npos)
          throw InputError("delta pattern needs two parts: " + pat);
        bool wild = pat.rfind("*", 0) == 0 || pat.compare(comma + 1, 1, "*") == 0;
        if (wild != (pass == 1)) continue;
        if (rdetail::match_otype(pat.substr(0, comma), a) &&
            rdetail::match_otype(pat.substr(comma + 1), b))
          return f;
      }
    if (fallback) return *fallback;
    static const MsoFormula tt = MsoFormula::mk(MsoFormula::kTrue);
    return tt;
  }
};

inline MsoFormula formula_body_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_formula(j.get<std::string>());
  return parse_formula(j.at("body").get<std::string>());
}

inline Resynchronizer resync_from_json(const nlohmann::json& j) {
  Resynchronizer r;
  if (j.contains("input_params"))
    for (const auto& p : j["input_params"]) r.input_params.push_back(p.get<std::string>());
  if (j.contains("output_params"))
    for (const auto& p : j["output_params"]) r.output_params.push_back(p.get<std::string>());
  if (j.contains("alpha")) r.alpha = formula_body_from_json(j["alpha"]);
  if (j.contains("beta")) r.beta = formula_body_from_json(j["beta"]);
  if (j.contains("gamma"))
    for (auto it = j["gamma"].begin(); it != j["gamma"].end(); ++it)
      r.gamma.emplace_back(it.key(), formula_body_from_json(it.value()));
  else
    r.gamma.emplace_back("default", MsoFormula::atom2(MsoFormula::kEq, "y", "z"));
  if (j.contains("delta"))
    for (auto it = j["delta"].begin(); it != j["delta"].end(); ++it)
      r.delta.emplace_back(it.key(), formula_body_from_json(it.value()));
  return r;
}

// ---------------------------------------------------------------------------
// Direct semantics on origin-tagged pairs: (src, tgt) is admitted when some
// choice of input/output parameter sets satisfies alpha on the input, beta on
// the output, gamma at every output position (y = src origin, z = tgt
// origin), and delta on every consecutive pair of tgt origins.
// ---------------------------------------------------------------------------

inline bool resync_semantics(const Resynchronizer& r, const SyncPair& src,
                             const SyncPair& tgt) {
  if (src.input != tgt.input) return false;
  if (src.output.size() != tgt.output.size()) return false;
  for (std::size_t i = 0; i < src.output.size(); ++i)
    if (src.output[i].first != tgt.output[i].first) return false;
  const Word& u = src.input;
  int n = static_cast<int>(u.size());
  int len = static_cast<int>(src.output.size());
  for (const auto& out : {src.output, tgt.output})
    for (const auto& [sym, o] : out)
      if (o < 1 || o > n)
        throw InputError("resynchronizer semantics undefined for marker origins");
  Word v;
  for (const auto& [sym, o] : tgt.output) v.push_back(sym);

  int m = static_cast<int>(r.input_params.size());
  int k = static_cast<int>(r.output_params.size());
  auto subsets = [](int size) {
    std::vector<std::set<int>> out;
    for (unsigned long mask = 0; mask < (1ul << size); ++mask) {
      std::set<int> s;
      for (int i = 0; i < size; ++i)
        if (mask & (1ul << i)) s.insert(i + 1);
      out.push_back(std::move(s));
    }
    return out;
  };
  auto isets = subsets(n), osets = subsets(len);

  std::vector<std::size_t> io(m, 0);
  for (;;) {
    Assignment ia;
    for (int p = 0; p < m; ++p) ia.sets[r.input_params[p]] = isets[io[p]];
    if (r.alpha.kind == MsoFormula::kTrue || evaluate(r.alpha, u, ia)) {
      std::vector<std::size_t> oo(k, 0);
      for (;;) {
        Assignment oa;
        for (int p = 0; p < k; ++p) oa.sets[r.output_params[p]] = osets[oo[p]];
        bool ok = r.beta.kind == MsoFormula::kTrue || evaluate(r.beta, v, oa);
        auto otype = [&](int x) {  // 1-based output position
          OutputType t;
          t.letter = v[x - 1];
          for (int p = 0; p < k; ++p)
            t.bits.push_back(oa.sets[r.output_params[p]].count(x) ? 1 : 0);
          return t;
        };
        for (int x = 1; ok && x <= len; ++x) {
          Assignment ga = ia;
          ga.pos["y"] = src.output[x - 1].second;
          ga.pos["z"] = tgt.output[x - 1].second;
          ok = evaluate(r.gamma_for(otype(x)), u, ga);
        }
        for (int x = 1; ok && x + 1 <= len; ++x) {
          const MsoFormula& d = r.delta_for(otype(x), otype(x + 1));
          if (d.kind == MsoFormula::kTrue) continue;
          Assignment da = ia;
          da.pos["z"] = tgt.output[x - 1].second;
          da.pos["zp"] = tgt.output[x].second;
          ok = evaluate(d, u, da);
        }
        if (ok) return true;
        int p = 0;
        while (p < k && ++oo[p] == osets.size()) oo[p++] = 0;
        if (p == k) break;
        if (k == 0) break;
      }
    }
    int p = 0;
    while (p < m && ++io[p] == isets.size()) io[p++] = 0;
    if (p == m) break;
    if (m == 0) break;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Boundedness: for each gamma constraint, over words annotated with the
// input parameters and a marked target position z, the number of source
// positions y satisfying the constraint must be uniformly bounded.  This is
// finite ambiguity of the automaton that guesses and checks y.
// ---------------------------------------------------------------------------

inline bool is_bounded(const Resynchronizer& r, const std::vector<Sym>& sigma,
                       std::size_t budget = default_state_budget()) {
  std::set<std::string> seen;
  for (const auto& [pat, f] : r.gamma) {
    if (!seen.insert(format_formula(f)).second) continue;
    std::vector<MsoVar> slots;
    for (const auto& p : r.input_params) slots.push_back({p, true});
    slots.push_back({"z", false});
    slots.push_back({"y", false});
    Nfa c = compile_mso(f, slots, sigma, budget);
    Dfa d = determinize(c, budget);
    Nfa marked = mark_and_project(dfa_to_nfa(d),
                                  static_cast<int>(r.input_params.size()) + 1);
    if (!is_finitely_ambiguous(marked)) return false;
  }
  return true;
}

/// Working alphabet for a standalone boundedness query: the letters the
/// formulas mention, plus one neutral letter standing for all others.
inline std::vector<Sym> default_sigma_for(const Resynchronizer& r) {
  std::set<Sym> labels;
  collect_labels(r.alpha, labels);
  collect_labels(r.beta, labels);
  for (const auto& [p, f] : r.gamma) collect_labels(f, labels);
  for (const auto& [p, f] : r.delta) collect_labels(f, labels);
  labels.insert("_");
  return {labels.begin(), labels.end()};
}

// ---------------------------------------------------------------------------
// Monoid tables for a family of two-position constraints: the joint
// transition monoid of the deterministic automata of all constraints over
// sigma x params x {mark1, mark2}, with per-constraint accepting element
// sets.  h(letter)[2*f1+f2] is the element of the letter with given marks.
// ---------------------------------------------------------------------------

namespace rdetail {

struct MonoidTables {
  Dfa joint;
  TransMonoid mo;
  std::vector<std::vector<bool>> comp_final;  // per constraint: joint-state finality
  std::vector<std::set<int>> accept;          // per constraint: accepting elements
  std::map<std::string, int> index_of;        // canonical formula text -> constraint
  int id = 0;
  std::map<Sym, std::array<int, 4>> hcache;   // flagged letter -> marked elements

  int mul(int a, int b) const { return mo.mul[a][b]; }
  bool member(int constraint, int elem) const {
    return accept[constraint].count(elem) != 0;
  }

  /// Elements of a parameter-flagged input letter under the four markings.
  const std::array<int, 4>& h(const Sym& flagged) {
    auto it = hcache.find(flagged);
    if (it != hcache.end()) return it->second;
    FlaggedSym fs = dec_flagged(flagged);
    std::array<int, 4> out{};
    for (int f1 = 0; f1 < 2; ++f1)
      for (int f2 = 0; f2 < 2; ++f2) {
        auto flags = fs.flags;
        flags.push_back(f1);
        flags.push_back(f2);
        Sym s = enc_flagged(fs.base, flags);
        int idx = -1;
        for (int i = 0; i < static_cast<int>(joint.alphabet.size()); ++i)
          if (joint.alphabet[i] == s) { idx = i; break; }
        if (idx < 0) throw InputError("monoid tables: letter outside alphabet: " + s);
        out[2 * f1 + f2] = mo.sym_elem[idx];
      }
    return hcache.emplace(flagged, out).first->second;
  }
};

/// v1/v2 are the first-order variable names of the constraints (first and
/// second mark track, in that order).
inline MonoidTables build_monoid_tables(const std::vector<MsoFormula>& bodies,
                                        const std::vector<std::string>& params,
                                        const std::string& v1, const std::string& v2,
                                        const std::vector<Sym>& sigma,
                                        std::size_t budget) {
  MonoidTables t;
  std::vector<MsoVar> slots;
  for (const auto& p : params) slots.push_back({p, true});
  slots.push_back({v1, false});
  slots.push_back({v2, false});
  std::vector<Dfa> ds;
  for (const auto& b : bodies) ds.push_back(determinize(compile_mso(b, slots, sigma, budget), budget));
  if (ds.empty()) ds.push_back(determinize(empty_nfa(flagged_alphabet(sigma, static_cast<int>(params.size()) + 2)), budget));

  // Complete product automaton, states discovered from the initial tuple.
  Dfa& prod = t.joint;
  prod.alphabet = ds[0].alphabet;
  std::map<std::vector<int>, int> idx;
  std::vector<std::vector<int>> tuples;
  std::vector<int> start;
  for (const auto& d : ds) start.push_back(d.initial);
  idx[start] = 0;
  tuples.push_back(start);
  prod.initial = 0;
  for (std::size_t q = 0; q < tuples.size(); ++q) {
    prod.delta.emplace_back();
    for (std::size_t a = 0; a < prod.alphabet.size(); ++a) {
      std::vector<int> nxt;
      for (std::size_t i = 0; i < ds.size(); ++i) nxt.push_back(ds[i].delta[tuples[q][i]][a]);
      auto it = idx.find(nxt);
      int to;
      if (it == idx.end()) {
        to = static_cast<int>(tuples.size());
        if (tuples.size() + 1 > budget) throw BudgetError("monoid tables: product too large");
        idx[nxt] = to;
        tuples.push_back(nxt);
      } else {
        to = it->second;
      }
      prod.delta[q].push_back(to);
    }
  }
  prod.n = static_cast<int>(tuples.size());
  prod.final_.assign(prod.n, false);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    t.comp_final.emplace_back(prod.n, false);
    for (int q = 0; q < prod.n; ++q)
      t.comp_final.back()[q] = ds[i].final_[tuples[q][i]];
    t.index_of[format_formula(bodies[i])] = static_cast<int>(i);
  }
  t.mo = transition_monoid(prod, budget);
  t.id = t.mo.identity;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    t.accept.emplace_back();
    for (int e = 0; e < t.mo.size(); ++e)
      if (t.comp_final[i][t.mo.apply(e, prod.initial)]) t.accept.back().insert(e);
  }
  return t;
}

/// Monoid values reachable as prefix products (identity, then extend on the
/// right by unmarked letters) over the given parameter-flagged letters.
inline std::vector<int> reachable_prefix_vals(MonoidTables& t, const std::vector<Sym>& letters) {
  std::set<int> vals{t.id};
  std::vector<int> work{t.id};
  while (!work.empty()) {
    int l = work.back();
    work.pop_back();
    for (const auto& a : letters) {
      int nl = t.mul(l, t.h(a)[0]);
      if (vals.insert(nl).second) work.push_back(nl);
    }
  }
  return {vals.begin(), vals.end()};
}

inline std::vector<int> reachable_suffix_vals(MonoidTables& t, const std::vector<Sym>& letters) {
  std::set<int> vals{t.id};
  std::vector<int> work{t.id};
  while (!work.empty()) {
    int r = work.back();
    work.pop_back();
    for (const auto& a : letters) {
      int nr = t.mul(t.h(a)[0], r);
      if (vals.insert(nr).second) work.push_back(nr);
    }
  }
  return {vals.begin(), vals.end()};
}

/// Annotate each inner letter with claimed prefix/suffix monoid values and
/// build the automaton accepting exactly the consistently annotated words.
/// `hof(inner)` must yield the unmarked element of the letter.
struct MonLayer {
  std::vector<Sym> letters;  // enc_mon over the inner letters
  Nfa checker;
};

template <typename HOf>
inline MonLayer build_mon_layer(MonoidTables& t, const std::vector<Sym>& inner, HOf hof) {
  MonLayer out;
  auto lv = [&] {
    std::set<int> vals{t.id};
    std::vector<int> work{t.id};
    while (!work.empty()) {
      int l = work.back();
      work.pop_back();
      for (const auto& a : inner) {
        int nl = t.mul(l, hof(a));
        if (vals.insert(nl).second) work.push_back(nl);
      }
    }
    return std::vector<int>(vals.begin(), vals.end());
  }();
  auto rv = [&] {
    std::set<int> vals{t.id};
    std::vector<int> work{t.id};
    while (!work.empty()) {
      int r = work.back();
      work.pop_back();
      for (const auto& a : inner) {
        int nr = t.mul(hof(a), r);
        if (vals.insert(nr).second) work.push_back(nr);
      }
    }
    return std::vector<int>(vals.begin(), vals.end());
  }();
  for (const auto& a : inner)
    for (int l : lv)
      for (int r : rv) out.letters.push_back(enc_mon({a, l, r}));

  // Checker states: start, plus (expected next prefix value, previous
  // suffix value).  A word is consistent when the first prefix claim is the
  // identity, claims chain by the letters' unmarked elements, and the last
  // suffix claim is the identity.
  Nfa& c = out.checker;
  c.alphabet = out.letters;
  int start = c.add_state("start");
  c.mark_initial(start);
  c.mark_final(start);  // the empty word carries no claims
  std::map<std::pair<int, int>, int> states;
  auto state_of = [&](int lexp, int rprev) {
    auto key = std::make_pair(lexp, rprev);
    auto it = states.find(key);
    if (it != states.end()) return it->second;
    int q = c.add_state("l" + std::to_string(lexp) + "r" + std::to_string(rprev));
    if (rprev == t.id) c.mark_final(q);
    states[key] = q;
    return q;
  };
  for (const auto& sym : out.letters) {
    MonSym ms = dec_mon(sym);
    int h0 = hof(ms.base);
    if (ms.l == t.id) c.add_edge(start, sym, state_of(t.mul(t.id, h0), ms.r));
  }
  // Edges between interior states; enumerate all (state, letter) pairs.
  std::vector<std::pair<std::pair<int, int>, int>> snapshot(states.begin(), states.end());
  std::size_t done = 0;
  while (done < snapshot.size()) {
    auto [key, q] = snapshot[done++];
    auto [lexp, rprev] = key;
    for (const auto& sym : out.letters) {
      MonSym ms = dec_mon(sym);
      int h0 = hof(ms.base);
      if (ms.l != lexp) continue;
      if (rprev != t.mul(h0, ms.r)) continue;
      auto nkey = std::make_pair(t.mul(lexp, h0), ms.r);
      auto it = states.find(nkey);
      int nq;
      if (it == states.end()) {
        nq = state_of(nkey.first, nkey.second);
        snapshot.emplace_back(nkey, nq);
      } else {
        nq = it->second;
      }
      c.add_edge(q, sym, nq);
    }
  }
  return out;
}

/// Relabel an automaton's edges onto an extended alphabet: every edge with
/// letter a becomes one copy per extended letter e with proj(e) == a.
inline Nfa lift_nfa(const Nfa& a, const std::vector<Sym>& ext,
                    const std::function<Sym(const Sym&)>& proj) {
  Nfa b;
  b.alphabet = ext;
  b.n = a.n;
  b.names = a.names;
  b.initial = a.initial;
  b.final_ = a.final_;
  std::map<Sym, std::vector<int>> fibers;
  for (int i = 0; i < static_cast<int>(ext.size()); ++i) fibers[proj(ext[i])].push_back(i);
  for (const auto& e : a.edges) {
    auto it = fibers.find(a.alphabet[e[1]]);
    if (it == fibers.end()) continue;
    for (int s : it->second) b.add_edge_idx(e[0], s, e[2]);
  }
  return b;
}

/// Single letters accepted by a language, plus whether it contains epsilon.
inline std::pair<bool, std::vector<Sym>> letter_profile(const Nfa& lang) {
  std::vector<Sym> letters;
  for (const auto& s : lang.alphabet)
    if (nfa_accepts(lang, {s})) letters.push_back(s);
  return {nfa_accepts_epsilon(lang), letters};
}

}  // namespace rdetail

// ---------------------------------------------------------------------------
// Application pipeline.
// ---------------------------------------------------------------------------

/// Result of applying a resynchronizer: a transducer over an annotated copy
/// of the input alphabet, the automaton of validly annotated inputs, and the
/// per-letter projection back to the original alphabet.
struct Applied {
  TwoWayTransducer t;
  Nfa a;
  std::map<Sym, Sym> base_of;
};

namespace rdetail {

struct Carrier {
  TwoWayTransducer t;
  Nfa a;
  std::map<Sym, Sym> flagged_of;  // current input letter -> parameter-flagged letter
  std::vector<Sym> base_sigma;    // original input alphabet
  std::vector<Sym> gamma_sigma;   // original output alphabet
};

inline void require_no_marker_outputs(const TwoWayTransducer& t) {
  for (const auto& tr : t.transitions)
    if (is_marker(tr.read) && !nfa_is_empty(minus_epsilon(trim(tr.output))))
      throw InputError(
          "transitions reading a boundary marker must not produce output");
}

inline Nfa eps_only(const std::vector<Sym>& alphabet) {
  return single_word_nfa(alphabet, {});
}

inline Nfa letter_lang(const std::vector<Sym>& alphabet, const Sym& b) {
  return single_word_nfa(alphabet, {b});
}

/// Stage 0: guess the input and output parameter sets position-wise.  The
/// input alphabet becomes sigma x B^m (with the valid-input automaton lifted
/// alongside) and every output letter carries its B^n membership bits.
inline Carrier lift_with_params(const Resynchronizer& r, const TwoWayTransducer& t,
                                const Nfa& a) {
  Carrier c;
  c.base_sigma = t.input_alphabet;
  c.gamma_sigma = t.output_alphabet;
  int m = static_cast<int>(r.input_params.size());
  int n = static_cast<int>(r.output_params.size());
  c.t.input_alphabet = flagged_alphabet(t.input_alphabet, m);
  c.t.output_alphabet = flagged_alphabet(t.output_alphabet, n);
  for (const auto& s : c.t.input_alphabet) c.flagged_of[s] = s;
  for (const auto& s : t.states) c.t.states.push_back(s);
  c.t.initial = t.initial;
  c.t.final_ = t.final_;
  auto lift_output = [&](const Nfa& lang) {
    return lift_nfa(lang, c.t.output_alphabet,
                    [](const Sym& s) { return dec_flagged(s).base; });
  };
  auto bits = all_bitvectors(m);
  for (const auto& tr : t.transitions) {
    if (is_marker(tr.read)) {
      c.t.transitions.push_back({tr.from, tr.read, eps_only(c.t.output_alphabet),
                                 tr.to, tr.leftward});
      continue;
    }
    Nfa lifted = lift_output(tr.output);
    for (const auto& b : bits)
      c.t.transitions.push_back({tr.from, enc_flagged(tr.read, b), lifted, tr.to,
                                 tr.leftward});
  }
  c.a = lift_nfa(a, c.t.input_alphabet, [](const Sym& s) { return dec_flagged(s).base; });
  return c;
}

inline void apply_alpha(const Resynchronizer& r, Carrier& c, std::size_t budget) {
  if (r.alpha.kind == MsoFormula::kTrue) return;
  std::vector<MsoVar> slots;
  for (const auto& p : r.input_params) slots.push_back({p, true});
  Nfa constraint = compile_mso(r.alpha, slots, c.base_sigma, budget);
  c.a = trim(nfa_product(c.a, constraint));
}

inline void apply_beta(const Resynchronizer& r, Carrier& c, std::size_t budget) {
  if (r.beta.kind == MsoFormula::kTrue) return;
  std::vector<MsoVar> slots;
  for (const auto& p : r.output_params) slots.push_back({p, true});
  Nfa b = compile_mso(r.beta, slots, c.gamma_sigma, budget);
  // Run the output constraint across the whole production: states become
  // (transducer state, constraint state); each transition's language is
  // filtered by the constraint fragment between the two component states.
  TwoWayTransducer nt;
  nt.input_alphabet = c.t.input_alphabet;
  nt.output_alphabet = c.t.output_alphabet;
  int bn = b.n;
  for (const auto& s : c.t.states)
    for (int q = 0; q < bn; ++q)
      nt.add_state(s.name + "#" + std::to_string(q), s.left_reading);
  auto comp = [&](int p, int q) { return p * bn + q; };
  for (int p : c.t.initial)
    for (int q : b.initial) nt.initial.push_back(comp(p, q));
  for (int p : c.t.final_)
    for (int q : b.final_) nt.final_.push_back(comp(p, q));
  std::sort(nt.initial.begin(), nt.initial.end());
  std::sort(nt.final_.begin(), nt.final_.end());
  for (const auto& tr : c.t.transitions)
    for (int q = 0; q < bn; ++q)
      for (int qp = 0; qp < bn; ++qp) {
        Nfa frag = b;
        frag.initial = {q};
        frag.final_ = {qp};
        Nfa lang = trim(nfa_product(tr.output, frag));
        if (nfa_is_empty(lang)) continue;
        nt.transitions.push_back({comp(tr.from, q), tr.read, lang, comp(tr.to, qp),
                                  tr.leftward});
      }
  c.t = nt;
}

inline bool gamma_is_identity(const MsoFormula& f) {
  return f.kind == MsoFormula::kEq &&
         ((f.var == "y" && f.var2 == "z") || (f.var == "z" && f.var2 == "y"));
}

/// Stage gamma: every output letter is re-homed from its source origin y to
/// a target origin z admitted by the letter's constraint.  The transducer is
/// put in single-letter form; each emitting step is replaced by a silent
/// walk to a candidate z, the emission there, and a silent return to the
/// place the original step resumes from.  The return is checked against
/// prefix/suffix monoid annotations on the input, whose consistency is
/// enforced on the valid-input automaton.
inline void apply_gamma(const Resynchronizer& r, Carrier& c, std::size_t budget) {
  bool allid = true;
  for (const auto& [p, f] : r.gamma)
    if (!gamma_is_identity(f)) allid = false;
  if (allid) return;

  TwoWayTransducer t = single_letter_form(c.t);
  std::vector<MsoFormula> bodies;
  std::set<std::string> seen;
  for (const auto& [p, f] : r.gamma)
    if (seen.insert(format_formula(f)).second) bodies.push_back(f);
  MonoidTables mt = build_monoid_tables(bodies, r.input_params, "y", "z",
                                        c.base_sigma, budget);
  auto constraint_of = [&](const Sym& outLetter) {
    FlaggedSym fs = dec_flagged(outLetter);
    const MsoFormula& f = r.gamma_for({fs.base, fs.flags});
    return mt.index_of.at(format_formula(f));
  };
  auto hof = [&](const Sym& inLetter) -> const std::array<int, 4>& {
    return mt.h(c.flagged_of.at(inLetter));
  };
  MonLayer layer = build_mon_layer(mt, t.input_alphabet,
                                   [&](const Sym& s) { return hof(s)[0]; });

  TwoWayTransducer nt;
  nt.input_alphabet = layer.letters;
  nt.output_alphabet = t.output_alphabet;
  for (const auto& s : t.states) nt.add_state(s.name, s.left_reading);
  nt.initial = t.initial;
  nt.final_ = t.final_;

  std::map<std::string, int> walk_states;
  std::vector<std::pair<std::string, int>> work;  // (key, state index)
  auto walk_state = [&](const std::string& key, bool left) {
    auto it = walk_states.find(key);
    if (it != walk_states.end()) return it->second;
    if (nt.states.size() + 1 > budget) throw BudgetError("gamma stage: too many states");
    int q = nt.add_state(key, left);
    walk_states[key] = q;
    work.emplace_back(key, q);
    return q;
  };
  auto key_of = [](const char* tag, int tr, int a, int b, int s = -1) {
    nlohmann::json j{{"k", tag}, {"t", tr}, {"a", a}, {"b", b}};
    if (s >= 0) j["s"] = s;
    return j.dump();
  };
  auto push = [&](int from, const Sym& read, const Nfa& out, int to, bool leftward) {
    nt.transitions.push_back({from, read, out, to, leftward});
  };
  const Nfa eps = eps_only(nt.output_alphabet);

  // Fibers of the monoid-annotated alphabet over the previous letters.
  std::map<Sym, std::vector<Sym>> fiber;
  for (const auto& sym : layer.letters) fiber[dec_mon(sym).base].push_back(sym);

  for (int ti = 0; ti < static_cast<int>(t.transitions.size()); ++ti) {
    const auto& tr = t.transitions[ti];
    if (is_marker(tr.read)) {
      push(tr.from, tr.read, eps, tr.to, tr.leftward);
      continue;
    }
    auto [hasEps, letters] = letter_profile(tr.output);
    for (const auto& lam : fiber[tr.read]) {
      MonSym ms = dec_mon(lam);
      const auto& hv = hof(ms.base);
      if (hasEps) push(tr.from, lam, eps, tr.to, tr.leftward);
      for (const auto& b : letters) {
        int cf = constraint_of(b);
        // Emit in place (z = y).
        if (mt.member(cf, mt.mul(mt.mul(ms.l, hv[3]), ms.r)))
          push(tr.from, lam, letter_lang(nt.output_alphabet, b), tr.to, tr.leftward);
      }
      if (!letters.empty()) {
        // Walk right (z > y): remember the prefix value at y and accumulate
        // the marked-y infix while scanning.
        push(tr.from, lam, eps, walk_state(key_of("F", ti, ms.l, hv[2]), false), false);
        // Walk left (z < y): remember the suffix value at y.
        push(tr.from, lam, eps, walk_state(key_of("L", ti, ms.r, hv[2]), true), true);
      }
    }
  }

  // Saturate the walk machinery.
  std::size_t done = 0;
  while (done < work.size()) {
    auto [key, q] = work[done++];
    nlohmann::json j = nlohmann::json::parse(key);
    std::string kind = j["k"].get<std::string>();
    int ti = j["t"].get<int>();
    const auto& tr = t.transitions[ti];
    auto [hasEps, letters] = letter_profile(tr.output);
    (void)hasEps;
    auto resume = [&](int from, const Sym& lam) {
      // After the detour, the original step's move is replayed silently: a
      // rightward original step resumes right of y, a leftward one left of y.
      push(from, lam, eps, tr.to, tr.leftward);
    };
    for (const auto& lam : layer.letters) {
      MonSym ms = dec_mon(lam);
      const auto& hv = hof(ms.base);
      if (kind == "F") {
        int l = j["a"].get<int>(), m = j["b"].get<int>();
        // Continue scanning right.
        push(q, lam, eps, walk_state(key_of("F", ti, l, mt.mul(m, hv[0])), false), false);
        // Emit here (z at the current position), then backtrack.
        for (const auto& b : letters) {
          int cf = constraint_of(b);
          int val = mt.mul(mt.mul(l, mt.mul(m, hv[1])), ms.r);
          if (mt.member(cf, val))
            push(q, lam, letter_lang(nt.output_alphabet, b),
                 walk_state(key_of("B", ti, l, mt.mul(m, hv[1]), hv[1]), true), true);
        }
      } else if (kind == "B") {
        int l = j["a"].get<int>(), mtar = j["b"].get<int>(), s = j["s"].get<int>();
        // The source position is recognized by its prefix value and the
        // accumulated infix matching the remembered one.
        if (ms.l == l && mt.mul(hv[2], s) == mtar) resume(q, lam);
        push(q, lam, eps, walk_state(key_of("B", ti, l, mtar, mt.mul(hv[0], s)), true), true);
      } else if (kind == "L") {
        int ry = j["a"].get<int>(), macc = j["b"].get<int>();
        push(q, lam, eps, walk_state(key_of("L", ti, ry, mt.mul(hv[0], macc)), true), true);
        for (const auto& b : letters) {
          int cf = constraint_of(b);
          int val = mt.mul(mt.mul(ms.l, mt.mul(hv[1], macc)), ry);
          if (mt.member(cf, val))
            push(q, lam, letter_lang(nt.output_alphabet, b),
                 walk_state(key_of("R", ti, ry, mt.mul(hv[1], macc), hv[1]), false), false);
        }
      } else {  // "R": return rightward to the source position
        int ry = j["a"].get<int>(), mtar = j["b"].get<int>(), s = j["s"].get<int>();
        if (ms.r == ry && mt.mul(s, hv[2]) == mtar) resume(q, lam);
        push(q, lam, eps, walk_state(key_of("R", ti, ry, mtar, mt.mul(s, hv[0])), false), false);
      }
    }
  }

  c.a = trim(nfa_product(lift_nfa(c.a, layer.letters,
                                  [](const Sym& s) { return dec_mon(s).base; }),
                         layer.checker));
  std::map<Sym, Sym> nf;
  for (const auto& sym : layer.letters) nf[sym] = c.flagged_of.at(dec_mon(sym).base);
  c.flagged_of = std::move(nf);
  c.t = merge_parallel_transitions(nt);
}

inline bool delta_is_trivial(const Resynchronizer& r) {
  for (const auto& [p, f] : r.delta)
    if (f.kind != MsoFormula::kTrue) return false;
  return true;
}

/// Word-independent busy form: column transitions of the saturation view per
/// U-pair-annotated letter, with a fresh start state composing the silent
/// left-end closure into the first step, and a fresh sink absorbing silent
/// right-end closures after the last rightward step.
inline TwoWayTransducer normalized_letters(const TwoWayTransducer& t,
                                           std::vector<Sym>& annotAlpha) {
  EpsIndex eps(t);
  std::set<IdxPairSet> lus, rus;
  {
    std::vector<IdxPairSet> work{left_upair_step(t, eps, {}, kLeftMarker)};
    lus.insert(work[0]);
    while (!work.empty()) {
      IdxPairSet lp = work.back();
      work.pop_back();
      for (const auto& a : t.input_alphabet) {
        auto nl = left_upair_step(t, eps, lp, a);
        if (lus.insert(nl).second) work.push_back(nl);
      }
    }
    work = {right_upair_step(t, eps, {}, kRightMarker)};
    rus.insert(*work.begin());
    while (!work.empty()) {
      IdxPairSet rp = work.back();
      work.pop_back();
      for (const auto& a : t.input_alphabet) {
        auto nr = right_upair_step(t, eps, rp, a);
        if (rus.insert(nr).second) work.push_back(nr);
      }
    }
  }
  annotAlpha.clear();
  for (const auto& a : t.input_alphabet)
    for (const auto& lp : lus)
      for (const auto& rp : rus) {
        AnnotSym s;
        s.base = a;
        s.l1 = to_names(t, lp);
        s.r1 = to_names(t, rp);
        annotAlpha.push_back(enc_annot(s));
      }

  BusyView view(t, 1, BusyStage::kNorm);
  TwoWayTransducer tb;
  tb.input_alphabet = annotAlpha;
  tb.output_alphabet = view.output_alphabet();
  for (const auto& s : t.states) tb.states.push_back(s);
  int s0 = tb.add_state("@start", false);
  int f0 = tb.add_state("@finish", false);
  tb.initial = {s0};
  tb.final_ = t.final_;
  tb.final_.push_back(f0);
  IdxPairSet lflips = left_upair_step(t, eps, {}, kLeftMarker);
  IdxPairSet rflips = right_upair_step(t, eps, {}, kRightMarker);
  auto rev = [](const IdxPairSet& ps) {
    IdxPairSet o;
    for (auto [a, b] : ps) o.emplace_back(b, a);
    canon_idx(o);
    return o;
  };
  {  // the empty input: acceptance via silent bounces on both markers only
    std::set<int> ini(t.initial.begin(), t.initial.end());
    ini = silent_end_closure(ini, rflips, lflips);
    for (int f : t.final_)
      if (ini.count(f)) { tb.final_.push_back(s0); break; }
  }
  std::sort(tb.final_.begin(), tb.final_.end());
  tb.final_.erase(std::unique(tb.final_.begin(), tb.final_.end()), tb.final_.end());

  for (const auto& sym : annotAlpha) {
    AnnotSym a = dec_annot(sym);
    const auto& cols = view.letter_transitions(sym);
    std::set<int> ic(t.initial.begin(), t.initial.end());
    ic = silent_end_closure(
        ic, right_upair_step(t, eps, to_indices(t, a.r1), a.base), lflips);
    std::set<int> fc(t.final_.begin(), t.final_.end());
    fc = silent_end_closure(
        fc, rev(left_upair_step(t, eps, to_indices(t, a.l1), a.base)), rev(rflips));
    for (const auto& col : cols) {
      tb.transitions.push_back({col.from, sym, col.output, col.to, col.leftward});
      bool entry = !t.states[col.from].left_reading && ic.count(col.from);
      bool exit = !col.leftward && fc.count(col.to);
      if (entry)
        tb.transitions.push_back({s0, sym, col.output, col.to, col.leftward});
      if (exit)
        tb.transitions.push_back({col.from, sym, col.output, f0, false});
      if (entry && exit && !col.leftward)
        tb.transitions.push_back({s0, sym, col.output, f0, false});
    }
  }
  return merge_parallel_transitions(tb);
}

/// Explicit automaton of validly U-pair-annotated words over the candidate
/// annotated letters.
inline Nfa upair_checker(const TwoWayTransducer& t, const std::vector<Sym>& annotAlpha) {
  EpsIndex eps(t);
  IdxPairSet lstart = left_upair_step(t, eps, {}, kLeftMarker);
  IdxPairSet rend = right_upair_step(t, eps, {}, kRightMarker);
  Nfa c;
  c.alphabet = annotAlpha;
  int start = c.add_state("start");
  c.mark_initial(start);
  c.mark_final(start);
  std::map<Sym, int> st;
  for (const auto& sym : annotAlpha) {
    st[sym] = c.add_state();
    if (to_indices(t, dec_annot(sym).r1) == rend) c.mark_final(st[sym]);
  }
  for (const auto& sym : annotAlpha) {
    AnnotSym a = dec_annot(sym);
    if (to_indices(t, a.l1) == lstart) c.add_edge(start, sym, st[sym]);
  }
  for (const auto& psym : annotAlpha) {
    AnnotSym p = dec_annot(psym);
    IdxPairSet nl = left_upair_step(t, eps, to_indices(t, p.l1), p.base);
    for (const auto& sym : annotAlpha) {
      AnnotSym a = dec_annot(sym);
      if (to_indices(t, a.l1) != nl) continue;
      if (to_indices(t, p.r1) != right_upair_step(t, eps, to_indices(t, a.r1), a.base))
        continue;
      c.add_edge(st[psym], sym, st[sym]);
    }
  }
  return c;
}

/// Stage delta: constrain every pair of consecutive target origins.  The
/// transducer is busy-normalized so that between two emissions the head
/// moves monotonically; the machinery then tracks the previous emission's
/// letter, its prefix/suffix monoid values, the accumulated infix since, and
/// on which side of the previous origin the head travels.
inline void apply_delta(const Resynchronizer& r, Carrier& c, std::size_t budget) {
  if (delta_is_trivial(r)) return;

  std::vector<Sym> annotAlpha;
  TwoWayTransducer tb = normalized_letters(c.t, annotAlpha);
  Nfa uch = upair_checker(c.t, annotAlpha);
  Nfa au = trim(nfa_product(
      lift_nfa(c.a, annotAlpha, [](const Sym& s) { return dec_annot(s).base; }), uch));

  std::vector<MsoFormula> bodies;
  std::set<std::string> seen;
  for (const auto& [p, f] : r.delta)
    if (seen.insert(format_formula(f)).second) bodies.push_back(f);
  MonoidTables mt = build_monoid_tables(bodies, r.input_params, "z", "zp",
                                        c.base_sigma, budget);
  auto flagged_of_u = [&](const Sym& usym) -> const Sym& {
    return c.flagged_of.at(dec_annot(usym).base);
  };
  auto hof = [&](const Sym& usym) -> const std::array<int, 4>& {
    return mt.h(flagged_of_u(usym));
  };
  MonLayer layer = build_mon_layer(mt, annotAlpha,
                                   [&](const Sym& s) { return hof(s)[0]; });

  auto otype = [&](const Sym& b) {
    FlaggedSym fs = dec_flagged(b);
    return OutputType{fs.base, fs.flags};
  };
  auto pair_constraint = [&](const Sym& b1, const Sym& b2) -> std::optional<int> {
    const MsoFormula& f = r.delta_for(otype(b1), otype(b2));
    if (f.kind == MsoFormula::kTrue) return std::nullopt;  // unconstrained
    return mt.index_of.at(format_formula(f));
  };

  // Emission blocks of one step: which (first letter, last letter) pairs are
  // realizable given that all letters of the block share one origin, whose
  // in-block consecutive pairs are checked with both marks on that origin.
  auto block_lang = [&](const Nfa& lang, int sameVal, const Sym& b1, const Sym& b2) {
    Nfa chain;
    chain.alphabet = lang.alphabet;
    int s = chain.add_state("s");
    chain.mark_initial(s);
    std::map<Sym, int> ls;
    for (const auto& b : lang.alphabet) ls[b] = chain.add_state();
    chain.add_edge(s, b1, ls[b1]);
    for (const auto& x : lang.alphabet)
      for (const auto& y : lang.alphabet) {
        auto cf = pair_constraint(x, y);
        if (!cf || mt.member(*cf, sameVal)) chain.add_edge(ls[x], y, ls[y]);
      }
    chain.mark_final(ls[b2]);
    return trim(nfa_product(lang, chain));
  };

  TwoWayTransducer nt;
  nt.input_alphabet = layer.letters;
  nt.output_alphabet = tb.output_alphabet;
  // Pre-emission copies of the busy states.
  for (const auto& s : tb.states) nt.add_state("pre:" + s.name, s.left_reading);
  nt.initial = tb.initial;
  for (int f : tb.final_) nt.final_.push_back(f);

  enum Tag { kOpen = 0, kLeft = 1, kRight = 2 };
  std::map<std::string, int> post;
  std::vector<std::pair<std::string, int>> work;
  auto post_state = [&](int q, const Sym& bl, int lz, int rz, int macc, int tag) {
    nlohmann::json j{{"q", q}, {"b", bl}, {"l", lz}, {"r", rz}, {"m", macc}, {"g", tag}};
    std::string key = j.dump();
    auto it = post.find(key);
    if (it != post.end()) return it->second;
    if (nt.states.size() + 1 > budget) throw BudgetError("delta stage: too many states");
    int s = nt.add_state(key, tb.states[q].left_reading);
    if (std::binary_search(tb.final_.begin(), tb.final_.end(), q)) nt.final_.push_back(s);
    post[key] = s;
    work.emplace_back(key, s);
    return s;
  };
  std::sort(nt.final_.begin(), nt.final_.end());

  std::vector<std::vector<int>> byFrom(tb.states.size());
  for (int i = 0; i < static_cast<int>(tb.transitions.size()); ++i)
    byFrom[tb.transitions[i].from].push_back(i);
  std::map<Sym, std::vector<Sym>> fiber;
  for (const auto& sym : layer.letters) fiber[dec_mon(sym).base].push_back(sym);
  const Nfa eps = eps_only(nt.output_alphabet);
  auto pushT = [&](int from, const Sym& read, const Nfa& out, int to, bool leftward) {
    nt.transitions.push_back({from, read, out, to, leftward});
  };

  // One emission step from a source context; ctx==nullptr before the first
  // emission (the leading block is unconstrained at its left boundary).
  struct Ctx { Sym bl; int lz, rz, macc, tag; };
  auto expand = [&](int src, int ti, const Ctx* ctx) {
    const auto& tr = tb.transitions[ti];
    bool srcLeft = tb.states[tr.from].left_reading;
    bool crossing = (tr.leftward == srcLeft);
    int dir = tr.leftward ? kLeft : kRight;
    for (const auto& lam : fiber[tr.read]) {
      MonSym ms = dec_mon(lam);
      const auto& hv = hof(ms.base);
      // Silent variant.
      if (nfa_accepts_epsilon(tr.output)) {
        if (!ctx) {
          pushT(src, lam, eps, tr.to, tr.leftward);
        } else if (!crossing) {
          pushT(src, lam, eps,
                          post_state(tr.to, ctx->bl, ctx->lz, ctx->rz, ctx->macc, ctx->tag),
                          tr.leftward);
        } else if (ctx->tag == kOpen || ctx->tag == dir) {
          int nm = dir == kRight ? mt.mul(ctx->macc, hv[0]) : mt.mul(hv[0], ctx->macc);
          pushT(src, lam, eps,
                          post_state(tr.to, ctx->bl, ctx->lz, ctx->rz, nm, dir),
                          tr.leftward);
        }
      }
      // Emitting variants: pick the block's first and last letters.  Blocks
      // may span several letters, so candidates range over every letter that
      // occurs in the output language; block_lang prunes impossible choices.
      int sameVal = mt.mul(mt.mul(ms.l, hv[3]), ms.r);
      std::set<Sym> letters;
      {
        Nfa tout = trim(tr.output);
        for (const auto& e : tout.edges) letters.insert(tout.alphabet[e[1]]);
      }
      for (const auto& b1 : letters)
        for (const auto& b2 : letters) {
          Nfa lang = block_lang(tr.output, sameVal, b1, b2);
          if (nfa_is_empty(lang)) continue;
          if (ctx) {
            auto cf = pair_constraint(ctx->bl, b1);
            if (cf) {
              int val;
              if (ctx->tag == kRight ||
                  (ctx->tag == kOpen && !tb.states[tr.from].left_reading))
                val = mt.mul(mt.mul(ctx->lz, mt.mul(ctx->macc, hv[1])), ms.r);
              else
                val = mt.mul(mt.mul(ms.l, mt.mul(hv[1], ctx->macc)), ctx->rz);
              if (!mt.member(*cf, val)) continue;
            }
          }
          int ntag = crossing ? dir : kOpen;
          pushT(src, lam, lang,
                          post_state(tr.to, b2, ms.l, ms.r, hv[2], ntag), tr.leftward);
        }
    }
  };

  for (int q = 0; q < static_cast<int>(tb.states.size()); ++q)
    for (int ti : byFrom[q]) expand(q, ti, nullptr);
  std::size_t done = 0;
  while (done < work.size()) {
    auto [key, s] = work[done++];
    nlohmann::json j = nlohmann::json::parse(key);
    Ctx ctx{j["b"].get<Sym>(), j["l"].get<int>(), j["r"].get<int>(), j["m"].get<int>(),
            j["g"].get<int>()};
    int q = j["q"].get<int>();
    for (int ti : byFrom[q]) expand(s, ti, &ctx);
  }

  c.a = trim(nfa_product(
      lift_nfa(au, layer.letters, [](const Sym& s) { return dec_mon(s).base; }),
      layer.checker));
  std::map<Sym, Sym> nf;
  for (const auto& sym : layer.letters)
    nf[sym] = flagged_of_u(dec_mon(sym).base);
  c.flagged_of = std::move(nf);
  std::sort(nt.initial.begin(), nt.initial.end());
  std::sort(nt.final_.begin(), nt.final_.end());
  nt.final_.erase(std::unique(nt.final_.begin(), nt.final_.end()), nt.final_.end());
  c.t = merge_parallel_transitions(nt);
}

}  // namespace rdetail

/// Apply a bounded resynchronizer to a transducer restricted to the inputs
/// of A, yielding a transducer/automaton pair over annotated inputs whose
/// per-annotated-word origin semantics realizes the resynchronized relation.
inline Applied apply(const Resynchronizer& r, const TwoWayTransducer& t, const Nfa& a,
                     std::size_t budget = default_state_budget()) {
  rdetail::require_no_marker_outputs(t);
  rdetail::Carrier c = rdetail::lift_with_params(r, t, a);
  rdetail::apply_alpha(r, c, budget);
  rdetail::apply_beta(r, c, budget);
  rdetail::apply_gamma(r, c, budget);
  rdetail::apply_delta(r, c, budget);

  // Erase the output parameter bits: they were only needed to key the
  // gamma/delta constraints.
  std::vector<Sym> outAlpha;
  std::map<Sym, Sym> outBase;
  for (const auto& s : c.t.output_alphabet) {
    Sym b = dec_flagged(s).base;
    outBase[s] = b;
    if (std::find(outAlpha.begin(), outAlpha.end(), b) == outAlpha.end())
      outAlpha.push_back(b);
  }
  for (auto& tr : c.t.transitions) {
    Nfa nl;
    nl.alphabet = outAlpha;
    nl.n = tr.output.n;
    nl.initial = tr.output.initial;
    nl.final_ = tr.output.final_;
    for (const auto& e : tr.output.edges)
      nl.add_edge(e[0], outBase.at(tr.output.alphabet[e[1]]), e[2]);
    tr.output = nl;
  }
  c.t.output_alphabet = outAlpha;
  c.t = merge_parallel_transitions(c.t);

  Applied out;
  out.t = std::move(c.t);
  out.a = std::move(c.a);
  for (const auto& [sym, flagged] : c.flagged_of)
    out.base_of[sym] = dec_flagged(flagged).base;

  // Drop transitions whose output language is empty (they can never fire,
  // not even silently) and states that are not on any initial-to-final path
  // of the transition graph; both otherwise inflate every downstream
  // crossing-sequence construction.
  {
    auto& t2 = out.t;
    std::vector<TwoWayTransducer::Transition> live;
    for (auto& tr : t2.transitions)
      if (!nfa_is_empty(tr.output)) live.push_back(std::move(tr));
    t2.transitions = std::move(live);
    int n = static_cast<int>(t2.states.size());
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::deque<int> work(t2.initial.begin(), t2.initial.end());
    for (int q : t2.initial) fwd[q] = 1;
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (const auto& tr : t2.transitions)
        if (tr.from == q && !fwd[tr.to]) { fwd[tr.to] = 1; work.push_back(tr.to); }
    }
    for (int q : t2.final_) { bwd[q] = 1; work.push_back(q); }
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (const auto& tr : t2.transitions)
        if (tr.to == q && !bwd[tr.from]) { bwd[tr.from] = 1; work.push_back(tr.from); }
    }
    std::vector<int> remap(n, -1);
    TwoWayTransducer nt;
    nt.input_alphabet = t2.input_alphabet;
    nt.output_alphabet = t2.output_alphabet;
    for (int q = 0; q < n; ++q)
      if (fwd[q] && bwd[q])
        remap[q] = nt.add_state(t2.states[q].name, t2.states[q].left_reading);
    if (nt.states.empty()) nt.initial.push_back(nt.add_state("dead", false));
    for (int q : t2.initial)
      if (remap[q] >= 0) nt.initial.push_back(remap[q]);
    for (int q : t2.final_)
      if (remap[q] >= 0) nt.final_.push_back(remap[q]);
    for (const auto& tr : t2.transitions)
      if (remap[tr.from] >= 0 && remap[tr.to] >= 0)
        nt.transitions.push_back({remap[tr.from], tr.read, tr.output, remap[tr.to],
                                  tr.leftward});
    std::sort(nt.initial.begin(), nt.initial.end());
    std::sort(nt.final_.begin(), nt.final_.end());
    out.t = std::move(nt);
  }

  // The stage constructions leave behind letter and state names that embed
  // whole construction keys; downstream algorithms treat both as opaque, so
  // compact them (keeping base_of as the bridge back to the base alphabet).
  std::map<Sym, Sym> shortSym;
  int k = 0;
  for (const auto& s : out.t.input_alphabet) shortSym[s] = "u" + std::to_string(k++);
  for (auto& s : out.t.input_alphabet) s = shortSym.at(s);
  for (auto& tr : out.t.transitions)
    if (!is_marker(tr.read)) tr.read = shortSym.at(tr.read);
  for (auto& s : out.a.alphabet)
    if (shortSym.count(s)) s = shortSym.at(s);
  std::map<Sym, Sym> nb;
  for (const auto& [sym, base] : out.base_of) nb[shortSym.at(sym)] = base;
  out.base_of = std::move(nb);
  for (std::size_t i = 0; i < out.t.states.size(); ++i)
    out.t.states[i].name = "q" + std::to_string(i);
  return out;
}

/// The origin pairs over a base input word realized by an applied
/// resynchronizer: union over its validly annotated copies.
inline std::set<SyncPair> image_pairs(const Applied& ap, const Word& u, int maxOut) {
  std::map<Sym, std::vector<Sym>> cands;
  for (const auto& [sym, base] : ap.base_of) cands[base].push_back(sym);
  std::set<SyncPair> out;
  std::vector<std::size_t> odo(u.size(), 0);
  for (const auto& b : u)
    if (!cands.count(b)) return out;
  for (;;) {
    Word w;
    for (std::size_t i = 0; i < u.size(); ++i) w.push_back(cands[u[i]][odo[i]]);
    if (nfa_accepts(ap.a, w)) {
      for (auto p : enumerate_sync_pairs(ap.t, w, maxOut)) {
        p.input = u;
        out.insert(p);
      }
    }
    std::size_t i = 0;
    while (i < u.size() && ++odo[i] == cands[u[i]].size()) odo[i++] = 0;
    if (i == u.size()) break;
    if (u.empty()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Containment modulo a bounded resynchronizer.
// ---------------------------------------------------------------------------

struct ModuloResult {
  bool contained = true;
  Word input;
  std::optional<SyncPair> evidence;  // produced by T1, not matched through R from T2
  bool confirmed = false;
  std::size_t explored = 0;
};

inline ModuloResult containment_modulo(const TwoWayTransducer& t1,
                                       const TwoWayTransducer& t2,
                                       const Resynchronizer& r,
                                       std::size_t budget = default_state_budget(),
                                       int confirmMaxOut = 8) {
  auto sigma = shared_base_alphabet(t1, t2);
  if (!is_bounded(r, sigma, budget)) throw InputError("resynchronizer not bounded");
  Applied ap = apply(r, t2, universal_nfa(t2.input_alphabet), budget);

  // Re-read T1's inputs over the annotated alphabet so both sides range over
  // the same letters; T1 ignores the annotations.
  TwoWayTransducer l1 = t1;
  l1.input_alphabet = ap.t.input_alphabet;
  l1.transitions.clear();
  std::map<Sym, std::vector<Sym>> cands;
  for (const auto& [sym, base] : ap.base_of) cands[base].push_back(sym);
  for (const auto& tr : t1.transitions) {
    if (is_marker(tr.read)) {
      l1.transitions.push_back(tr);
      continue;
    }
    for (const auto& sym : cands[tr.read])
      l1.transitions.push_back({tr.from, sym, tr.output, tr.to, tr.leftward});
  }

  auto res = origin_containment_restricted(l1, ap.t, &ap.a, budget, 0);
  ModuloResult out;
  out.explored = res.explored;
  out.contained = res.contained;
  if (res.contained) return out;
  for (const auto& s : res.input) out.input.push_back(ap.base_of.at(s));

  // Confirm against the direct semantics: find a T1 pair on the witness word
  // that no T2 pair resynchronizes to.
  for (int maxOut = 1; maxOut <= confirmMaxOut && !out.confirmed; ++maxOut) {
    auto p1 = enumerate_sync_pairs(t1, out.input, maxOut);
    auto p2 = enumerate_sync_pairs(t2, out.input, maxOut);
    int n = static_cast<int>(out.input.size());
    auto has_marker_origin = [n](const SyncPair& p) {
      for (const auto& [sym, o] : p.output)
        if (o < 1 || o > n) return true;
      return false;
    };
    for (const auto& cand : p1) {
      if (has_marker_origin(cand)) continue;  // outside the resynchronizer's domain
      bool matched = false;
      for (const auto& src : p2) {
        if (src.output.size() != cand.output.size()) continue;
        if (has_marker_origin(src)) continue;
        if (resync_semantics(r, src, cand)) { matched = true; break; }
      }
      if (!matched) {
        out.evidence = cand;
        out.confirmed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace origin

#endif  // ORIGIN_RESYNC_HPP_
