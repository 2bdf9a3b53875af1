/* mso.hpp -- monadic second-order logic over finite words: s-expression
 * syntax, direct evaluation, compilation to automata over flag-extended
 * alphabets, and the mark-and-project construction used for boundedness.
 *
 * SPDX-License-Identifier: MIT
 */

#ifndef ORIGIN_MSO_HPP_
#define ORIGIN_MSO_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "origin/nfa.hpp"
#include "origin/symbols.hpp"

namespace origin {

// ---------------------------------------------------------------------------
// Abstract syntax.
// ---------------------------------------------------------------------------

struct MsoFormula {
  enum Kind {
    kTrue, kFalse,
    kAnd, kOr, kNot,
    kExists1, kForall1, kExists2, kForall2,
    kLabel,   // label(sym, var): the position var carries letter sym
    kIn,      // in(var, var2): position var belongs to set var2
    kLt,      // var strictly before var2
    kSucc,    // var2 = var + 1
    kEq,      // var = var2
    kFirst,   // var = 1
    kLast,    // var = |word|
  };

  Kind kind = kTrue;
  std::string var;     // bound variable (quantifiers) or first position arg
  std::string var2;    // second position/set argument
  Sym sym;             // letter for kLabel
  std::vector<MsoFormula> kids;

  static MsoFormula mk(Kind k) { MsoFormula f; f.kind = k; return f; }
  static MsoFormula binary(Kind k, MsoFormula a, MsoFormula b) {
    MsoFormula f;
    f.kind = k;
    f.kids.push_back(std::move(a));
    f.kids.push_back(std::move(b));
    return f;
  }
  static MsoFormula negate(MsoFormula a) {
    MsoFormula f;
    f.kind = kNot;
    f.kids.push_back(std::move(a));
    return f;
  }
  static MsoFormula quant(Kind k, const std::string& v, MsoFormula body) {
    MsoFormula f;
    f.kind = k;
    f.var = v;
    f.kids.push_back(std::move(body));
    return f;
  }
  static MsoFormula atom2(Kind k, const std::string& a, const std::string& b) {
    MsoFormula f;
    f.kind = k;
    f.var = a;
    f.var2 = b;
    return f;
  }
  static MsoFormula atom1(Kind k, const std::string& a) {
    MsoFormula f;
    f.kind = k;
    f.var = a;
    return f;
  }
  static MsoFormula label(const Sym& s, const std::string& x) {
    MsoFormula f;
    f.kind = kLabel;
    f.sym = s;
    f.var = x;
    return f;
  }
};

/// A free variable slot: name plus order (position variable or set variable).
/// The order of a slot list fixes the flag layout of compiled alphabets.
struct MsoVar {
  std::string name;
  bool second_order = false;
};

/// A formula together with its declared free variables.  The compiled flag
/// layout lists the first-order frees first, then the set frees, each in
/// declared order.
struct FormulaSpec {
  std::vector<std::string> free1;
  std::vector<std::string> free2;
  MsoFormula body;

  std::vector<MsoVar> slots() const {
    std::vector<MsoVar> out;
    for (const auto& v : free1) out.push_back({v, false});
    for (const auto& v : free2) out.push_back({v, true});
    return out;
  }
};

// ---------------------------------------------------------------------------
// S-expression parser.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> sexpr_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) { out.push_back(cur); cur.clear(); }
      out.push_back(std::string(1, c));
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!cur.empty()) { out.push_back(cur); cur.clear(); }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline MsoFormula parse_sexpr_at(const std::vector<std::string>& toks, std::size_t& i) {
  if (i >= toks.size()) throw InputError("formula: unexpected end of input");
  const std::string& t = toks[i];
  if (t == ")") throw InputError("formula: unexpected ')'");
  if (t != "(") {
    ++i;
    if (t == "true") return MsoFormula::mk(MsoFormula::kTrue);
    if (t == "false") return MsoFormula::mk(MsoFormula::kFalse);
    throw InputError("formula: unknown atom: " + t);
  }
  ++i;  // consume '('
  if (i >= toks.size()) throw InputError("formula: unexpected end after '('");
  std::string head = toks[i++];
  auto arg = [&]() -> std::string {
    if (i >= toks.size() || toks[i] == "(" || toks[i] == ")")
      throw InputError("formula: expected name after '" + head + "'");
    return toks[i++];
  };
  auto close = [&]() {
    if (i >= toks.size() || toks[i] != ")")
      throw InputError("formula: expected ')' after '" + head + "'");
    ++i;
  };
  MsoFormula f;
  if (head == "and" || head == "or") {
    MsoFormula a = parse_sexpr_at(toks, i);
    MsoFormula b = parse_sexpr_at(toks, i);
    f = MsoFormula::binary(head == "and" ? MsoFormula::kAnd : MsoFormula::kOr,
                           std::move(a), std::move(b));
  } else if (head == "not") {
    f = MsoFormula::negate(parse_sexpr_at(toks, i));
  } else if (head == "exists1" || head == "forall1" || head == "exists2" ||
             head == "forall2") {
    std::string v = arg();
    MsoFormula::Kind k = head == "exists1" ? MsoFormula::kExists1
                       : head == "forall1" ? MsoFormula::kForall1
                       : head == "exists2" ? MsoFormula::kExists2
                                           : MsoFormula::kForall2;
    f = MsoFormula::quant(k, v, parse_sexpr_at(toks, i));
  } else if (head == "label") {
    std::string a = arg(), x = arg();
    f = MsoFormula::label(a, x);
  } else if (head == "in" || head == "lt" || head == "succ" || head == "eq") {
    std::string a = arg(), b = arg();
    MsoFormula::Kind k = head == "in" ? MsoFormula::kIn
                       : head == "lt" ? MsoFormula::kLt
                       : head == "succ" ? MsoFormula::kSucc
                                        : MsoFormula::kEq;
    f = MsoFormula::atom2(k, a, b);
  } else if (head == "first" || head == "last") {
    f = MsoFormula::atom1(head == "first" ? MsoFormula::kFirst : MsoFormula::kLast,
                          arg());
  } else {
    throw InputError("formula: unknown operator: " + head);
  }
  close();
  return f;
}

}  // namespace detail

inline MsoFormula parse_formula(const std::string& s) {
  auto toks = detail::sexpr_tokens(s);
  std::size_t i = 0;
  MsoFormula f = detail::parse_sexpr_at(toks, i);
  if (i != toks.size()) throw InputError("formula: trailing tokens");
  return f;
}

/// Canonical s-expression form (inverse of parse_formula up to whitespace).
inline std::string format_formula(const MsoFormula& f) {
  switch (f.kind) {
    case MsoFormula::kTrue: return "true";
    case MsoFormula::kFalse: return "false";
    case MsoFormula::kAnd:
      return "(and " + format_formula(f.kids[0]) + " " + format_formula(f.kids[1]) + ")";
    case MsoFormula::kOr:
      return "(or " + format_formula(f.kids[0]) + " " + format_formula(f.kids[1]) + ")";
    case MsoFormula::kNot: return "(not " + format_formula(f.kids[0]) + ")";
    case MsoFormula::kExists1: return "(exists1 " + f.var + " " + format_formula(f.kids[0]) + ")";
    case MsoFormula::kForall1: return "(forall1 " + f.var + " " + format_formula(f.kids[0]) + ")";
    case MsoFormula::kExists2: return "(exists2 " + f.var + " " + format_formula(f.kids[0]) + ")";
    case MsoFormula::kForall2: return "(forall2 " + f.var + " " + format_formula(f.kids[0]) + ")";
    case MsoFormula::kLabel: return "(label " + f.sym + " " + f.var + ")";
    case MsoFormula::kIn: return "(in " + f.var + " " + f.var2 + ")";
    case MsoFormula::kLt: return "(lt " + f.var + " " + f.var2 + ")";
    case MsoFormula::kSucc: return "(succ " + f.var + " " + f.var2 + ")";
    case MsoFormula::kEq: return "(eq " + f.var + " " + f.var2 + ")";
    case MsoFormula::kFirst: return "(first " + f.var + ")";
    case MsoFormula::kLast: return "(last " + f.var + ")";
  }
  throw InputError("format: unknown node");
}

/// Letters appearing in label atoms (used to pick a working alphabet).
inline void collect_labels(const MsoFormula& f, std::set<Sym>& out) {
  if (f.kind == MsoFormula::kLabel) out.insert(f.sym);
  for (const auto& k : f.kids) collect_labels(k, out);
}

/// Formula file: {"free1":["y","z"],"free2":["I1"],"body":"(...)"}
inline FormulaSpec formula_from_json(const json& j) {
  if (!j.is_object() || !j.contains("body"))
    throw InputError("formula file: object with \"body\" expected");
  FormulaSpec fs;
  for (const auto& v : j.value("free1", json::array()))
    fs.free1.push_back(v.get<std::string>());
  for (const auto& v : j.value("free2", json::array()))
    fs.free2.push_back(v.get<std::string>());
  fs.body = parse_formula(j["body"].get<std::string>());
  return fs;
}

// ---------------------------------------------------------------------------
// Direct evaluation (the reference semantics).
// ---------------------------------------------------------------------------

/// Variable assignment: positions are 1-based; sets hold 1-based positions.
struct Assignment {
  std::map<std::string, int> pos;
  std::map<std::string, std::set<int>> sets;
};

namespace detail {

inline int asg_pos(const Assignment& a, const std::string& v) {
  auto it = a.pos.find(v);
  if (it == a.pos.end()) throw InputError("evaluate: unbound position variable: " + v);
  return it->second;
}

inline const std::set<int>& asg_set(const Assignment& a, const std::string& v) {
  auto it = a.sets.find(v);
  if (it == a.sets.end()) throw InputError("evaluate: unbound set variable: " + v);
  return it->second;
}

inline bool eval_rec(const MsoFormula& f, const Word& w, Assignment& a) {
  int n = static_cast<int>(w.size());
  switch (f.kind) {
    case MsoFormula::kTrue: return true;
    case MsoFormula::kFalse: return false;
    case MsoFormula::kAnd: return eval_rec(f.kids[0], w, a) && eval_rec(f.kids[1], w, a);
    case MsoFormula::kOr: return eval_rec(f.kids[0], w, a) || eval_rec(f.kids[1], w, a);
    case MsoFormula::kNot: return !eval_rec(f.kids[0], w, a);
    case MsoFormula::kExists1:
    case MsoFormula::kForall1: {
      bool exists = f.kind == MsoFormula::kExists1;
      auto saved = a.pos.find(f.var) != a.pos.end()
                       ? std::optional<int>(a.pos[f.var]) : std::nullopt;
      bool res = !exists;
      for (int p = 1; p <= n; ++p) {
        a.pos[f.var] = p;
        bool v = eval_rec(f.kids[0], w, a);
        if (exists && v) { res = true; break; }
        if (!exists && !v) { res = false; break; }
      }
      if (saved) a.pos[f.var] = *saved; else a.pos.erase(f.var);
      return res;
    }
    case MsoFormula::kExists2:
    case MsoFormula::kForall2: {
      bool exists = f.kind == MsoFormula::kExists2;
      auto saved = a.sets.find(f.var) != a.sets.end()
                       ? std::optional<std::set<int>>(a.sets[f.var]) : std::nullopt;
      bool res = !exists;
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::set<int> s;
        for (int p = 1; p <= n; ++p)
          if (mask & (1ull << (p - 1))) s.insert(p);
        a.sets[f.var] = std::move(s);
        bool v = eval_rec(f.kids[0], w, a);
        if (exists && v) { res = true; break; }
        if (!exists && !v) { res = false; break; }
      }
      if (saved) a.sets[f.var] = *saved; else a.sets.erase(f.var);
      return res;
    }
    case MsoFormula::kLabel: {
      int p = asg_pos(a, f.var);
      return p >= 1 && p <= n && w[p - 1] == f.sym;
    }
    case MsoFormula::kIn: return asg_set(a, f.var2).count(asg_pos(a, f.var)) > 0;
    case MsoFormula::kLt: return asg_pos(a, f.var) < asg_pos(a, f.var2);
    case MsoFormula::kSucc: return asg_pos(a, f.var2) == asg_pos(a, f.var) + 1;
    case MsoFormula::kEq: return asg_pos(a, f.var) == asg_pos(a, f.var2);
    case MsoFormula::kFirst: return asg_pos(a, f.var) == 1;
    case MsoFormula::kLast: return asg_pos(a, f.var) == n && n >= 1;
  }
  throw InputError("evaluate: unknown node");
}

}  // namespace detail

inline bool evaluate(const MsoFormula& f, const Word& w, const Assignment& asg) {
  int n = static_cast<int>(w.size());
  for (const auto& [v, p] : asg.pos)
    if (p < 1 || p > n)
      throw InputError("evaluate: position of " + v + " out of range");
  for (const auto& [v, s] : asg.sets)
    for (int p : s)
      if (p < 1 || p > n)
        throw InputError("evaluate: member of " + v + " out of range");
  Assignment a = asg;
  return detail::eval_rec(f, w, a);
}

// ---------------------------------------------------------------------------
// Flag-extended alphabets and assignment encodings.
// ---------------------------------------------------------------------------

/// All letters [base, f1..fk], base-major, bit vectors in lexicographic order.
inline std::vector<Sym> flagged_alphabet(const std::vector<Sym>& sigma, int k) {
  std::vector<Sym> out;
  auto bits = all_bitvectors(k);
  for (const auto& b : sigma)
    for (const auto& f : bits) out.push_back(enc_flagged(b, f));
  return out;
}

/// Encode a word plus assignment as a word over the flagged alphabet, one
/// flag track per slot in order.
inline Word encode_assignment(const Word& w, const std::vector<MsoVar>& slots,
                              const Assignment& asg) {
  Word out;
  for (int i = 1; i <= static_cast<int>(w.size()); ++i) {
    std::vector<int> flags;
    for (const auto& s : slots) {
      if (s.second_order)
        flags.push_back(detail::asg_set(asg, s.name).count(i) ? 1 : 0);
      else
        flags.push_back(detail::asg_pos(asg, s.name) == i ? 1 : 0);
    }
    out.push_back(enc_flagged(w[i - 1], flags));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compilation.
// ---------------------------------------------------------------------------

namespace detail {

/// One-state loop automaton accepting the flagged words where every position
/// passes `ok`.
template <typename Pred>
Nfa loop_nfa(const std::vector<Sym>& alpha, Pred ok) {
  Nfa a = empty_nfa(alpha);
  int q = a.add_state();
  a.mark_initial(q);
  a.mark_final(q);
  for (const auto& s : alpha) {
    FlaggedSym fs = dec_flagged(s);
    if (ok(fs)) a.add_edge(q, s, q);
  }
  return a;
}

/// Accepts the encodings whose given track carries exactly one 1.
inline Nfa singleton_track(const std::vector<Sym>& alpha, int track) {
  Nfa a = empty_nfa(alpha);
  int s0 = a.add_state(), s1 = a.add_state();
  a.mark_initial(s0);
  a.mark_final(s1);
  for (const auto& s : alpha) {
    FlaggedSym fs = dec_flagged(s);
    if (fs.flags[track] == 0) {
      a.add_edge(s0, s, s0);
      a.add_edge(s1, s, s1);
    } else {
      a.add_edge(s0, s, s1);
    }
  }
  return a;
}

/// "Mark on track t strictly before mark on track u" (other positions free).
inline Nfa before_nfa(const std::vector<Sym>& alpha, int t, int u, bool adjacent) {
  Nfa a = empty_nfa(alpha);
  int s0 = a.add_state(), s1 = a.add_state(), s2 = a.add_state();
  a.mark_initial(s0);
  a.mark_final(s2);
  for (const auto& s : alpha) {
    FlaggedSym fs = dec_flagged(s);
    bool ft = fs.flags[t] != 0, fu = fs.flags[u] != 0;
    if (!ft && !fu) {
      a.add_edge(s0, s, s0);
      if (!adjacent) a.add_edge(s1, s, s1);
      a.add_edge(s2, s, s2);
    }
    if (ft && !fu) a.add_edge(s0, s, s1);
    if (!ft && fu) a.add_edge(s1, s, s2);
  }
  return a;
}

struct MsoCompiler {
  const std::vector<Sym>& sigma;
  std::size_t budget;
  std::vector<MsoVar> ctx;

  int track_of(const std::string& name) const {
    for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
      if (ctx[i].name == name) return i;
    throw InputError("compile: unbound variable: " + name);
  }

  int track_of(const std::string& name, bool second_order) const {
    int t = track_of(name);
    if (ctx[t].second_order != second_order)
      throw InputError("compile: variable used with wrong order: " + name);
    return t;
  }

  /// Drop the given flag track from every letter (existential projection).
  Nfa project(const Nfa& a, int track) const {
    Nfa b = empty_nfa(flagged_alphabet(sigma, static_cast<int>(ctx.size())));
    for (int q = 0; q < a.n; ++q) b.add_state();
    for (const auto& e : a.edges) {
      FlaggedSym fs = dec_flagged(a.alphabet[e[1]]);
      fs.flags.erase(fs.flags.begin() + track);
      b.add_edge(e[0], enc_flagged(fs.base, fs.flags), e[2]);
    }
    for (int q : a.initial) b.mark_initial(q);
    for (int q : a.final_) b.mark_final(q);
    return b;
  }

  Nfa go(const MsoFormula& f) {
    auto alpha = flagged_alphabet(sigma, static_cast<int>(ctx.size()));
    switch (f.kind) {
      case MsoFormula::kTrue: return universal_nfa(alpha);
      case MsoFormula::kFalse: return empty_nfa(alpha);
      case MsoFormula::kAnd: return trim(nfa_product(go(f.kids[0]), go(f.kids[1])));
      case MsoFormula::kOr: return trim(nfa_union(go(f.kids[0]), go(f.kids[1])));
      case MsoFormula::kNot: return nfa_complement(go(f.kids[0]), budget);
      case MsoFormula::kForall1:
      case MsoFormula::kForall2: {
        MsoFormula ex = MsoFormula::quant(
            f.kind == MsoFormula::kForall1 ? MsoFormula::kExists1 : MsoFormula::kExists2,
            f.var, MsoFormula::negate(f.kids[0]));
        return nfa_complement(go(ex), budget);
      }
      case MsoFormula::kExists1:
      case MsoFormula::kExists2: {
        bool so = f.kind == MsoFormula::kExists2;
        ctx.push_back({f.var, so});
        Nfa inner = go(f.kids[0]);
        int track = static_cast<int>(ctx.size()) - 1;
        if (!so) inner = trim(nfa_product(inner, singleton_track(inner.alphabet, track)));
        ctx.pop_back();
        return trim(project(inner, track));
      }
      case MsoFormula::kLabel: {
        int t = track_of(f.var, false);
        Sym want = f.sym;
        return loop_nfa(alpha, [t, want](const FlaggedSym& fs) {
          return fs.flags[t] == 0 || fs.base == want;
        });
      }
      case MsoFormula::kIn: {
        int t = track_of(f.var, false);
        int u = track_of(f.var2, true);
        return loop_nfa(alpha, [t, u](const FlaggedSym& fs) {
          return fs.flags[t] == 0 || fs.flags[u] != 0;
        });
      }
      case MsoFormula::kEq: {
        int t = track_of(f.var, false);
        int u = track_of(f.var2, false);
        return loop_nfa(alpha, [t, u](const FlaggedSym& fs) {
          return fs.flags[t] == fs.flags[u];
        });
      }
      case MsoFormula::kLt:
        return before_nfa(alpha, track_of(f.var, false), track_of(f.var2, false), false);
      case MsoFormula::kSucc:
        return before_nfa(alpha, track_of(f.var, false), track_of(f.var2, false), true);
      case MsoFormula::kFirst: {
        int t = track_of(f.var, false);
        Nfa a = empty_nfa(alpha);
        int s0 = a.add_state(), s1 = a.add_state();
        a.mark_initial(s0);
        a.mark_final(s1);
        for (const auto& s : alpha) {
          FlaggedSym fs = dec_flagged(s);
          if (fs.flags[t] != 0) a.add_edge(s0, s, s1);
          else a.add_edge(s1, s, s1);
        }
        return a;
      }
      case MsoFormula::kLast: {
        int t = track_of(f.var, false);
        Nfa a = empty_nfa(alpha);
        int s0 = a.add_state(), s1 = a.add_state();
        a.mark_initial(s0);
        a.mark_final(s1);
        for (const auto& s : alpha) {
          FlaggedSym fs = dec_flagged(s);
          if (fs.flags[t] == 0) a.add_edge(s0, s, s0);
          else a.add_edge(s0, s, s1);
        }
        return a;
      }
    }
    throw InputError("compile: unknown node");
  }
};

}  // namespace detail

/// Compile a formula whose free variables are the given slots, in the given
/// track order, over base alphabet `sigma`.  The result ranges over
/// sigma x B^k and accepts exactly the encodings of satisfying assignments;
/// first-order tracks are constrained to carry exactly one mark.
inline Nfa compile_mso(const MsoFormula& body, const std::vector<MsoVar>& slots,
                       const std::vector<Sym>& sigma, std::size_t budget = 1u << 20) {
  detail::MsoCompiler c{sigma, budget, slots};
  Nfa res = c.go(body);
  for (int t = 0; t < static_cast<int>(slots.size()); ++t)
    if (!slots[t].second_order)
      res = trim(nfa_product(res, detail::singleton_track(res.alphabet, t)));
  return res;
}

inline Nfa compile_mso(const FormulaSpec& fs, const std::vector<Sym>& sigma,
                       std::size_t budget = 1u << 20) {
  return compile_mso(fs.body, fs.slots(), sigma, budget);
}

// ---------------------------------------------------------------------------
// Mark-and-project: drop one flag track but require exactly one marked
// position, realized structurally with a before/after copy pair.  Each
// accepting run of the result fixes one marked position of an accepting run
// of the source, so the ambiguity degree of the result counts the marked
// positions compatible with each projected word.
// ---------------------------------------------------------------------------

inline Nfa mark_and_project(const Nfa& a, int track) {
  std::vector<Sym> bases;
  int k = -1;
  for (const auto& s : a.alphabet) {
    FlaggedSym fs = dec_flagged(s);
    if (k < 0) k = static_cast<int>(fs.flags.size());
    if (std::find(bases.begin(), bases.end(), fs.base) == bases.end())
      bases.push_back(fs.base);
  }
  if (k <= 0 || track < 0 || track >= k)
    throw InputError("mark_and_project: bad track index");
  Nfa b = empty_nfa(flagged_alphabet(bases, k - 1));
  for (int q = 0; q < 2 * a.n; ++q) b.add_state();
  for (const auto& e : a.edges) {
    FlaggedSym fs = dec_flagged(a.alphabet[e[1]]);
    int mark = fs.flags[track];
    fs.flags.erase(fs.flags.begin() + track);
    Sym s = enc_flagged(fs.base, fs.flags);
    if (mark == 0) {
      b.add_edge(e[0], s, e[2]);
      b.add_edge(e[0] + a.n, s, e[2] + a.n);
    } else {
      b.add_edge(e[0], s, e[2] + a.n);
    }
  }
  for (int q : a.initial) b.mark_initial(q);
  for (int q : a.final_) b.mark_final(q + a.n);
  return trim(b);
}

}  // namespace origin

#endif  // ORIGIN_MSO_HPP_
