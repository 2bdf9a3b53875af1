/* nfa.hpp -- finite automata over string symbols: NFA/DFA, boolean
 * operations, emptiness with shortest witnesses, ambiguity degree test,
 * transition monoids, and a lazily presented automaton view.
 *
 * SPDX-License-Identifier: MIT
 */

#ifndef ORIGIN_NFA_HPP_
#define ORIGIN_NFA_HPP_

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "origin/symbols.hpp"

namespace origin {

/// Nondeterministic finite automaton without epsilon transitions.
/// States are indices 0..n-1; `names` is optional display metadata.
struct Nfa {
  std::vector<Sym> alphabet;          // declared order fixes witness tie-breaks
  int n = 0;                          // number of states
  std::vector<std::string> names;     // empty, or one name per state
  std::vector<int> initial;           // sorted, unique
  std::vector<int> final_;            // sorted, unique
  std::vector<std::array<int, 3>> edges;  // (from, symbol index, to)

  int sym_index(const Sym& s) const {
    for (int i = 0; i < static_cast<int>(alphabet.size()); ++i)
      if (alphabet[i] == s) return i;
    return -1;
  }

  int add_state(const std::string& name = "") {
    if (!name.empty() || !names.empty()) {
      names.resize(n);
      names.push_back(name.empty() ? ("s" + std::to_string(n)) : name);
    }
    return n++;
  }

  void add_edge(int p, const Sym& s, int q) {
    int a = sym_index(s);
    if (a < 0) throw InputError("add_edge: symbol not in alphabet: " + s);
    edges.push_back({p, a, q});
  }

  void add_edge_idx(int p, int a, int q) { edges.push_back({p, a, q}); }

  void mark_initial(int q) {
    initial.push_back(q);
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  }

  void mark_final(int q) {
    final_.push_back(q);
    std::sort(final_.begin(), final_.end());
    final_.erase(std::unique(final_.begin(), final_.end()), final_.end());
  }

  bool is_initial(int q) const {
    return std::binary_search(initial.begin(), initial.end(), q);
  }
  bool is_final(int q) const {
    return std::binary_search(final_.begin(), final_.end(), q);
  }

  std::string state_name(int q) const {
    if (q >= 0 && q < static_cast<int>(names.size()) && !names[q].empty()) return names[q];
    return "s" + std::to_string(q);
  }

  /// Adjacency list: per state, (symbol index, target), sorted.
  std::vector<std::vector<std::pair<int, int>>> out_edges() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto& e : edges) adj[e[0]].push_back({e[1], e[2]});
    for (auto& v : adj) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
  }
};

/// Complete deterministic automaton (total transition function).
struct Dfa {
  std::vector<Sym> alphabet;
  int n = 0;
  int initial = 0;
  std::vector<bool> final_;
  std::vector<std::vector<int>> delta;  // delta[q][a]
};

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

inline Nfa empty_nfa(const std::vector<Sym>& alphabet) {
  Nfa a;
  a.alphabet = alphabet;
  return a;
}

/// Automaton accepting exactly the given word.
inline Nfa single_word_nfa(const std::vector<Sym>& alphabet, const Word& w) {
  Nfa a = empty_nfa(alphabet);
  for (std::size_t i = 0; i <= w.size(); ++i) a.add_state();
  a.mark_initial(0);
  a.mark_final(static_cast<int>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    a.add_edge(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
  return a;
}

/// Automaton accepting every word over the alphabet.
inline Nfa universal_nfa(const std::vector<Sym>& alphabet) {
  Nfa a = empty_nfa(alphabet);
  a.add_state();
  a.mark_initial(0);
  a.mark_final(0);
  for (int s = 0; s < static_cast<int>(alphabet.size()); ++s) a.add_edge_idx(0, s, 0);
  return a;
}

inline bool nfa_accepts(const Nfa& a, const Word& w) {
  std::set<int> cur(a.initial.begin(), a.initial.end());
  auto adj = a.out_edges();
  for (const auto& s : w) {
    int sy = a.sym_index(s);
    if (sy < 0) return false;
    std::set<int> next;
    for (int q : cur)
      for (auto [x, t] : adj[q])
        if (x == sy) next.insert(t);
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  for (int q : cur)
    if (a.is_final(q)) return true;
  return false;
}

/// Restrict to states both reachable and co-reachable.
inline Nfa trim(const Nfa& a) {
  auto adj = a.out_edges();
  std::vector<bool> reach(a.n, false), coreach(a.n, false);
  std::deque<int> bfs;
  for (int q : a.initial)
    if (!reach[q]) { reach[q] = true; bfs.push_back(q); }
  while (!bfs.empty()) {
    int q = bfs.front(); bfs.pop_front();
    for (auto [s, t] : adj[q])
      if (!reach[t]) { reach[t] = true; bfs.push_back(t); }
  }
  std::vector<std::vector<int>> radj(a.n);
  for (const auto& e : a.edges) radj[e[2]].push_back(e[0]);
  for (int q : a.final_)
    if (!coreach[q]) { coreach[q] = true; bfs.push_back(q); }
  while (!bfs.empty()) {
    int q = bfs.front(); bfs.pop_front();
    for (int p : radj[q])
      if (!coreach[p]) { coreach[p] = true; bfs.push_back(p); }
  }
  std::vector<int> remap(a.n, -1);
  Nfa b = empty_nfa(a.alphabet);
  for (int q = 0; q < a.n; ++q)
    if (reach[q] && coreach[q]) remap[q] = b.add_state(a.state_name(q));
  for (int q : a.initial)
    if (remap[q] >= 0) b.mark_initial(remap[q]);
  for (int q : a.final_)
    if (remap[q] >= 0) b.mark_final(remap[q]);
  std::set<std::array<int, 3>> seen;
  for (const auto& e : a.edges)
    if (remap[e[0]] >= 0 && remap[e[2]] >= 0) {
      std::array<int, 3> ne{remap[e[0]], e[1], remap[e[2]]};
      if (seen.insert(ne).second) b.edges.push_back(ne);
    }
  return b;
}

/// Intersection over the shared alphabet (result keeps a's declared order).
inline Nfa nfa_product(const Nfa& a, const Nfa& b) {
  Nfa c;
  std::vector<int> bsym;  // for each symbol of c, its index in b
  for (const auto& s : a.alphabet) {
    int j = b.sym_index(s);
    if (j >= 0) {
      c.alphabet.push_back(s);
      bsym.push_back(j);
    }
  }
  std::map<std::pair<int, int>, int> id;
  auto get = [&](int p, int q) {
    auto it = id.find({p, q});
    if (it != id.end()) return it->second;
    int k = c.add_state();
    id[{p, q}] = k;
    return k;
  };
  auto aadj = a.out_edges();
  auto badj = b.out_edges();
  std::deque<std::pair<int, int>> work;
  for (int p : a.initial)
    for (int q : b.initial) {
      int k = get(p, q);
      c.mark_initial(k);
      work.push_back({p, q});
    }
  std::set<std::pair<int, int>> seen(work.begin(), work.end());
  while (!work.empty()) {
    auto [p, q] = work.front(); work.pop_front();
    int from = get(p, q);
    for (int s = 0; s < static_cast<int>(c.alphabet.size()); ++s) {
      int sa = a.sym_index(c.alphabet[s]);
      int sb = bsym[s];
      for (auto [xa, ta] : aadj[p]) {
        if (xa != sa) continue;
        for (auto [xb, tb] : badj[q]) {
          if (xb != sb) continue;
          int to = get(ta, tb);
          c.add_edge_idx(from, s, to);
          if (seen.insert({ta, tb}).second) work.push_back({ta, tb});
        }
      }
    }
  }
  for (const auto& [pq, k] : id)
    if (a.is_final(pq.first) && b.is_final(pq.second)) c.mark_final(k);
  return c;
}

/// Disjoint union (language union).  Alphabets must agree.
inline Nfa nfa_union(const Nfa& a, const Nfa& b) {
  if (a.alphabet != b.alphabet) throw InputError("nfa_union: alphabet mismatch");
  Nfa c = a;
  c.names.clear();
  int off = c.n;
  for (int q = 0; q < b.n; ++q) c.add_state();
  for (const auto& e : b.edges) c.edges.push_back({e[0] + off, e[1], e[2] + off});
  for (int q : b.initial) c.mark_initial(q + off);
  for (int q : b.final_) c.mark_final(q + off);
  return c;
}

/// Subset construction; the result is complete (sink = empty subset).
inline Dfa determinize(const Nfa& a, std::size_t budget = 1u << 20) {
  Dfa d;
  d.alphabet = a.alphabet;
  auto adj = a.out_edges();
  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> subsets;
  auto get = [&](std::vector<int> ss) {
    auto it = id.find(ss);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(subsets.size());
    id[ss] = k;
    subsets.push_back(std::move(ss));
    if (subsets.size() > budget) throw BudgetError("determinize: subset budget exceeded");
    return k;
  };
  d.initial = get(a.initial);
  std::deque<int> work{d.initial};
  d.delta.clear();
  while (!work.empty()) {
    int k = work.front(); work.pop_front();
    if (static_cast<int>(d.delta.size()) <= k) d.delta.resize(k + 1);
    if (!d.delta[k].empty()) continue;
    d.delta[k].assign(a.alphabet.size(), -1);
    for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s) {
      std::set<int> next;
      for (int q : subsets[k])
        for (auto [x, t] : adj[q])
          if (x == s) next.insert(t);
      int to = get(std::vector<int>(next.begin(), next.end()));
      d.delta[k][s] = to;
      if (static_cast<int>(d.delta.size()) <= to || d.delta[to].empty()) work.push_back(to);
    }
  }
  d.n = static_cast<int>(subsets.size());
  d.delta.resize(d.n);
  for (int k = 0; k < d.n; ++k)
    if (d.delta[k].empty()) {
      d.delta[k].assign(a.alphabet.size(), -1);
      for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s) {
        std::set<int> next;
        for (int q : subsets[k])
          for (auto [x, t] : adj[q])
            if (x == s) next.insert(t);
        d.delta[k][s] = id.at(std::vector<int>(next.begin(), next.end()));
      }
    }
  d.final_.assign(d.n, false);
  for (int k = 0; k < d.n; ++k)
    for (int q : subsets[k])
      if (a.is_final(q)) { d.final_[k] = true; break; }
  return d;
}

inline Dfa complement(Dfa d) {
  for (std::size_t i = 0; i < d.final_.size(); ++i) d.final_[i] = !d.final_[i];
  return d;
}

inline Nfa dfa_to_nfa(const Dfa& d) {
  Nfa a = empty_nfa(d.alphabet);
  for (int q = 0; q < d.n; ++q) a.add_state();
  a.mark_initial(d.initial);
  for (int q = 0; q < d.n; ++q) {
    if (d.final_[q]) a.mark_final(q);
    for (int s = 0; s < static_cast<int>(d.alphabet.size()); ++s)
      a.add_edge_idx(q, s, d.delta[q][s]);
  }
  return a;
}

inline Nfa nfa_complement(const Nfa& a, std::size_t budget = 1u << 20) {
  return dfa_to_nfa(complement(determinize(a, budget)));
}

inline bool dfa_accepts(const Dfa& d, const Word& w) {
  int q = d.initial;
  for (const auto& s : w) {
    int sy = -1;
    for (int i = 0; i < static_cast<int>(d.alphabet.size()); ++i)
      if (d.alphabet[i] == s) { sy = i; break; }
    if (sy < 0) return false;
    q = d.delta[q][sy];
  }
  return d.final_[q];
}

/// Shortest accepted word; ties broken by declared symbol order.
inline std::optional<Word> shortest_accepted(const Nfa& a) {
  auto adj = a.out_edges();
  std::vector<int> parent(a.n, -1), psym(a.n, -1);
  std::vector<bool> seen(a.n, false);
  std::deque<int> bfs;
  for (int q : a.initial)
    if (!seen[q]) { seen[q] = true; bfs.push_back(q); }
  auto build = [&](int q) {
    Word w;
    while (parent[q] >= 0 || psym[q] >= 0) {
      w.push_back(a.alphabet[psym[q]]);
      q = parent[q];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (int q : a.initial)
    if (a.is_final(q)) return Word{};
  while (!bfs.empty()) {
    int q = bfs.front(); bfs.pop_front();
    for (auto [s, t] : adj[q]) {
      if (seen[t]) continue;
      seen[t] = true;
      parent[t] = q;
      psym[t] = s;
      if (a.is_final(t)) return build(t);
      bfs.push_back(t);
    }
  }
  return std::nullopt;
}

inline bool nfa_is_empty(const Nfa& a) { return !shortest_accepted(a).has_value(); }

inline bool nfa_accepts_epsilon(const Nfa& a) {
  for (int q : a.initial)
    if (a.is_final(q)) return true;
  return false;
}

/// Homomorphic image erasing the given letters: edges on erased letters act
/// as silent moves and are eliminated by closure; the erased letters are
/// removed from the alphabet.
inline Nfa erase_letters(const Nfa& a, const std::set<Sym>& erase) {
  std::vector<std::vector<int>> closure(a.n);
  for (int q = 0; q < a.n; ++q) {
    std::vector<char> seen(a.n, 0);
    std::deque<int> work{q};
    seen[q] = 1;
    while (!work.empty()) {
      int x = work.front();
      work.pop_front();
      closure[q].push_back(x);
      for (const auto& e : a.edges)
        if (e[0] == x && erase.count(a.alphabet[e[1]]) && !seen[e[2]]) {
          seen[e[2]] = 1;
          work.push_back(e[2]);
        }
    }
  }
  std::vector<Sym> alpha;
  for (const auto& s : a.alphabet)
    if (!erase.count(s)) alpha.push_back(s);
  Nfa b = empty_nfa(alpha);
  for (int q = 0; q < a.n; ++q) b.add_state();
  for (int q = 0; q < a.n; ++q)
    for (int r : closure[q])
      for (const auto& e : a.edges)
        if (e[0] == r && !erase.count(a.alphabet[e[1]])) b.add_edge(q, a.alphabet[e[1]], e[2]);
  for (int q : a.initial) b.mark_initial(q);
  for (int q = 0; q < a.n; ++q)
    for (int r : closure[q])
      if (a.is_final(r)) { b.mark_final(q); break; }
  return b;
}

/// Language minus the empty word (fresh non-final copies of initial states).
inline Nfa minus_epsilon(const Nfa& a) {
  if (!nfa_accepts_epsilon(a)) return a;
  Nfa b = a;
  b.names.clear();
  std::vector<int> fresh;
  for (int q : a.initial) {
    int k = b.add_state();
    fresh.push_back(k);
    for (const auto& e : a.edges)
      if (e[0] == q) b.edges.push_back({k, e[1], e[2]});
  }
  b.initial.clear();
  for (int k : fresh) b.mark_initial(k);
  return b;
}

/// Language union with a single word.
inline Nfa plus_word(const Nfa& a, const Word& w) {
  std::vector<Sym> alpha = a.alphabet;
  for (const auto& s : w)
    if (std::find(alpha.begin(), alpha.end(), s) == alpha.end()) alpha.push_back(s);
  Nfa b = empty_nfa(alpha);
  for (int q = 0; q < a.n; ++q) b.add_state();
  for (const auto& e : a.edges) b.add_edge(e[0], a.alphabet[e[1]], e[2]);
  for (int q : a.initial) b.mark_initial(q);
  for (int q : a.final_) b.mark_final(q);
  int prev = -1;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    int k = b.add_state();
    if (i == 0) b.mark_initial(k);
    else b.add_edge(prev, w[i - 1], k);
    if (i == w.size()) b.mark_final(k);
    prev = k;
  }
  return b;
}

/// All accepted words of length <= maxLen (deterministic on-the-fly subsets).
inline std::set<Word> enumerate_words(const Nfa& a, int maxLen) {
  std::set<Word> out;
  auto adj = a.out_edges();
  struct Item { std::set<int> ss; Word w; };
  std::deque<Item> work;
  work.push_back({std::set<int>(a.initial.begin(), a.initial.end()), {}});
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    for (int q : it.ss)
      if (a.is_final(q)) { out.insert(it.w); break; }
    if (static_cast<int>(it.w.size()) >= maxLen) continue;
    for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s) {
      std::set<int> next;
      for (int q : it.ss)
        for (auto [x, t] : adj[q])
          if (x == s) next.insert(t);
      if (next.empty()) continue;
      Word w = it.w;
      w.push_back(a.alphabet[s]);
      work.push_back({std::move(next), std::move(w)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree of ambiguity: finite vs infinite.
// ---------------------------------------------------------------------------

/// True iff the number of accepting runs per word is bounded.  After trimming,
/// the automaton is infinitely ambiguous iff two distinct useful states p, q
/// share a word v with runs p→v→p, p→v→q and q→v→q (this also subsumes the
/// two-distinct-self-loop pattern, which yields exponential ambiguity).
/// Detected as a nonempty path from (p,p,q) to (p,q,q) in the synchronized
/// triple product.
inline bool is_finitely_ambiguous(const Nfa& a0) {
  Nfa a = trim(a0);
  if (a.n == 0) return true;
  int n = a.n;
  auto tid = [n](int x, int y, int z) { return (x * n + y) * n + z; };
  std::vector<std::vector<int>> g(n * n * n);
  auto adj = a.out_edges();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (auto [s1, t1] : adj[x])
          for (auto [s2, t2] : adj[y])
            for (auto [s3, t3] : adj[z])
              if (s1 == s2 && s2 == s3) g[tid(x, y, z)].push_back(tid(t1, t2, t3));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      // Nonempty path (p,p,q) -> (p,q,q)?
      std::vector<char> seen(n * n * n, 0);
      std::deque<int> bfs;
      for (int w : g[tid(p, p, q)])
        if (!seen[w]) { seen[w] = 1; bfs.push_back(w); }
      bool hit = false;
      while (!bfs.empty() && !hit) {
        int u = bfs.front(); bfs.pop_front();
        if (u == tid(p, q, q)) { hit = true; break; }
        for (int w : g[u])
          if (!seen[w]) { seen[w] = 1; bfs.push_back(w); }
      }
      if (hit) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Transition monoid of a complete DFA.
// ---------------------------------------------------------------------------

struct TransMonoid {
  std::vector<std::vector<int>> elems;  // state transformations
  std::vector<std::vector<int>> mul;    // mul[i][j] = index of elems[i];elems[j]
  std::vector<int> sym_elem;            // alphabet index -> element index
  int identity = 0;

  int size() const { return static_cast<int>(elems.size()); }

  /// Image of a state under an element.
  int apply(int elem, int state) const { return elems[elem][state]; }
};

inline TransMonoid transition_monoid(const Dfa& d, std::size_t budget = 200000) {
  TransMonoid mo;
  std::map<std::vector<int>, int> index;
  auto intern = [&](std::vector<int> f) {
    auto it = index.find(f);
    if (it != index.end()) return it->second;
    int k = static_cast<int>(mo.elems.size());
    index[f] = k;
    mo.elems.push_back(std::move(f));
    if (mo.elems.size() > budget) throw BudgetError("transition_monoid: budget exceeded");
    return k;
  };
  std::vector<int> idf(d.n);
  for (int q = 0; q < d.n; ++q) idf[q] = q;
  mo.identity = intern(idf);
  std::vector<int> gens;
  for (int s = 0; s < static_cast<int>(d.alphabet.size()); ++s) {
    std::vector<int> f(d.n);
    for (int q = 0; q < d.n; ++q) f[q] = d.delta[q][s];
    int k = intern(std::move(f));
    mo.sym_elem.push_back(k);
    gens.push_back(k);
  }
  // Close under right multiplication with generators.
  for (std::size_t i = 0; i < mo.elems.size(); ++i)
    for (int g : gens) {
      std::vector<int> f(d.n);
      for (int q = 0; q < d.n; ++q) f[q] = mo.elems[g][mo.elems[i][q]];
      intern(std::move(f));
    }
  int m = mo.size();
  mo.mul.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> f(d.n);
      for (int q = 0; q < d.n; ++q) f[q] = mo.elems[j][mo.elems[i][q]];
      auto it = index.find(f);
      if (it == index.end()) throw BudgetError("transition_monoid: not closed");
      mo.mul[i][j] = it->second;  // mul[i][j] = "first i, then j"
    }
  return mo;
}

// ---------------------------------------------------------------------------
// Lazily presented automata and generic emptiness search.
// ---------------------------------------------------------------------------

/// An automaton given by an initial-state list, a successor function and a
/// final-state predicate.  States are opaque encoded strings.  Successors
/// must be returned in a deterministic order (witness tie-breaking).
struct LazyNfaView {
  std::function<std::vector<std::string>()> initials;
  std::function<std::vector<std::pair<Sym, std::string>>(const std::string&)> successors;
  std::function<bool(const std::string&)> is_final;
};

struct LazySearchResult {
  enum Status { kEmpty, kFound, kBudget } status = kEmpty;
  Word witness;  // valid when status == kFound
  std::size_t explored = 0;
};

/// Breadth-first emptiness check returning a shortest witness (ties resolved
/// by the successor enumeration order).
inline LazySearchResult lazy_shortest_accept(const LazyNfaView& v, std::size_t budget) {
  LazySearchResult res;
  struct Node { std::string state; int parent; int sym; };
  std::vector<Node> nodes;
  std::vector<Sym> syms;  // per node, symbol leading to it (index into nodes)
  std::unordered_set<std::string> seen;
  std::deque<int> work;
  auto build = [&](int i) {
    Word w;
    while (nodes[i].parent >= 0) {
      w.push_back(syms[i]);
      i = nodes[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (const auto& s : v.initials()) {
    if (!seen.insert(s).second) continue;
    nodes.push_back({s, -1, -1});
    syms.push_back("");
    if (v.is_final(s)) {
      res.status = LazySearchResult::kFound;
      res.witness = {};
      res.explored = nodes.size();
      return res;
    }
    work.push_back(static_cast<int>(nodes.size()) - 1);
  }
  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    if (nodes.size() > budget) {
      res.status = LazySearchResult::kBudget;
      res.explored = nodes.size();
      return res;
    }
    for (const auto& [sym, st] : v.successors(nodes[i].state)) {
      if (!seen.insert(st).second) continue;
      nodes.push_back({st, i, 0});
      syms.push_back(sym);
      int j = static_cast<int>(nodes.size()) - 1;
      if (v.is_final(st)) {
        res.status = LazySearchResult::kFound;
        res.witness = build(j);
        res.explored = nodes.size();
        return res;
      }
      work.push_back(j);
    }
  }
  res.status = LazySearchResult::kEmpty;
  res.explored = nodes.size();
  return res;
}

/// Materialized automaton wrapped as a lazy view.
inline LazyNfaView as_lazy(const Nfa& a) {
  auto adj = std::make_shared<std::vector<std::vector<std::pair<int, int>>>>(a.out_edges());
  auto na = std::make_shared<Nfa>(a);
  LazyNfaView v;
  v.initials = [na]() {
    std::vector<std::string> out;
    for (int q : na->initial) out.push_back(std::to_string(q));
    return out;
  };
  v.successors = [na, adj](const std::string& s) {
    int q = std::stoi(s);
    std::vector<std::pair<Sym, std::string>> out;
    for (auto [x, t] : (*adj)[q]) out.push_back({na->alphabet[x], std::to_string(t)});
    return out;
  };
  v.is_final = [na](const std::string& s) { return na->is_final(std::stoi(s)); };
  return v;
}

}  // namespace origin

#endif  // ORIGIN_NFA_HPP_
