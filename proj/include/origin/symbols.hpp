/* symbols.hpp -- alphabet symbols and canonical encodings for composite letters
 *
 * SPDX-License-Identifier: MIT
 *
 * Every automaton in this library ranges over std::string symbols.  Composite
 * letters (tuples from convolutions, flag-extended letters, U-pair-annotated
 * letters, monoid-annotated letters) are canonical JSON dumps so that they
 * compare, hash and serialize without any templating.  The reserved tokens
 * "^" and "$" denote the left/right end markers of a two-way tape and are
 * never members of an alphabet.
 */

#ifndef ORIGIN_SYMBOLS_HPP_
#define ORIGIN_SYMBOLS_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace origin {

using json = nlohmann::json;

using Sym = std::string;
using Word = std::vector<Sym>;

inline const Sym kLeftMarker = "^";
inline const Sym kRightMarker = "$";

inline bool is_marker(const Sym& s) { return s == kLeftMarker || s == kRightMarker; }

/// Error for malformed inputs (bad JSON, invalid machine descriptions, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Error for exceeded exploration budgets.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tuple symbols: ["a","b",...] -- used by convolutions and input lifting.
// ---------------------------------------------------------------------------

inline Sym enc_tuple(const std::vector<Sym>& parts) {
  json j = json::array();
  for (const auto& p : parts) j.push_back(p);
  return j.dump();
}

inline std::vector<Sym> dec_tuple(const Sym& s) {
  json j = json::parse(s);
  if (!j.is_array()) throw InputError("tuple symbol expected: " + s);
  std::vector<Sym> out;
  for (const auto& e : j) out.push_back(e.get<std::string>());
  return out;
}

// ---------------------------------------------------------------------------
// Flagged symbols: [base, f1, ..., fk] with fi in {0,1} -- used by compiled
// formulas (variable tracks) and by parameter-annotated letters.
// ---------------------------------------------------------------------------

inline Sym enc_flagged(const Sym& base, const std::vector<int>& flags) {
  json j = json::array();
  j.push_back(base);
  for (int f : flags) j.push_back(f != 0 ? 1 : 0);
  return j.dump();
}

struct FlaggedSym {
  Sym base;
  std::vector<int> flags;
};

inline FlaggedSym dec_flagged(const Sym& s) {
  json j = json::parse(s);
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw InputError("flagged symbol expected: " + s);
  FlaggedSym out;
  out.base = j[0].get<std::string>();
  for (std::size_t i = 1; i < j.size(); ++i) out.flags.push_back(j[i].get<int>());
  return out;
}

// ---------------------------------------------------------------------------
// State-pair sets (U-pair tracks).  Pairs are state names, kept sorted.
// ---------------------------------------------------------------------------

using PairSet = std::vector<std::pair<std::string, std::string>>;

inline void canon_pairset(PairSet& ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

inline json pairset_to_json(const PairSet& ps) {
  json j = json::array();
  for (const auto& [a, b] : ps) j.push_back(json::array({a, b}));
  return j;
}

inline PairSet pairset_from_json(const json& j) {
  PairSet ps;
  for (const auto& e : j) ps.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  canon_pairset(ps);
  return ps;
}

/// A letter together with the four U-pair tracks used when two machines are
/// analyzed over a joint annotated alphabet.  For single-machine uses the
/// second pair of tracks stays empty.
struct AnnotSym {
  Sym base;
  PairSet l1, r1, l2, r2;
};

inline Sym enc_annot(const AnnotSym& a) {
  json j;
  j["base"] = a.base;
  j["L1"] = pairset_to_json(a.l1);
  j["R1"] = pairset_to_json(a.r1);
  j["L2"] = pairset_to_json(a.l2);
  j["R2"] = pairset_to_json(a.r2);
  return j.dump();
}

inline AnnotSym dec_annot(const Sym& s) {
  json j = json::parse(s);
  if (!j.is_object() || !j.contains("base"))
    throw InputError("annotated symbol expected: " + s);
  AnnotSym a;
  a.base = j["base"].get<std::string>();
  a.l1 = pairset_from_json(j.value("L1", json::array()));
  a.r1 = pairset_from_json(j.value("R1", json::array()));
  a.l2 = pairset_from_json(j.value("L2", json::array()));
  a.r2 = pairset_from_json(j.value("R2", json::array()));
  return a;
}

// ---------------------------------------------------------------------------
// Monoid-annotated symbols: {"base": <inner symbol>, "l": i, "r": j} where
// i/j index monoid elements (prefix/suffix values at this position).
// ---------------------------------------------------------------------------

struct MonSym {
  Sym base;
  int l = 0;
  int r = 0;
};

inline Sym enc_mon(const MonSym& m) {
  json j;
  j["base"] = m.base;
  j["l"] = m.l;
  j["r"] = m.r;
  return j.dump();
}

inline MonSym dec_mon(const Sym& s) {
  json j = json::parse(s);
  if (!j.is_object() || !j.contains("l"))
    throw InputError("monoid-annotated symbol expected: " + s);
  return MonSym{j["base"].get<std::string>(), j["l"].get<int>(), j["r"].get<int>()};
}

// ---------------------------------------------------------------------------
// Small helpers.
// ---------------------------------------------------------------------------

/// Convolution of equal-length words into a word of tuple symbols.
inline Word convolve(const std::vector<Word>& tracks) {
  if (tracks.empty()) return {};
  std::size_t n = tracks[0].size();
  for (const auto& t : tracks)
    if (t.size() != n) throw InputError("convolve: track lengths differ");
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Sym> parts;
    parts.reserve(tracks.size());
    for (const auto& t : tracks) parts.push_back(t[i]);
    out.push_back(enc_tuple(parts));
  }
  return out;
}

/// All bit vectors of a given length, in lexicographic order (0 before 1).
inline std::vector<std::vector<int>> all_bitvectors(int k) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int b = 0; b <= 1; ++b) {
        auto w = v;
        w.push_back(b);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace origin

#endif  // ORIGIN_SYMBOLS_HPP_
