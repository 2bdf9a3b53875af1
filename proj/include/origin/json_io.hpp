/* json_io.hpp -- JSON (de)serialization of automata, transducers and
 * verdicts, plus DOT rendering of origin graphs.
 *
 * SPDX-License-Identifier: MIT
 *
 * File formats:
 *  - NFA:        {"alphabet":[...], "states":[...], "initial":[...],
 *                 "final":[...], "transitions":[["p","a","q"],...]}
 *  - transducer: {"input_alphabet":[...], "output_alphabet":[...],
 *                 "states":[{"name":..,"class":"L"|"R"},...], "initial":[...],
 *                 "final":[...], "transitions":[{"from":..,"read":..,
 *                 "to":..,"dir":"left"|"right","output":{"words":[...]} or
 *                 {"nfa":{...}}},...]}.  "^" and "$" denote the end markers.
 *  - verdict:    {"verdict":"contained"|"not-contained",
 *                 "counterexample":{"input":[...],"output":[["a",1],...]},
 *                 "confirmed":true|false}
 */

#ifndef ORIGIN_JSON_IO_HPP_
#define ORIGIN_JSON_IO_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "origin/containment.hpp"
#include "origin/transducer.hpp"

namespace origin {

inline Nfa nfa_from_json(const json& j) {
  if (!j.is_object()) throw InputError("nfa: object expected");
  Nfa a;
  for (const auto& s : j.value("alphabet", json::array()))
    a.alphabet.push_back(s.get<Sym>());
  std::map<std::string, int> idx;
  for (const auto& s : j.value("states", json::array())) {
    std::string name = s.get<std::string>();
    if (idx.count(name)) throw InputError("nfa: duplicate state " + name);
    idx[name] = a.add_state(name);
  }
  auto state_of = [&](const json& v) {
    std::string name = v.get<std::string>();
    auto it = idx.find(name);
    if (it == idx.end()) throw InputError("nfa: unknown state " + name);
    return it->second;
  };
  for (const auto& s : j.value("initial", json::array())) a.mark_initial(state_of(s));
  for (const auto& s : j.value("final", json::array())) a.mark_final(state_of(s));
  for (const auto& e : j.value("transitions", json::array())) {
    if (!e.is_array() || e.size() != 3) throw InputError("nfa: transition triple expected");
    a.add_edge(state_of(e[0]), e[1].get<Sym>(), state_of(e[2]));
  }
  return a;
}

inline json nfa_to_json(const Nfa& a) {
  json j;
  j["alphabet"] = a.alphabet;
  json st = json::array(), tr = json::array(), ini = json::array(), fin = json::array();
  for (int q = 0; q < a.n; ++q) st.push_back(a.state_name(q));
  for (int q : a.initial) ini.push_back(a.state_name(q));
  for (int q : a.final_) fin.push_back(a.state_name(q));
  for (const auto& e : a.edges)
    tr.push_back(json::array({a.state_name(e[0]), a.alphabet[e[1]], a.state_name(e[2])}));
  j["states"] = st;
  j["initial"] = ini;
  j["final"] = fin;
  j["transitions"] = tr;
  return j;
}

namespace iodetail {

/// A word is either an array of symbols or a string read one character per
/// symbol (convenient for single-character alphabets).
inline Word word_from_json(const json& v) {
  Word w;
  if (v.is_array()) {
    for (const auto& s : v) w.push_back(s.get<Sym>());
  } else if (v.is_string()) {
    for (char c : v.get<std::string>()) w.push_back(std::string(1, c));
  } else {
    throw InputError("word: array of symbols or string expected");
  }
  return w;
}

}  // namespace iodetail

inline TwoWayTransducer transducer_from_json(const json& j) {
  if (!j.is_object()) throw InputError("transducer: object expected");
  TwoWayTransducer t;
  for (const auto& s : j.value("input_alphabet", json::array()))
    t.input_alphabet.push_back(s.get<Sym>());
  for (const auto& s : j.value("output_alphabet", json::array()))
    t.output_alphabet.push_back(s.get<Sym>());
  for (const auto& s : j.value("states", json::array())) {
    std::string cls = s.value("class", "R");
    if (cls != "L" && cls != "R") throw InputError("transducer: state class must be L or R");
    t.add_state(s.at("name").get<std::string>(), cls == "L");
  }
  auto state_of = [&](const json& v) {
    int q = t.state_index(v.get<std::string>());
    if (q < 0) throw InputError("transducer: unknown state " + v.get<std::string>());
    return q;
  };
  for (const auto& s : j.value("initial", json::array())) t.initial.push_back(state_of(s));
  for (const auto& s : j.value("final", json::array())) t.final_.push_back(state_of(s));
  std::sort(t.initial.begin(), t.initial.end());
  std::sort(t.final_.begin(), t.final_.end());
  for (const auto& e : j.value("transitions", json::array())) {
    std::string dir = e.value("dir", "right");
    if (dir != "left" && dir != "right") throw InputError("transducer: dir must be left or right");
    Nfa lang;
    const json& out = e.at("output");
    if (out.contains("nfa")) {
      lang = nfa_from_json(out["nfa"]);
    } else if (out.contains("words")) {
      std::vector<Word> words;
      for (const auto& w : out["words"]) words.push_back(iodetail::word_from_json(w));
      if (words.empty()) throw InputError("transducer: output word list must be non-empty");
      lang = single_word_nfa(t.output_alphabet, words[0]);
      for (std::size_t i = 1; i < words.size(); ++i) lang = plus_word(lang, words[i]);
    } else {
      throw InputError("transducer: output needs \"words\" or \"nfa\"");
    }
    TwoWayTransducer::Transition tr;
    tr.from = state_of(e.at("from"));
    tr.read = e.at("read").get<Sym>();
    tr.output = lang;
    tr.to = state_of(e.at("to"));
    tr.leftward = dir == "left";
    t.transitions.push_back(tr);
  }
  for (const auto& msg : validate(t)) throw InputError("transducer: " + msg);
  return t;
}

inline json transducer_to_json(const TwoWayTransducer& t) {
  json j;
  j["input_alphabet"] = t.input_alphabet;
  j["output_alphabet"] = t.output_alphabet;
  json st = json::array(), ini = json::array(), fin = json::array(), tr = json::array();
  for (const auto& s : t.states)
    st.push_back(json{{"name", s.name}, {"class", s.left_reading ? "L" : "R"}});
  for (int q : t.initial) ini.push_back(t.states[q].name);
  for (int q : t.final_) fin.push_back(t.states[q].name);
  for (const auto& e : t.transitions) {
    json o;
    // Finite languages serialize as word lists, everything else as an NFA.
    std::set<Word> words = enumerate_words(e.output, 24);
    if (!words.empty()) {
      Nfa back = empty_nfa(e.output.alphabet);
      bool first = true;
      for (const auto& w : words) {
        if (first) { back = single_word_nfa(e.output.alphabet, w); first = false; }
        else back = plus_word(back, w);
      }
      if (nfa_is_empty(nfa_product(e.output, nfa_complement(back)))) {
        json ws = json::array();
        for (const auto& w : words) ws.push_back(w);
        o = json{{"words", ws}};
      }
    }
    if (o.is_null()) o = json{{"nfa", nfa_to_json(e.output)}};
    tr.push_back(json{{"from", t.states[e.from].name},
                      {"read", e.read},
                      {"to", t.states[e.to].name},
                      {"dir", e.leftward ? "left" : "right"},
                      {"output", o}});
  }
  j["states"] = st;
  j["initial"] = ini;
  j["final"] = fin;
  j["transitions"] = tr;
  return j;
}

inline json sync_pair_to_json(const SyncPair& p) {
  json o = json::array();
  for (const auto& [s, q] : p.output) o.push_back(json::array({s, q}));
  return json{{"input", p.input}, {"output", o}};
}

inline json verdict_to_json(const ContainmentResult& r) {
  json j;
  j["verdict"] = r.contained ? "contained" : "not-contained";
  if (!r.contained) {
    json c;
    c["input"] = r.input;
    if (r.evidence) c["output"] = sync_pair_to_json(*r.evidence)["output"];
    j["counterexample"] = c;
    j["confirmed"] = r.confirmed;
  }
  return j;
}

/// DOT rendering of one origin graph: the input word and the tagged output as
/// two ranked rows, with one origin edge per output letter.
inline std::string sync_pair_to_dot(const SyncPair& p, const std::string& name = "origin") {
  std::string d = "digraph \"" + name + "\" {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  d += "  { rank=same;";
  for (std::size_t i = 0; i < p.input.size(); ++i)
    d += " i" + std::to_string(i + 1) + " [label=\"" + p.input[i] + "\"];";
  d += " }\n  { rank=same;";
  for (std::size_t k = 0; k < p.output.size(); ++k)
    d += " o" + std::to_string(k + 1) + " [label=\"" + p.output[k].first + "\"];";
  d += " }\n";
  for (std::size_t i = 1; i < p.input.size(); ++i)
    d += "  i" + std::to_string(i) + " -> i" + std::to_string(i + 1) + " [style=invis];\n";
  for (std::size_t k = 1; k < p.output.size(); ++k)
    d += "  o" + std::to_string(k) + " -> o" + std::to_string(k + 1) + " [style=invis];\n";
  for (std::size_t k = 0; k < p.output.size(); ++k)
    d += "  o" + std::to_string(k + 1) + " -> i" + std::to_string(p.output[k].second) +
         ";\n";
  d += "}\n";
  return d;
}

}  // namespace origin

#endif  // ORIGIN_JSON_IO_HPP_
