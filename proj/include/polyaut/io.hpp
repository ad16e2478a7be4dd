#pragma once

#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "automaton.hpp"

namespace polyaut {

namespace detail {

struct ParsedStates {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> ids;
};

template <typename Aut>
void parse_transitions(
    Aut& aut, const ParsedStates& st,
    const std::vector<std::pair<int, std::vector<std::string>>>& rows,
    std::size_t first_trans) {
  aut.step.assign(aut.size(), std::vector<int>(aut.sig.dir_count(), no_target));
  for (std::size_t k = first_trans; k < rows.size(); ++k) {
    const auto& [line, toks] = rows[k];
    if (toks[0] == "state")
      throw parse_error(line, "state line after transitions");
    if (toks[0] != "trans" || toks.size() != 4)
      throw parse_error(line, "expected \"trans <state> <dir> <target>\"");
    auto q = st.ids.find(toks[1]);
    if (q == st.ids.end()) throw parse_error(line, "unknown state \"" + toks[1] + "\"");
    auto d = aut.sig.dir_ids.find(toks[2]);
    if (d == aut.sig.dir_ids.end())
      throw parse_error(line, "unknown direction \"" + toks[2] + "\"");
    auto t = st.ids.find(toks[3]);
    if (t == st.ids.end()) throw parse_error(line, "unknown state \"" + toks[3] + "\"");
    if (aut.step[q->second][d->second] != no_target)
      throw parse_error(line, "duplicate transition at state \"" + toks[1] +
                                  "\" direction \"" + toks[2] + "\"");
    aut.step[q->second][d->second] = t->second;
  }
}

inline void check_header(
    const std::vector<std::pair<int, std::vector<std::string>>>& rows,
    const std::string& kind) {
  if (rows.empty() || rows[0].second.size() != 1 || rows[0].second[0] != kind)
    throw parse_error(rows.empty() ? 1 : rows[0].first,
                      "expected \"" + kind + "\" header");
}

}  // namespace detail

// P-automaton file format:
//   paut
//   state <name> sort <sort> label <label>
//   trans <state> <dir> <target>
// Structural validity beyond the grammar is the job of validate_p.
inline PAutomaton parse_paut(const std::string& text, const Signature& sig) {
  auto rows = detail::tokenize_lines(text);
  detail::check_header(rows, "paut");
  PAutomaton aut;
  aut.sig = sig;
  detail::ParsedStates st;
  std::size_t k = 1;
  for (; k < rows.size() && rows[k].second[0] == "state"; ++k) {
    const auto& [line, toks] = rows[k];
    if (toks.size() != 6 || toks[2] != "sort" || toks[4] != "label")
      throw parse_error(line, "expected \"state <name> sort <sort> label <label>\"");
    if (!st.ids.emplace(toks[1], aut.size()).second)
      throw parse_error(line, "duplicate state \"" + toks[1] + "\"");
    st.names.push_back(toks[1]);
    auto s = sig.sort_ids.find(toks[3]);
    if (s == sig.sort_ids.end())
      throw parse_error(line, "unknown sort \"" + toks[3] + "\"");
    auto l = sig.label_ids[s->second].find(toks[5]);
    if (l == sig.label_ids[s->second].end())
      throw parse_error(line, "label \"" + toks[5] + "\" is not a label of sort \"" +
                                  toks[3] + "\"");
    aut.states.push_back(toks[1]);
    aut.sort_of.push_back(s->second);
    aut.label_of.push_back(l->second);
  }
  detail::parse_transitions(aut, st, rows, k);
  return aut;
}

// Q-automaton file format: as "paut" but with header "qaut"; the sort may be
// "0", in which case the state line carries no label token.
inline QAutomaton parse_qaut(const std::string& text, const Signature& sig) {
  auto rows = detail::tokenize_lines(text);
  detail::check_header(rows, "qaut");
  QAutomaton aut;
  aut.sig = sig;
  detail::ParsedStates st;
  std::size_t k = 1;
  for (; k < rows.size() && rows[k].second[0] == "state"; ++k) {
    const auto& [line, toks] = rows[k];
    if (toks.size() < 4 || toks[2] != "sort")
      throw parse_error(line, "expected \"state <name> sort <sort> [label <label>]\"");
    if (!st.ids.emplace(toks[1], aut.size()).second)
      throw parse_error(line, "duplicate state \"" + toks[1] + "\"");
    st.names.push_back(toks[1]);
    aut.states.push_back(toks[1]);
    if (toks[3] == "0") {
      if (toks.size() != 4)
        throw parse_error(line, "sink-sorted state carries no label");
      aut.sort_of.push_back(sink_sort);
      aut.label_of.push_back(-1);
    } else {
      if (toks.size() != 6 || toks[4] != "label")
        throw parse_error(line, "expected \"state <name> sort <sort> label <label>\"");
      auto s = sig.sort_ids.find(toks[3]);
      if (s == sig.sort_ids.end())
        throw parse_error(line, "unknown sort \"" + toks[3] + "\"");
      auto l = sig.label_ids[s->second].find(toks[5]);
      if (l == sig.label_ids[s->second].end())
        throw parse_error(line, "label \"" + toks[5] + "\" is not a label of sort \"" +
                                    toks[3] + "\"");
      aut.sort_of.push_back(s->second);
      aut.label_of.push_back(l->second);
    }
  }
  detail::parse_transitions(aut, st, rows, k);
  return aut;
}

inline std::string render_paut(const PAutomaton& aut) {
  std::string out = "paut\n";
  for (int q = 0; q < aut.size(); ++q)
    out += "state " + aut.states[q] + " sort " + aut.sig.sorts[aut.sort_of[q]] +
           " label " + aut.sig.labels[aut.sort_of[q]][aut.label_of[q]] + "\n";
  for (int q = 0; q < aut.size(); ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      if (aut.step[q][d] != no_target)
        out += "trans " + aut.states[q] + " " + aut.sig.dir_name(d) + " " +
               aut.states[aut.step[q][d]] + "\n";
  return out;
}

inline std::string render_qaut(const QAutomaton& aut) {
  std::string out = "qaut\n";
  for (int q = 0; q < aut.size(); ++q) {
    if (aut.sort_of[q] == sink_sort) {
      out += "state " + aut.states[q] + " sort 0\n";
    } else {
      out += "state " + aut.states[q] + " sort " + aut.sig.sorts[aut.sort_of[q]] +
             " label " + aut.sig.labels[aut.sort_of[q]][aut.label_of[q]] + "\n";
    }
  }
  for (int q = 0; q < aut.size(); ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      if (aut.step[q][d] != no_target)
        out += "trans " + aut.states[q] + " " + aut.sig.dir_name(d) + " " +
               aut.states[aut.step[q][d]] + "\n";
  return out;
}

// Morphism files: one "map <src> -> <dst>" line per source state.
template <typename Aut>
AutMorphism parse_map(const std::string& text, const Aut& src, const Aut& dst) {
  auto rows = detail::tokenize_lines(text);
  AutMorphism f;
  f.map.assign(src.size(), -1);
  for (const auto& [line, toks] : rows) {
    if (toks[0] != "map" || toks.size() != 4 || toks[2] != "->")
      throw parse_error(line, "expected \"map <src> -> <dst>\"");
    int q, t;
    try {
      q = state_index(src, toks[1]);
      t = state_index(dst, toks[3]);
    } catch (const error& e) {
      throw parse_error(line, e.what());
    }
    if (f.map[q] != -1)
      throw parse_error(line, "state \"" + toks[1] + "\" mapped twice");
    f.map[q] = t;
  }
  for (int q = 0; q < src.size(); ++q)
    if (f.map[q] == -1)
      throw error("morphism does not map state \"" + src.states[q] + "\"");
  return f;
}

template <typename Aut>
std::string render_map(const Aut& src, const Aut& dst, const AutMorphism& f) {
  std::string out;
  for (int q = 0; q < src.size(); ++q)
    out += "map " + src.states[q] + " -> " + dst.states[f.map[q]] + "\n";
  return out;
}

// Graphviz export: one node per state labeled "name:sort:label", one edge
// per transition labeled with the direction.
template <typename Aut>
std::string render_dot(const Aut& aut) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n";
  for (int q = 0; q < aut.size(); ++q) {
    std::string label;
    if constexpr (std::is_same_v<Aut, QAutomaton>) {
      label = label_token(aut.sig, observation(aut, q));
    } else {
      label = aut.sig.labels[aut.sort_of[q]][aut.label_of[q]];
    }
    out += "  \"" + aut.states[q] + "\" [label=\"" + aut.states[q] + ":" +
           aut.sig.sort_token(aut.sort_of[q]) + ":" + label + "\"];\n";
  }
  for (int q = 0; q < aut.size(); ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      if (aut.step[q][d] != no_target)
        out += "  \"" + aut.states[q] + "\" -> \"" + aut.states[aut.step[q][d]] +
               "\" [label=\"" + aut.sig.dir_name(d) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace polyaut
