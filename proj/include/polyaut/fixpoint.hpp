#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common.hpp"

namespace polyaut {

// World sets as bit vectors keyed by the frame's world ordering.
using WorldSet = std::uint64_t;

// Finite Kripke frame with one relation and one propositional valuation per
// sort of the index set.
struct KripkeFrame {
  std::vector<std::string> worlds;
  std::vector<std::string> sorts;
  std::vector<std::vector<WorldSet>> rel;  // [sort][world] = successor mask
  std::vector<WorldSet> val;               // [sort] = worlds where the sort's
                                           // proposition holds

  int world_count() const { return static_cast<int>(worlds.size()); }
  int sort_count() const { return static_cast<int>(sorts.size()); }
  WorldSet universe() const {
    return worlds.empty() ? 0 : (~WorldSet{0} >> (64 - worlds.size()));
  }
};

inline KripkeFrame make_frame(
    std::vector<std::string> worlds, std::vector<std::string> sorts,
    const std::vector<std::vector<std::pair<int, int>>>& rel_pairs,
    const std::vector<std::vector<int>>& val_worlds) {
  if (worlds.size() > 64) throw error("frames are limited to 64 worlds");
  if (rel_pairs.size() != sorts.size() || val_worlds.size() != sorts.size())
    throw error("frame tables out of shape");
  KripkeFrame f;
  f.worlds = std::move(worlds);
  f.sorts = std::move(sorts);
  f.rel.assign(f.sort_count(), std::vector<WorldSet>(f.world_count(), 0));
  f.val.assign(f.sort_count(), 0);
  auto check = [&](int w) {
    if (w < 0 || w >= f.world_count()) throw error("world index out of range");
  };
  for (int i = 0; i < f.sort_count(); ++i) {
    for (auto [from, to] : rel_pairs[i]) {
      check(from);
      check(to);
      f.rel[i][from] |= WorldSet{1} << to;
    }
    for (int w : val_worlds[i]) {
      check(w);
      f.val[i] |= WorldSet{1} << w;
    }
  }
  return f;
}

// Frame file format:
//   frame
//   sorts <name>+        (optional; otherwise sorts are collected from
//                          rel/val lines in order of first mention)
//   worlds <name>+
//   rel <sort> <from> <to>
//   val <sort> <world>*
inline KripkeFrame parse_frame(const std::string& text) {
  auto rows = detail::tokenize_lines(text);
  if (rows.empty() || rows[0].second.size() != 1 || rows[0].second[0] != "frame")
    throw parse_error(rows.empty() ? 1 : rows[0].first, "expected \"frame\" header");
  std::size_t k = 1;
  std::vector<std::string> sorts;
  std::unordered_map<std::string, int> sort_ids;
  bool sorts_declared = false;
  if (k < rows.size() && rows[k].second[0] == "sorts") {
    if (rows[k].second.size() < 2)
      throw parse_error(rows[k].first, "expected \"sorts <name>+\"");
    sorts_declared = true;
    for (std::size_t i = 1; i < rows[k].second.size(); ++i) {
      const std::string& s = rows[k].second[i];
      if (!sort_ids.emplace(s, static_cast<int>(sorts.size())).second)
        throw parse_error(rows[k].first, "duplicate sort \"" + s + "\"");
      sorts.push_back(s);
    }
    ++k;
  }
  if (k >= rows.size() || rows[k].second[0] != "worlds" || rows[k].second.size() < 2)
    throw parse_error(k < rows.size() ? rows[k].first : rows[0].first,
                      "expected \"worlds <name>+\"");
  std::vector<std::string> worlds;
  std::unordered_map<std::string, int> world_ids;
  for (std::size_t i = 1; i < rows[k].second.size(); ++i) {
    const std::string& w = rows[k].second[i];
    if (!world_ids.emplace(w, static_cast<int>(worlds.size())).second)
      throw parse_error(rows[k].first, "duplicate world \"" + w + "\"");
    worlds.push_back(w);
  }
  if (worlds.size() > 64)
    throw parse_error(rows[k].first, "frames are limited to 64 worlds");
  ++k;

  auto sort_id = [&](const std::string& s, int line) {
    auto it = sort_ids.find(s);
    if (it != sort_ids.end()) return it->second;
    if (sorts_declared) throw parse_error(line, "unknown sort \"" + s + "\"");
    sort_ids.emplace(s, static_cast<int>(sorts.size()));
    sorts.push_back(s);
    return static_cast<int>(sorts.size()) - 1;
  };
  auto world_id = [&](const std::string& w, int line) {
    auto it = world_ids.find(w);
    if (it == world_ids.end()) throw parse_error(line, "unknown world \"" + w + "\"");
    return it->second;
  };

  std::vector<std::vector<std::pair<int, int>>> rel_pairs;
  std::vector<std::vector<int>> val_worlds;
  auto grow = [&]() {
    rel_pairs.resize(sorts.size());
    val_worlds.resize(sorts.size());
  };
  for (; k < rows.size(); ++k) {
    const auto& [line, toks] = rows[k];
    if (toks[0] == "rel") {
      if (toks.size() != 4)
        throw parse_error(line, "expected \"rel <sort> <from> <to>\"");
      int i = sort_id(toks[1], line);
      grow();
      rel_pairs[i].emplace_back(world_id(toks[2], line), world_id(toks[3], line));
    } else if (toks[0] == "val") {
      if (toks.size() < 2)
        throw parse_error(line, "expected \"val <sort> <world>*\"");
      int i = sort_id(toks[1], line);
      grow();
      for (std::size_t j = 2; j < toks.size(); ++j)
        val_worlds[i].push_back(world_id(toks[j], line));
    } else {
      throw parse_error(line, "expected a \"rel\" or \"val\" line");
    }
  }
  grow();
  return make_frame(std::move(worlds), std::move(sorts), rel_pairs, val_worlds);
}

inline std::string render_world_set(const KripkeFrame& f, WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (int w = 0; w < f.world_count(); ++w)
    if (s >> w & 1) {
      if (!first) out += ",";
      out += f.worlds[w];
      first = false;
    }
  return out + "}";
}

namespace detail {
inline void check_sort(const KripkeFrame& f, int i) {
  if (i < 0 || i >= f.sort_count()) throw error("unknown sort index");
}
}  // namespace detail

// box(i, S): the worlds all of whose i-successors lie in S.
inline WorldSet box(const KripkeFrame& f, int i, WorldSet s) {
  detail::check_sort(f, i);
  WorldSet out = 0;
  for (int w = 0; w < f.world_count(); ++w)
    if ((f.rel[i][w] & ~s) == 0) out |= WorldSet{1} << w;
  return out;
}

// dia(i, S): the worlds with some i-successor in S.
inline WorldSet dia(const KripkeFrame& f, int i, WorldSet s) {
  detail::check_sort(f, i);
  WorldSet out = 0;
  for (int w = 0; w < f.world_count(); ++w)
    if (f.rel[i][w] & s) out |= WorldSet{1} << w;
  return out;
}

using WorldOp = std::function<WorldSet(WorldSet)>;

namespace detail {

inline WorldSet iterate_fix(const KripkeFrame& f, const WorldOp& op, WorldSet x) {
  // a monotone operator stabilizes within |worlds| steps from either end
  for (int k = 0; k <= f.world_count(); ++k) {
    WorldSet next = op(x);
    if (next == x) return x;
    x = next;
  }
  throw error("fixpoint iteration did not stabilize (operator not monotone?)");
}

}  // namespace detail

inline WorldSet gfp(const KripkeFrame& f, const WorldOp& op) {
  return detail::iterate_fix(f, op, f.universe());
}

inline WorldSet lfp(const KripkeFrame& f, const WorldOp& op) {
  return detail::iterate_fix(f, op, 0);
}

// Cofree box over all sorts: nu Y. S /\ /\_i box(i, Y).
inline WorldSet cofree(const KripkeFrame& f, WorldSet s) {
  return gfp(f, [&](WorldSet y) {
    WorldSet out = s;
    for (int i = 0; i < f.sort_count(); ++i) out &= box(f, i, y);
    return out;
  });
}

// Reachability diamond over all sorts: mu Y. S \/ \/_i dia(i, Y).
inline WorldSet dia_star(const KripkeFrame& f, WorldSet s) {
  return lfp(f, [&](WorldSet y) {
    WorldSet out = s;
    for (int i = 0; i < f.sort_count(); ++i) out |= dia(f, i, y);
    return out;
  });
}

struct SegerbergSides {
  WorldSet lhs;
  WorldSet rhs;
};

// Both sides of the posetal final-coalgebra equation
//   nu X. \/_i (V_i /\ box_i X)  =  V_I /\ /\_i cofree(V_i -> box_i V_I),
// with Boolean implication. Equal for a one-sort index set; not in general.
inline SegerbergSides segerberg_sides(const KripkeFrame& f) {
  const WorldSet u = f.universe();
  WorldSet vi = 0;
  for (int i = 0; i < f.sort_count(); ++i) vi |= f.val[i];
  WorldSet lhs = gfp(f, [&](WorldSet x) {
    WorldSet out = 0;
    for (int i = 0; i < f.sort_count(); ++i) out |= f.val[i] & box(f, i, x);
    return out;
  });
  WorldSet rhs = vi;
  for (int i = 0; i < f.sort_count(); ++i)
    rhs &= cofree(f, (~f.val[i] & u) | box(f, i, vi));
  return {lhs, rhs};
}

struct CounterexampleReport {
  WorldSet lhs;
  WorldSet rhs;
  bool violated;
};

// The two-sort diamond inequality
//   (V1 /\ V2) \/ dia*(-V1 /\ dia_1(V1 /\ V2)) \/ dia*(-V2 /\ dia_2(V1 /\ V2))
//     <= mu X. (V1 \/ dia_1 X) /\ (V2 \/ dia_2 X),
// reported as both sides plus whether the containment fails.
inline CounterexampleReport counterexample_check(const KripkeFrame& f) {
  if (f.sort_count() != 2)
    throw error("counterexample_check requires exactly two sorts");
  const WorldSet u = f.universe();
  WorldSet core = f.val[0] & f.val[1];
  WorldSet lhs = core;
  lhs |= dia_star(f, ~f.val[0] & u & dia(f, 0, core));
  lhs |= dia_star(f, ~f.val[1] & u & dia(f, 1, core));
  WorldSet rhs = lfp(f, [&](WorldSet x) {
    return (f.val[0] | dia(f, 0, x)) & (f.val[1] | dia(f, 1, x));
  });
  return {lhs, rhs, (lhs & ~rhs) != 0};
}

}  // namespace polyaut
