#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "common.hpp"

namespace polyaut {

// Sort id of the sink sort "0". Labeled sorts are indexed 0..sort_count-1.
inline constexpr int sink_sort = -1;

// One direction of the full alphabet: the sort whose arity it belongs to,
// plus its (globally unique) name.
struct Direction {
  int sort;
  std::string name;
  bool operator==(const Direction&) const = default;
};

// A word over the full alphabet, as indices into Signature::alphabet.
using Word = std::vector<int>;

// An element of the label set: either the bottom label (rendered "_bot_")
// or a label of one of the sorts.
struct OmegaLabel {
  int sort = sink_sort;  // sink_sort for bottom
  int label = -1;        // index into Signature::labels[sort], -1 for bottom
  static OmegaLabel bot() { return {}; }
  bool is_bot() const { return sort == sink_sort; }
  bool operator==(const OmegaLabel&) const = default;
};

// The data of a finitary polynomial signature: an ordered set of sorts, each
// carrying a nonempty set of operation labels and a nonempty set of
// directions (the arity). Direction and label names are globally distinct,
// so the full alphabet and the label set are honest tagged unions.
//
// Immutable after construction; safe to share across threads read-only.
struct Signature {
  std::vector<std::string> sorts;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::string>> dirs;

  // derived by finalize_signature
  std::vector<Direction> alphabet;  // sort declaration order, then direction order
  std::vector<int> first_dir;      // per sort: global index of its first direction
  std::unordered_map<std::string, int> sort_ids;
  std::unordered_map<std::string, int> dir_ids;
  std::vector<std::unordered_map<std::string, int>> label_ids;

  int sort_count() const { return static_cast<int>(sorts.size()); }
  int dir_count() const { return static_cast<int>(alphabet.size()); }
  int dirs_of(int sort) const { return static_cast<int>(dirs[sort].size()); }
  int dir_sort(int d) const { return alphabet[d].sort; }
  const std::string& dir_name(int d) const { return alphabet[d].name; }

  // Sort token as it appears in files: "0" for the sink sort.
  std::string sort_token(int sort) const {
    return sort == sink_sort ? std::string("0") : sorts[sort];
  }

  bool operator==(const Signature& o) const {
    return sorts == o.sorts && labels == o.labels && dirs == o.dirs;
  }
};

inline std::string label_token(const Signature& sig, OmegaLabel l) {
  return l.is_bot() ? std::string("_bot_") : sig.labels[l.sort][l.label];
}

// Validates the invariants and fills the derived tables.
inline void finalize_signature(Signature& sig) {
  if (sig.sorts.empty()) throw error("signature has no sorts");
  if (sig.labels.size() != sig.sorts.size() || sig.dirs.size() != sig.sorts.size())
    throw error("signature tables out of shape");
  sig.alphabet.clear();
  sig.first_dir.clear();
  sig.sort_ids.clear();
  sig.dir_ids.clear();
  sig.label_ids.assign(sig.sorts.size(), {});
  std::unordered_set<std::string> label_names;
  for (int i = 0; i < sig.sort_count(); ++i) {
    const std::string& s = sig.sorts[i];
    if (!detail::name_ok(s)) throw error("invalid sort name \"" + s + "\"");
    if (s == "0") throw error("sort name \"0\" is reserved for the sink sort");
    if (!sig.sort_ids.emplace(s, i).second)
      throw error("duplicate sort name \"" + s + "\"");
    if (sig.labels[i].empty()) throw error("sort \"" + s + "\" has no labels");
    if (sig.dirs[i].empty()) throw error("sort \"" + s + "\" has no directions");
    for (int k = 0; k < static_cast<int>(sig.labels[i].size()); ++k) {
      const std::string& l = sig.labels[i][k];
      if (!detail::name_ok(l)) throw error("invalid label name \"" + l + "\"");
      if (!label_names.insert(l).second)
        throw error("duplicate label name \"" + l + "\"");
      sig.label_ids[i].emplace(l, k);
    }
    sig.first_dir.push_back(sig.dir_count());
    for (const std::string& d : sig.dirs[i]) {
      if (!detail::name_ok(d)) throw error("invalid direction name \"" + d + "\"");
      if (!sig.dir_ids.emplace(d, sig.dir_count()).second)
        throw error("duplicate direction name \"" + d + "\"");
      sig.alphabet.push_back(Direction{i, d});
    }
  }
}

inline Signature make_signature(std::vector<std::string> sorts,
                                std::vector<std::vector<std::string>> labels,
                                std::vector<std::vector<std::string>> dirs) {
  Signature sig;
  sig.sorts = std::move(sorts);
  sig.labels = std::move(labels);
  sig.dirs = std::move(dirs);
  finalize_signature(sig);
  return sig;
}

// Signature file format:
//   sig
//   sort <name>
//   labels <name>+
//   dirs <name>+
//   ... (one sort/labels/dirs group per sort, in this exact order)
inline Signature load_signature(const std::string& text) {
  auto rows = detail::tokenize_lines(text);
  if (rows.empty()) throw parse_error(1, "expected \"sig\" header");
  if (rows[0].second.size() != 1 || rows[0].second[0] != "sig")
    throw parse_error(rows[0].first, "expected \"sig\" header");
  Signature sig;
  std::size_t k = 1;
  while (k < rows.size()) {
    const auto& [sort_line, sort_toks] = rows[k];
    if (sort_toks[0] != "sort" || sort_toks.size() != 2)
      throw parse_error(sort_line, "expected \"sort <name>\"");
    sig.sorts.push_back(sort_toks[1]);
    ++k;
    if (k >= rows.size() || rows[k].second[0] != "labels" || rows[k].second.size() < 2)
      throw parse_error(k < rows.size() ? rows[k].first : sort_line,
                        "expected \"labels <name>+\"");
    sig.labels.emplace_back(rows[k].second.begin() + 1, rows[k].second.end());
    ++k;
    if (k >= rows.size() || rows[k].second[0] != "dirs" || rows[k].second.size() < 2)
      throw parse_error(k < rows.size() ? rows[k].first : sort_line,
                        "expected \"dirs <name>+\"");
    sig.dirs.emplace_back(rows[k].second.begin() + 1, rows[k].second.end());
    ++k;
  }
  finalize_signature(sig);
  return sig;
}

// Inverse of load_signature.
inline std::string render_signature(const Signature& sig) {
  std::string out = "sig\n";
  for (int i = 0; i < sig.sort_count(); ++i) {
    out += "sort " + sig.sorts[i] + "\n";
    out += "labels";
    for (const auto& l : sig.labels[i]) out += " " + l;
    out += "\ndirs";
    for (const auto& d : sig.dirs[i]) out += " " + d;
    out += "\n";
  }
  return out;
}

// All directions in canonical order: sort declaration order, then direction
// declaration order within each sort.
inline const std::vector<Direction>& full_alphabet(const Signature& sig) {
  return sig.alphabet;
}

}  // namespace polyaut
