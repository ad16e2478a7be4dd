#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "signature.hpp"

namespace polyaut {

inline constexpr int no_target = -1;

// Partial deterministic automaton over a signature: states are partitioned
// into the labeled sorts, a sort-i state carries a label of sort i and one
// transition per direction of sort i (targets may be of any sort).
// step[q][d] == no_target exactly on the directions of other sorts.
//
// Fields are plain data; validate_p checks the invariants.
struct PAutomaton {
  Signature sig;
  std::vector<std::string> states;
  std::vector<int> sort_of;               // values in [0, sort_count)
  std::vector<int> label_of;              // index into sig.labels[sort_of[q]]
  std::vector<std::vector<int>> step;     // [state][global direction]

  int size() const { return static_cast<int>(states.size()); }
};

// Total deterministic Moore-style automaton over the full alphabet, with a
// distinguished sink sort "0". Sink-sorted states carry no label
// (label_of == -1); every state has a transition for every direction.
struct QAutomaton {
  Signature sig;
  std::vector<std::string> states;
  std::vector<int> sort_of;               // sink_sort or [0, sort_count)
  std::vector<int> label_of;              // -1 on sink-sorted states
  std::vector<std::vector<int>> step;     // total: [state][global direction]

  int size() const { return static_cast<int>(states.size()); }
};

// A state mapping between two automata of the same kind over the same
// signature. Stored untrusted; is_morphism_p / is_morphism_q decide whether
// it satisfies the sort, label and step equations.
struct AutMorphism {
  std::vector<int> map;  // source state index -> target state index
  bool operator==(const AutMorphism&) const = default;
};

template <typename Aut>
int state_index(const Aut& aut, const std::string& name) {
  for (int q = 0; q < aut.size(); ++q)
    if (aut.states[q] == name) return q;
  throw error("unknown state \"" + name + "\"");
}

// Root observation of a state: bottom on the sink sort, (sort, label) else.
inline OmegaLabel observation(const QAutomaton& aut, int q) {
  if (aut.sort_of[q] == sink_sort) return OmegaLabel::bot();
  return OmegaLabel{aut.sort_of[q], aut.label_of[q]};
}

namespace detail {

template <typename Aut>
void validate_shape(const Aut& aut) {
  const int n = aut.size();
  if (static_cast<int>(aut.sort_of.size()) != n ||
      static_cast<int>(aut.label_of.size()) != n ||
      static_cast<int>(aut.step.size()) != n)
    throw error("automaton tables out of shape");
  std::unordered_set<std::string> seen;
  for (const auto& s : aut.states)
    if (!seen.insert(s).second) throw error("duplicate state name \"" + s + "\"");
  for (int q = 0; q < n; ++q)
    if (static_cast<int>(aut.step[q].size()) != aut.sig.dir_count())
      throw error("state \"" + aut.states[q] + "\" has a malformed step row");
}

}  // namespace detail

inline void validate_p(const PAutomaton& aut) {
  detail::validate_shape(aut);
  const Signature& sig = aut.sig;
  for (int q = 0; q < aut.size(); ++q) {
    const std::string& name = aut.states[q];
    int sort = aut.sort_of[q];
    if (sort < 0 || sort >= sig.sort_count())
      throw error("state \"" + name + "\" has an invalid sort");
    if (aut.label_of[q] < 0 ||
        aut.label_of[q] >= static_cast<int>(sig.labels[sort].size()))
      throw error("state \"" + name + "\" has a label outside its sort");
    for (int d = 0; d < sig.dir_count(); ++d) {
      int t = aut.step[q][d];
      if (sig.dir_sort(d) == sort) {
        if (t == no_target)
          throw error("missing transition at state \"" + name +
                      "\" direction \"" + sig.dir_name(d) + "\"");
        if (t < 0 || t >= aut.size())
          throw error("transition target out of range at state \"" + name +
                      "\" direction \"" + sig.dir_name(d) + "\"");
      } else if (t != no_target) {
        throw error("direction outside sort's arity: state \"" + name +
                    "\" direction \"" + sig.dir_name(d) + "\"");
      }
    }
  }
}

inline void validate_q(const QAutomaton& aut) {
  detail::validate_shape(aut);
  const Signature& sig = aut.sig;
  for (int q = 0; q < aut.size(); ++q) {
    const std::string& name = aut.states[q];
    int sort = aut.sort_of[q];
    if (sort != sink_sort && (sort < 0 || sort >= sig.sort_count()))
      throw error("state \"" + name + "\" has an invalid sort");
    if (sort == sink_sort) {
      if (aut.label_of[q] != -1)
        throw error("label on sink-sorted state \"" + name + "\"");
    } else if (aut.label_of[q] < 0 ||
               aut.label_of[q] >= static_cast<int>(sig.labels[sort].size())) {
      throw error("state \"" + name + "\" has a label outside its sort");
    }
    for (int d = 0; d < sig.dir_count(); ++d) {
      int t = aut.step[q][d];
      if (t == no_target)
        throw error("missing transition at state \"" + name +
                    "\" direction \"" + sig.dir_name(d) + "\"");
      if (t < 0 || t >= aut.size())
        throw error("transition target out of range at state \"" + name +
                    "\" direction \"" + sig.dir_name(d) + "\"");
    }
  }
}

namespace detail {

// Shared morphism check: sorts and labels preserved, steps commute. For
// P-automata the step rows are partial and defined on the same directions
// once sorts agree; for Q-automata they are total.
template <typename Aut>
bool is_morphism_impl(const Aut& a, const Aut& b, const AutMorphism& f) {
  if (!(a.sig == b.sig)) throw error("signature mismatch");
  if (static_cast<int>(f.map.size()) != a.size())
    throw error("morphism map size mismatch");
  for (int t : f.map)
    if (t < 0 || t >= b.size()) throw error("morphism target out of range");
  for (int q = 0; q < a.size(); ++q) {
    int t = f.map[q];
    if (b.sort_of[t] != a.sort_of[q]) return false;
    if (b.label_of[t] != a.label_of[q]) return false;
    for (int d = 0; d < a.sig.dir_count(); ++d) {
      int qs = a.step[q][d];
      if (qs == no_target) continue;
      if (f.map[qs] != b.step[t][d]) return false;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_morphism_p(const PAutomaton& a, const PAutomaton& b,
                          const AutMorphism& f) {
  return detail::is_morphism_impl(a, b, f);
}

inline bool is_morphism_q(const QAutomaton& a, const QAutomaton& b,
                          const AutMorphism& f) {
  return detail::is_morphism_impl(a, b, f);
}

inline bool is_morphism(const PAutomaton& a, const PAutomaton& b,
                        const AutMorphism& f) {
  return is_morphism_p(a, b, f);
}
inline bool is_morphism(const QAutomaton& a, const QAutomaton& b,
                        const AutMorphism& f) {
  return is_morphism_q(a, b, f);
}

// Completion: adds a fresh absorbing sink state (named "_sink_", with a
// numeric suffix on collision) and totalizes the transitions. The sink is
// appended after the existing states, so their indices are preserved.
inline QAutomaton completion_K(const PAutomaton& a) {
  QAutomaton out;
  out.sig = a.sig;
  out.states = a.states;
  std::string sink = "_sink_";
  {
    std::unordered_set<std::string> taken(a.states.begin(), a.states.end());
    for (int suffix = 1; taken.count(sink); ++suffix)
      sink = "_sink_" + std::to_string(suffix);
  }
  out.states.push_back(sink);
  const int s = a.size();
  out.sort_of = a.sort_of;
  out.sort_of.push_back(sink_sort);
  out.label_of = a.label_of;
  out.label_of.push_back(-1);
  out.step.assign(s + 1, std::vector<int>(a.sig.dir_count(), s));
  for (int q = 0; q < s; ++q)
    for (int d = 0; d < a.sig.dir_count(); ++d)
      if (a.step[q][d] != no_target) out.step[q][d] = a.step[q][d];
  return out;
}

// Sink extension of a morphism f : A -> B to K(A) -> K(B).
inline AutMorphism k_on_morphism(const PAutomaton& /*a*/, const PAutomaton& b,
                                 const AutMorphism& f) {
  AutMorphism out{f.map};
  out.map.push_back(b.size());  // sink of K(A) to sink of K(B)
  return out;
}

// Extension of f : L(A) -> B to A -> K(B), for a delta-automaton A: the
// non-sink states follow f, every sink-sorted state goes to the sink of K(B).
inline AutMorphism adjunct_extend(const QAutomaton& a, const AutMorphism& f,
                                  const PAutomaton& b) {
  AutMorphism out;
  out.map.reserve(a.size());
  int next = 0;
  for (int q = 0; q < a.size(); ++q) {
    if (a.sort_of[q] == sink_sort) {
      out.map.push_back(b.size());
    } else {
      if (next >= static_cast<int>(f.map.size()))
        throw error("adjunct_extend: map does not cover the non-sink states");
      out.map.push_back(f.map[next++]);
    }
  }
  if (next != static_cast<int>(f.map.size()))
    throw error("adjunct_extend: map size mismatch");
  return out;
}

inline constexpr std::uint64_t default_hom_cap = 1000000;

// Complete hom-set between two automata of the same kind, by enumerating the
// sort-preserving state maps and filtering with the morphism check. Throws
// when the number of candidate maps exceeds the cap.
template <typename Aut>
std::vector<AutMorphism> hom_enumerate(const Aut& a, const Aut& b,
                                       std::uint64_t cap = default_hom_cap) {
  if (!(a.sig == b.sig)) throw error("signature mismatch");
  const int n = a.size();
  std::vector<std::vector<int>> cand(n);
  std::uint64_t total = 1;
  bool over = false;
  for (int q = 0; q < n; ++q) {
    for (int t = 0; t < b.size(); ++t)
      if (b.sort_of[t] == a.sort_of[q]) cand[q].push_back(t);
    if (cand[q].empty()) return {};
    if (!over && total > cap / cand[q].size()) over = true;
    if (!over) total *= cand[q].size();
  }
  if (over || total > cap)
    throw error("hom enumeration bound exceeded (cap " + std::to_string(cap) + ")");

  std::vector<AutMorphism> out;
  std::vector<int> idx(n, 0);
  AutMorphism f;
  f.map.resize(n);
  for (;;) {
    for (int q = 0; q < n; ++q) f.map[q] = cand[q][idx[q]];
    if (detail::is_morphism_impl(a, b, f)) out.push_back(f);
    int k = n - 1;
    while (k >= 0 && ++idx[k] == static_cast<int>(cand[k].size())) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

}  // namespace polyaut
