#pragma once

#include <span>
#include <utility>
#include <vector>

#include "automaton.hpp"

namespace polyaut {

// The extended action of words on states: iterates the one-step transition
// along a word. Non-owning view of the automaton.
class ExtendedAction {
 public:
  explicit ExtendedAction(const QAutomaton& aut) : aut_(&aut) {}

  // apply(empty, q) == q and apply(w + [d], q) == step(apply(w, q), d).
  int apply(std::span<const int> word, int q) const {
    for (int d : word) q = aut_->step[q][d];
    return q;
  }

 private:
  const QAutomaton* aut_;
};

struct DeltaWitness {
  int state;
  int dir;
  int target_sort;  // the offending target's sort
  bool operator==(const DeltaWitness&) const = default;
};

struct DeltaReport {
  bool verdict = true;
  std::vector<DeltaWitness> witnesses;  // nonempty iff verdict is false
};

namespace detail {

// Local condition at one state: same-sort transitions stay among the labeled
// sorts, every other transition (including all transitions out of sink-sorted
// states) lands in the sink sort.
inline bool delta_ok_at(const QAutomaton& aut, int q, int d) {
  int j = aut.sort_of[q];
  int i = aut.sig.dir_sort(d);
  int target_sort = aut.sort_of[aut.step[q][d]];
  if (j != sink_sort && i == j) return target_sort != sink_sort;
  return target_sort == sink_sort;
}

inline bool delta_ok_state(const QAutomaton& aut, int q) {
  for (int d = 0; d < aut.sig.dir_count(); ++d)
    if (!delta_ok_at(aut, q, d)) return false;
  return true;
}

}  // namespace detail

// Membership in the delta subcategory, decided state by state. The report
// lists every offending (state, direction, target sort) triple.
inline DeltaReport delta_check(const QAutomaton& aut) {
  DeltaReport r;
  for (int q = 0; q < aut.size(); ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      if (!detail::delta_ok_at(aut, q, d))
        r.witnesses.push_back({q, d, aut.sort_of[aut.step[q][d]]});
  r.verdict = r.witnesses.empty();
  return r;
}

namespace detail {

// Literal subobject check for one start state: enumerate the words of the
// given maximum length and test the quantified condition at each pair (w, q).
inline bool delta_words_from(const QAutomaton& aut, const ExtendedAction& act,
                             int start, Word& w, int budget) {
  int cur = act.apply(w, start);
  int j = aut.sort_of[cur];
  for (int d = 0; d < aut.sig.dir_count(); ++d) {
    w.push_back(d);
    int target_sort = aut.sort_of[act.apply(w, start)];
    w.pop_back();
    int i = aut.sig.dir_sort(d);
    bool ok = (j != sink_sort && i == j) ? target_sort != sink_sort
                                         : target_sort == sink_sort;
    if (!ok) return false;
  }
  if (budget > 0) {
    for (int d = 0; d < aut.sig.dir_count(); ++d) {
      w.push_back(d);
      bool ok = delta_words_from(aut, act, start, w, budget - 1);
      w.pop_back();
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace detail

// Independent word-level oracle for delta_check: quantifies over all pairs
// (w, q) with |w| <= max(0, |states| - 1), which by pigeonhole covers every
// reachable state. Must agree with delta_check on every input.
inline bool delta_check_words(const QAutomaton& aut) {
  ExtendedAction act(aut);
  int budget = aut.size() > 0 ? aut.size() - 1 : 0;
  Word w;
  for (int q = 0; q < aut.size(); ++q)
    if (!detail::delta_words_from(aut, act, q, w, budget)) return false;
  return true;
}

// Greatest delta-subautomaton: keeps exactly the states from which no
// locally-bad state is reachable. Computed by marking the locally bad states
// and removing their backward closure. Returns the subautomaton and the
// inclusion morphism.
inline std::pair<QAutomaton, AutMorphism> coreflect_D(const QAutomaton& aut) {
  const int n = aut.size();
  std::vector<char> excluded(n, 0);
  std::vector<int> queue;
  for (int q = 0; q < n; ++q)
    if (!detail::delta_ok_state(aut, q)) {
      excluded[q] = 1;
      queue.push_back(q);
    }
  // backward closure over the transition graph
  std::vector<std::vector<int>> preds(n);
  for (int q = 0; q < n; ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      preds[aut.step[q][d]].push_back(q);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int p : preds[queue[k]])
      if (!excluded[p]) {
        excluded[p] = 1;
        queue.push_back(p);
      }

  QAutomaton out;
  out.sig = aut.sig;
  AutMorphism embedding;
  std::vector<int> new_idx(n, -1);
  for (int q = 0; q < n; ++q)
    if (!excluded[q]) {
      new_idx[q] = out.size();
      out.states.push_back(aut.states[q]);
      out.sort_of.push_back(aut.sort_of[q]);
      out.label_of.push_back(aut.label_of[q]);
      embedding.map.push_back(q);
    }
  out.step.assign(out.size(), std::vector<int>(aut.sig.dir_count(), no_target));
  for (int q = 0; q < out.size(); ++q)
    for (int d = 0; d < aut.sig.dir_count(); ++d) {
      int t = new_idx[aut.step[embedding.map[q]][d]];
      if (t == -1) throw error("internal: coreflection carrier not forward-closed");
      out.step[q][d] = t;
    }
  return {std::move(out), std::move(embedding)};
}

// A morphism whose source is a delta-automaton must land inside the
// coreflection of its target; this checks that it does.
inline bool factoring_check(const QAutomaton& a, const QAutomaton& b,
                            const AutMorphism& f) {
  if (!is_morphism_q(a, b, f))
    throw error("factoring_check precondition: not a Q-morphism");
  if (!delta_check(a).verdict)
    throw error("factoring_check precondition: source is not a delta-automaton");
  auto [d, embedding] = coreflect_D(b);
  std::vector<char> in_carrier(b.size(), 0);
  for (int q : embedding.map) in_carrier[q] = 1;
  for (int t : f.map)
    if (!in_carrier[t]) return false;
  return true;
}

// Restriction of a delta-automaton to the labeled sorts: drops the
// sink-sorted states and the cross-sort transitions. Rejects inputs that are
// not delta-automata.
inline PAutomaton reflect_L(const QAutomaton& aut) {
  DeltaReport r = delta_check(aut);
  if (!r.verdict) {
    const DeltaWitness& w = r.witnesses.front();
    throw error("reflect_L precondition: not a delta-automaton (state \"" +
                aut.states[w.state] + "\" direction \"" +
                aut.sig.dir_name(w.dir) + "\" reaches sort " +
                aut.sig.sort_token(w.target_sort) + ")");
  }
  PAutomaton out;
  out.sig = aut.sig;
  std::vector<int> new_idx(aut.size(), -1);
  for (int q = 0; q < aut.size(); ++q)
    if (aut.sort_of[q] != sink_sort) {
      new_idx[q] = out.size();
      out.states.push_back(aut.states[q]);
      out.sort_of.push_back(aut.sort_of[q]);
      out.label_of.push_back(aut.label_of[q]);
    }
  out.step.assign(out.size(), std::vector<int>(aut.sig.dir_count(), no_target));
  for (int q = 0; q < aut.size(); ++q) {
    if (aut.sort_of[q] == sink_sort) continue;
    for (int d = 0; d < aut.sig.dir_count(); ++d) {
      if (aut.sig.dir_sort(d) != aut.sort_of[q]) continue;
      out.step[new_idx[q]][d] = new_idx[aut.step[q][d]];
    }
  }
  return out;
}

}  // namespace polyaut
