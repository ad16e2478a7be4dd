#pragma once

#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "bisim.hpp"
#include "delta.hpp"

namespace polyaut {

// A limit automaton together with the projections of its cone.
struct QLimit {
  QAutomaton aut;
  std::vector<AutMorphism> projections;
};

struct PLimit {
  PAutomaton aut;
  std::vector<AutMorphism> projections;
};

namespace detail {

inline std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// Subautomaton of A x B on the listed pairs, with componentwise transitions.
// Throws when the pair set is not forward-closed.
inline QLimit pair_subautomaton(const QAutomaton& a, const QAutomaton& b,
                                const std::vector<std::pair<int, int>>& pairs) {
  QLimit out;
  out.aut.sig = a.sig;
  std::vector<int> idx(static_cast<std::size_t>(a.size()) * b.size(), -1);
  AutMorphism pa, pb;
  for (const auto& [x, y] : pairs) {
    idx[static_cast<std::size_t>(x) * b.size() + y] = out.aut.size();
    out.aut.states.push_back(pair_name(a.states[x], b.states[y]));
    out.aut.sort_of.push_back(a.sort_of[x]);
    out.aut.label_of.push_back(a.label_of[x]);
    pa.map.push_back(x);
    pb.map.push_back(y);
  }
  const int nd = a.sig.dir_count();
  out.aut.step.assign(pairs.size(), std::vector<int>(nd, no_target));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (int d = 0; d < nd; ++d) {
      int tx = a.step[pairs[k].first][d];
      int ty = b.step[pairs[k].second][d];
      int t = idx[static_cast<std::size_t>(tx) * b.size() + ty];
      if (t == -1) throw error("internal: limit carrier not forward-closed");
      out.aut.step[k][d] = t;
    }
  out.projections.push_back(std::move(pa));
  out.projections.push_back(std::move(pb));
  return out;
}

}  // namespace detail

// Product of two Q-automata: the pairs of bisimilar states with
// componentwise structure (the pullback of the two behavior maps).
inline QLimit product_q(const QAutomaton& a, const QAutomaton& b) {
  auto cls = bisim_partition_pair(a, b);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      if (cls[x] == cls[a.size() + y]) pairs.emplace_back(x, y);
  return detail::pair_subautomaton(a, b, pairs);
}

// Equalizer of two parallel Q-morphisms: the states where they agree, with
// restricted structure. The single projection is the embedding.
inline QLimit equalizer_q(const QAutomaton& a, const QAutomaton& b,
                          const AutMorphism& f, const AutMorphism& g) {
  if (!is_morphism_q(a, b, f) || !is_morphism_q(a, b, g))
    throw error("equalizer_q precondition: inputs are not parallel Q-morphisms");
  QLimit out;
  out.aut.sig = a.sig;
  AutMorphism embedding;
  std::vector<int> idx(a.size(), -1);
  for (int q = 0; q < a.size(); ++q)
    if (f.map[q] == g.map[q]) {
      idx[q] = out.aut.size();
      out.aut.states.push_back(a.states[q]);
      out.aut.sort_of.push_back(a.sort_of[q]);
      out.aut.label_of.push_back(a.label_of[q]);
      embedding.map.push_back(q);
    }
  const int nd = a.sig.dir_count();
  out.aut.step.assign(out.aut.size(), std::vector<int>(nd, no_target));
  for (int q = 0; q < out.aut.size(); ++q)
    for (int d = 0; d < nd; ++d) {
      int t = idx[a.step[embedding.map[q]][d]];
      if (t == -1) throw error("internal: limit carrier not forward-closed");
      out.aut.step[q][d] = t;
    }
  out.projections.push_back(std::move(embedding));
  return out;
}

// Pullback of f : A -> C and g : B -> C, computed as the bisimilar pairs on
// which the two composites agree.
inline QLimit pullback_q(const QAutomaton& a, const QAutomaton& b,
                         const QAutomaton& c, const AutMorphism& f,
                         const AutMorphism& g) {
  if (!is_morphism_q(a, c, f) || !is_morphism_q(b, c, g))
    throw error("pullback_q precondition: inputs are not a cospan of Q-morphisms");
  auto cls = bisim_partition_pair(a, b);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      if (cls[x] == cls[a.size() + y] && f.map[x] == g.map[y])
        pairs.emplace_back(x, y);
  return detail::pair_subautomaton(a, b, pairs);
}

namespace detail {

// Carries a limit in the image of the completion back to the partial world:
// coreflect, restrict to the labeled sorts, and transport the cone maps. The
// targets of the cone maps must be completions, whose non-sink states keep
// their original indices.
inline PLimit restrict_limit(QLimit lim) {
  if (!delta_check(lim.aut).verdict)
    throw error("internal: limit of completions escapes the delta subcategory");
  auto [d, embedding] = coreflect_D(lim.aut);
  if (d.size() != lim.aut.size())
    throw error("internal: coreflection is not the identity on a delta-automaton");
  PLimit out;
  out.aut = reflect_L(d);
  for (const AutMorphism& proj : lim.projections) {
    AutMorphism m;
    for (int q = 0; q < d.size(); ++q)
      if (d.sort_of[q] != sink_sort) m.map.push_back(proj.map[embedding.map[q]]);
    out.projections.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

// Product of two P-automata, through the chain: complete both factors, take
// the product of completions, coreflect, and restrict to the labeled sorts.
inline PLimit product_p(const PAutomaton& a, const PAutomaton& b) {
  if (!(a.sig == b.sig)) throw error("signature mismatch");
  return detail::restrict_limit(product_q(completion_K(a), completion_K(b)));
}

// Equalizer of two parallel P-morphisms, through the same chain. The
// equalizer of the sink extensions is itself a delta-automaton (downward
// closure), which restrict_limit checks.
inline PLimit equalizer_p(const PAutomaton& a, const PAutomaton& b,
                          const AutMorphism& f, const AutMorphism& g) {
  if (!is_morphism_p(a, b, f) || !is_morphism_p(a, b, g))
    throw error("equalizer_p precondition: inputs are not parallel P-morphisms");
  QAutomaton ka = completion_K(a), kb = completion_K(b);
  return detail::restrict_limit(
      equalizer_q(ka, kb, k_on_morphism(a, b, f), k_on_morphism(a, b, g)));
}

}  // namespace polyaut
