#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "automaton.hpp"

namespace polyaut {

namespace detail {

// Total transition table with dense observation ids, the input to the
// refinement loop. Built from one automaton or from a disjoint union of two.
struct MooreTable {
  int n = 0;
  int nd = 0;
  std::vector<int> obs;   // per state
  std::vector<int> step;  // row-major n x nd
};

inline void append_to_table(MooreTable& t, const QAutomaton& aut, int offset,
                            std::map<std::pair<int, int>, int>& obs_ids) {
  for (int q = 0; q < aut.size(); ++q) {
    auto key = std::make_pair(aut.sort_of[q], aut.label_of[q]);
    auto [it, fresh] = obs_ids.emplace(key, static_cast<int>(obs_ids.size()));
    t.obs.push_back(it->second);
    (void)fresh;
    for (int d = 0; d < t.nd; ++d) t.step.push_back(offset + aut.step[q][d]);
  }
  t.n += aut.size();
}

// Hopcroft-style partition refinement: initial blocks keyed on observation,
// splitters are (block, direction) pairs, the smaller half of a split is
// queued. Returns per-state class ids, numbered by first occurrence.
inline std::vector<int> refine(const MooreTable& t) {
  const int n = t.n, nd = t.nd;
  if (n == 0) return {};

  // partition state: elems grouped by block, with positions and bounds
  std::vector<int> block_of(n), elems(n), pos(n), bstart, bsize;
  {
    int nobs = 0;
    for (int q = 0; q < n; ++q) nobs = std::max(nobs, t.obs[q] + 1);
    std::vector<int> count(nobs, 0);
    for (int q = 0; q < n; ++q) ++count[t.obs[q]];
    std::vector<int> offset(nobs, 0);
    for (int o = 1; o < nobs; ++o) offset[o] = offset[o - 1] + count[o - 1];
    bstart = offset;
    bsize = count;
    std::vector<int> fill = offset;
    for (int q = 0; q < n; ++q) {
      int o = t.obs[q];
      elems[fill[o]] = q;
      pos[q] = fill[o];
      block_of[q] = o;
      ++fill[o];
    }
  }
  int nblocks = static_cast<int>(bstart.size());

  // inverse transitions per direction, CSR layout
  std::vector<int> inv_off(static_cast<std::size_t>(nd) * (n + 1), 0);
  std::vector<int> inv(static_cast<std::size_t>(nd) * n);
  for (int d = 0; d < nd; ++d) {
    int* off = &inv_off[static_cast<std::size_t>(d) * (n + 1)];
    for (int q = 0; q < n; ++q) ++off[t.step[q * nd + d] + 1];
    for (int s = 0; s < n; ++s) off[s + 1] += off[s];
    std::vector<int> fill(off, off + n);
    for (int q = 0; q < n; ++q) {
      int s = t.step[q * nd + d];
      inv[static_cast<std::size_t>(d) * n + fill[s]++] = q;
    }
  }

  std::deque<std::pair<int, int>> work;
  std::vector<char> pending(static_cast<std::size_t>(n) * nd, 0);
  auto push = [&](int b, int d) {
    if (!pending[static_cast<std::size_t>(b) * nd + d]) {
      pending[static_cast<std::size_t>(b) * nd + d] = 1;
      work.emplace_back(b, d);
    }
  };
  for (int b = 0; b < nblocks; ++b)
    for (int d = 0; d < nd; ++d) push(b, d);

  std::vector<char> marked(n, 0);
  std::vector<int> mark_count(n, 0);
  std::vector<int> marked_states, touched;
  while (!work.empty()) {
    auto [splitter, d] = work.front();
    work.pop_front();
    pending[static_cast<std::size_t>(splitter) * nd + d] = 0;

    marked_states.clear();
    touched.clear();
    for (int k = bstart[splitter]; k < bstart[splitter] + bsize[splitter]; ++k) {
      int s = elems[k];
      const int* off = &inv_off[static_cast<std::size_t>(d) * (n + 1)];
      for (int i = off[s]; i < off[s + 1]; ++i) {
        int q = inv[static_cast<std::size_t>(d) * n + i];
        if (!marked[q]) {
          marked[q] = 1;
          marked_states.push_back(q);
          if (mark_count[block_of[q]]++ == 0) touched.push_back(block_of[q]);
        }
      }
    }
    for (int b : touched) {
      int m = mark_count[b];
      if (m > 0 && m < bsize[b]) {
        // move the marked elements to the front of the block's range
        int lo = bstart[b], hi = bstart[b] + bsize[b];
        int front = lo;
        for (int k = lo; k < hi; ++k) {
          int q = elems[k];
          if (marked[q]) {
            std::swap(elems[k], elems[front]);
            pos[elems[k]] = k;
            pos[elems[front]] = front;
            ++front;
          }
        }
        int nb = nblocks++;
        bstart.push_back(lo + m);
        bsize.push_back(bsize[b] - m);
        bsize[b] = m;
        for (int k = lo + m; k < hi; ++k) block_of[elems[k]] = nb;
        for (int e = 0; e < nd; ++e) {
          if (pending[static_cast<std::size_t>(b) * nd + e]) push(nb, e);
          else push(bsize[b] <= bsize[nb] ? b : nb, e);
        }
      }
      mark_count[b] = 0;
    }
    for (int q : marked_states) marked[q] = 0;
  }

  // renumber classes by first occurrence
  std::vector<int> renum(nblocks, -1), out(n);
  int next = 0;
  for (int q = 0; q < n; ++q) {
    int b = block_of[q];
    if (renum[b] == -1) renum[b] = next++;
    out[q] = renum[b];
  }
  return out;
}

}  // namespace detail

// Coarsest bisimulation classes of one automaton, numbered by first
// occurrence in state order.
inline std::vector<int> bisim_partition(const QAutomaton& aut) {
  detail::MooreTable t;
  t.nd = aut.sig.dir_count();
  std::map<std::pair<int, int>, int> obs_ids;
  detail::append_to_table(t, aut, 0, obs_ids);
  return detail::refine(t);
}

// Classes of the disjoint union of two automata over the same signature; the
// states of b are numbered after those of a.
inline std::vector<int> bisim_partition_pair(const QAutomaton& a,
                                             const QAutomaton& b) {
  if (!(a.sig == b.sig)) throw error("signature mismatch");
  detail::MooreTable t;
  t.nd = a.sig.dir_count();
  std::map<std::pair<int, int>, int> obs_ids;
  detail::append_to_table(t, a, 0, obs_ids);
  detail::append_to_table(t, b, a.size(), obs_ids);
  return detail::refine(t);
}

// Equality of behaviors, decided by partition refinement on the disjoint
// union.
inline bool bisimilar(const QAutomaton& a, int qa, const QAutomaton& b, int qb) {
  if (qa < 0 || qa >= a.size() || qb < 0 || qb >= b.size())
    throw error("unknown state");
  auto cls = bisim_partition_pair(a, b);
  return cls[qa] == cls[a.size() + qb];
}

// Quotient by bisimilarity. Block representatives are the first states of
// their classes; the projection maps every state to its class.
inline std::pair<QAutomaton, AutMorphism> minimize(const QAutomaton& aut) {
  auto cls = bisim_partition(aut);
  int nclasses = 0;
  for (int c : cls) nclasses = std::max(nclasses, c + 1);
  std::vector<int> rep(nclasses, -1);
  for (int q = 0; q < aut.size(); ++q)
    if (rep[cls[q]] == -1) rep[cls[q]] = q;

  QAutomaton out;
  out.sig = aut.sig;
  for (int c = 0; c < nclasses; ++c) {
    int r = rep[c];
    out.states.push_back(aut.states[r]);
    out.sort_of.push_back(aut.sort_of[r]);
    out.label_of.push_back(aut.label_of[r]);
  }
  out.step.assign(nclasses, std::vector<int>(aut.sig.dir_count(), no_target));
  for (int c = 0; c < nclasses; ++c)
    for (int d = 0; d < aut.sig.dir_count(); ++d)
      out.step[c][d] = cls[aut.step[rep[c]][d]];
  return {std::move(out), AutMorphism{std::move(cls)}};
}

}  // namespace polyaut
