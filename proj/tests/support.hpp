#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <polyaut/bisim.hpp>
#include <polyaut/delta.hpp>
#include <polyaut/fixpoint.hpp>
#include <polyaut/io.hpp>
#include <polyaut/limits.hpp>
#include <polyaut/tree.hpp>

namespace testsupport {

using namespace polyaut;

constexpr int NT = no_target;

// ---------------------------------------------------------------- fixtures

inline Signature sig_fg() {
  return make_signature({"1", "2"}, {{"f"}, {"g"}}, {{"f1"}, {"g1", "g2"}});
}

inline PAutomaton build_p(const Signature& sig, std::vector<std::string> states,
                          std::vector<int> sorts, std::vector<int> labels,
                          std::vector<std::vector<int>> step) {
  PAutomaton a;
  a.sig = sig;
  a.states = std::move(states);
  a.sort_of = std::move(sorts);
  a.label_of = std::move(labels);
  a.step = std::move(step);
  return a;
}

inline QAutomaton build_q(const Signature& sig, std::vector<std::string> states,
                          std::vector<int> sorts, std::vector<int> labels,
                          std::vector<std::vector<int>> step) {
  QAutomaton a;
  a.sig = sig;
  a.states = std::move(states);
  a.sort_of = std::move(sorts);
  a.label_of = std::move(labels);
  a.step = std::move(step);
  return a;
}

inline PAutomaton empty_p(const Signature& sig) { return build_p(sig, {}, {}, {}, {}); }
inline QAutomaton empty_q(const Signature& sig) { return build_q(sig, {}, {}, {}, {}); }

// one state q of sort 1 labeled f, looping on f1
inline PAutomaton a_loop() {
  return build_p(sig_fg(), {"q"}, {0}, {0}, {{0, NT, NT}});
}

// two f-labeled states, each looping on f1
inline PAutomaton a_2loop() {
  return build_p(sig_fg(), {"q1", "q2"}, {0, 0}, {0, 0}, {{0, NT, NT}, {1, NT, NT}});
}

// x: f -> y, y: g -> (x, x); its completion unfolds to the alternating tree
inline PAutomaton a_fg() {
  return build_p(sig_fg(), {"x", "y"}, {0, 1}, {0, 0}, {{1, NT, NT}, {NT, 0, 0}});
}

// completion of a_loop, written out by hand
inline QAutomaton k_loop() {
  return build_q(sig_fg(), {"q", "_sink_"}, {0, sink_sort}, {0, -1},
                 {{0, 1, 1}, {1, 1, 1}});
}

// one labeled state whose same-sort transition escapes to the sink
inline QAutomaton b_bad() {
  return build_q(sig_fg(), {"_sink_", "x"}, {sink_sort, 0}, {-1, 0},
                 {{0, 0, 0}, {0, 0, 0}});
}

// b_bad plus a state y reaching x
inline QAutomaton b3() {
  return build_q(sig_fg(), {"_sink_", "x", "y"}, {sink_sort, 0, 0}, {-1, 0, 0},
                 {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}});
}

inline QAutomaton sink_only() {
  return build_q(sig_fg(), {"_sink_"}, {sink_sort}, {-1}, {{0, 0, 0}});
}

// ------------------------------------------------------------ enumerators

namespace detail_enum {

template <typename Aut, typename F>
void fill_row(Aut& a, int q, const std::vector<int>& row_dirs, std::size_t pos,
              F&& next) {
  if (pos == row_dirs.size()) {
    next();
    return;
  }
  for (int t = 0; t < a.size(); ++t) {
    a.step[q][row_dirs[pos]] = t;
    fill_row(a, q, row_dirs, pos + 1, next);
  }
}

template <typename F>
void rec_p(PAutomaton& a, int q, F&& f) {
  if (q == a.size()) {
    f(const_cast<const PAutomaton&>(a));
    return;
  }
  const Signature& sig = a.sig;
  for (int sort = 0; sort < sig.sort_count(); ++sort) {
    a.sort_of[q] = sort;
    std::vector<int> own;
    for (int d = 0; d < sig.dir_count(); ++d)
      if (sig.dir_sort(d) == sort) own.push_back(d);
    a.step[q].assign(sig.dir_count(), NT);
    for (int l = 0; l < static_cast<int>(sig.labels[sort].size()); ++l) {
      a.label_of[q] = l;
      fill_row(a, q, own, 0, [&]() { rec_p(a, q + 1, f); });
    }
  }
}

template <typename F>
void rec_q(QAutomaton& a, int q, F&& f) {
  if (q == a.size()) {
    f(const_cast<const QAutomaton&>(a));
    return;
  }
  const Signature& sig = a.sig;
  std::vector<int> all(sig.dir_count());
  for (int d = 0; d < sig.dir_count(); ++d) all[d] = d;
  for (int sort = sink_sort; sort < sig.sort_count(); ++sort) {
    a.sort_of[q] = sort;
    if (sort == sink_sort) {
      a.label_of[q] = -1;
      fill_row(a, q, all, 0, [&]() { rec_q(a, q + 1, f); });
    } else {
      for (int l = 0; l < static_cast<int>(sig.labels[sort].size()); ++l) {
        a.label_of[q] = l;
        fill_row(a, q, all, 0, [&]() { rec_q(a, q + 1, f); });
      }
    }
  }
}

}  // namespace detail_enum

// Calls f on every P-automaton over sig with exactly n states (named s0...).
template <typename F>
void for_each_p_exact(const Signature& sig, int n, F&& f) {
  PAutomaton a;
  a.sig = sig;
  for (int q = 0; q < n; ++q) a.states.push_back("s" + std::to_string(q));
  a.sort_of.assign(n, 0);
  a.label_of.assign(n, 0);
  a.step.assign(n, std::vector<int>(sig.dir_count(), NT));
  detail_enum::rec_p(a, 0, f);
}

template <typename F>
void for_each_p_upto(const Signature& sig, int max_states, F&& f) {
  for (int n = 0; n <= max_states; ++n) for_each_p_exact(sig, n, f);
}

template <typename F>
void for_each_q_exact(const Signature& sig, int n, F&& f) {
  QAutomaton a;
  a.sig = sig;
  for (int q = 0; q < n; ++q) a.states.push_back("s" + std::to_string(q));
  a.sort_of.assign(n, 0);
  a.label_of.assign(n, 0);
  a.step.assign(n, std::vector<int>(sig.dir_count(), NT));
  detail_enum::rec_q(a, 0, f);
}

template <typename F>
void for_each_q_upto(const Signature& sig, int max_states, F&& f) {
  for (int n = 0; n <= max_states; ++n) for_each_q_exact(sig, n, f);
}

// --------------------------------------------------------------- randoms

struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
  bool coin() { return below(2) == 0; }
};

// 1..3 sorts, 1..2 labels per sort, at most 4 directions in total
inline Signature random_signature(Rng& r) {
  int nsorts = 1 + r.below(3);
  std::vector<std::string> sorts;
  std::vector<std::vector<std::string>> labels, dirs;
  int label_id = 0, dir_id = 0;
  std::vector<int> dir_counts(nsorts, 1);
  int extra = 4 - nsorts;
  for (int k = 0; k < extra; ++k)
    if (r.coin()) ++dir_counts[r.below(nsorts)];
  for (int i = 0; i < nsorts; ++i) {
    sorts.push_back("s" + std::to_string(i + 1));
    std::vector<std::string> ls, ds;
    int nl = 1 + r.below(2);
    for (int k = 0; k < nl; ++k) ls.push_back("l" + std::to_string(++label_id));
    for (int k = 0; k < dir_counts[i]; ++k)
      ds.push_back("d" + std::to_string(++dir_id));
    labels.push_back(std::move(ls));
    dirs.push_back(std::move(ds));
  }
  return make_signature(std::move(sorts), std::move(labels), std::move(dirs));
}

inline PAutomaton random_p(Rng& r, const Signature& sig, int max_states) {
  int n = r.below(max_states + 1);
  PAutomaton a;
  a.sig = sig;
  for (int q = 0; q < n; ++q) a.states.push_back("s" + std::to_string(q));
  a.sort_of.resize(n);
  a.label_of.resize(n);
  a.step.assign(n, std::vector<int>(sig.dir_count(), NT));
  for (int q = 0; q < n; ++q) {
    int sort = r.below(sig.sort_count());
    a.sort_of[q] = sort;
    a.label_of[q] = r.below(static_cast<int>(sig.labels[sort].size()));
    for (int d = 0; d < sig.dir_count(); ++d)
      if (sig.dir_sort(d) == sort) a.step[q][d] = r.below(n);
  }
  return a;
}

inline QAutomaton random_q(Rng& r, const Signature& sig, int max_states) {
  int n = r.below(max_states + 1);
  QAutomaton a;
  a.sig = sig;
  for (int q = 0; q < n; ++q) a.states.push_back("s" + std::to_string(q));
  a.sort_of.resize(n);
  a.label_of.resize(n);
  a.step.assign(n, std::vector<int>(sig.dir_count(), NT));
  for (int q = 0; q < n; ++q) {
    int sort = r.below(sig.sort_count() + 1) - 1;  // sink_sort..sort_count-1
    a.sort_of[q] = sort;
    a.label_of[q] =
        sort == sink_sort ? -1 : r.below(static_cast<int>(sig.labels[sort].size()));
    for (int d = 0; d < sig.dir_count(); ++d) a.step[q][d] = r.below(n);
  }
  return a;
}

// ------------------------------------------------------------ iso helpers

// Isomorphism as a bijective morphism (its inverse is then a morphism too),
// found by backtracking over (sort, label)-compatible bijections.
template <typename Aut>
std::optional<AutMorphism> find_iso(const Aut& a, const Aut& b) {
  if (!(a.sig == b.sig) || a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  std::vector<std::vector<int>> cand(n);
  for (int q = 0; q < n; ++q)
    for (int t = 0; t < n; ++t)
      if (a.sort_of[q] == b.sort_of[t] && a.label_of[q] == b.label_of[t])
        cand[q].push_back(t);
  AutMorphism f;
  f.map.assign(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int q) -> bool {
    if (q == n) return is_morphism(a, b, f);
    for (int t : cand[q]) {
      if (used[t]) continue;
      used[t] = 1;
      f.map[q] = t;
      if (self(self, q + 1)) return true;
      used[t] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return f;
}

template <typename Aut>
bool iso(const Aut& a, const Aut& b) {
  return find_iso(a, b).has_value();
}

// ------------------------------------------------------------ oracles

// Direct product of P-automata: the non-sink pairs bisimilar under the
// completion, with componentwise structure. Independent of the chain route
// taken by product_p.
inline PAutomaton direct_product_p(const PAutomaton& a, const PAutomaton& b) {
  QAutomaton ka = completion_K(a), kb = completion_K(b);
  auto cls = bisim_partition_pair(ka, kb);
  PAutomaton out;
  out.sig = a.sig;
  std::vector<int> idx(static_cast<std::size_t>(a.size()) * b.size() + 1, -1);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      if (cls[x] == cls[ka.size() + y]) {
        idx[static_cast<std::size_t>(x) * b.size() + y] = out.size();
        out.states.push_back("(" + a.states[x] + "," + b.states[y] + ")");
        out.sort_of.push_back(a.sort_of[x]);
        out.label_of.push_back(a.label_of[x]);
        pairs.emplace_back(x, y);
      }
  out.step.assign(pairs.size(), std::vector<int>(a.sig.dir_count(), NT));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (int d = 0; d < a.sig.dir_count(); ++d) {
      if (a.sig.dir_sort(d) != out.sort_of[k]) continue;
      int tx = a.step[pairs[k].first][d];
      int ty = b.step[pairs[k].second][d];
      int t = idx[static_cast<std::size_t>(tx) * b.size() + ty];
      if (t == -1) throw error("oracle: direct product not closed");
      out.step[k][d] = t;
    }
  return out;
}

// Naive Moore refinement used to cross-check the Hopcroft-style engine.
inline std::vector<int> naive_partition(const QAutomaton& aut) {
  const int n = aut.size();
  std::vector<int> cls(n);
  {
    std::vector<std::pair<int, int>> keys;
    for (int q = 0; q < n; ++q) {
      auto key = std::make_pair(aut.sort_of[q], aut.label_of[q]);
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(key);
        cls[q] = static_cast<int>(keys.size()) - 1;
      } else {
        cls[q] = static_cast<int>(it - keys.begin());
      }
    }
  }
  for (;;) {
    std::vector<std::vector<int>> sigs(n);
    for (int q = 0; q < n; ++q) {
      sigs[q].push_back(cls[q]);
      for (int d = 0; d < aut.sig.dir_count(); ++d)
        sigs[q].push_back(cls[aut.step[q][d]]);
    }
    std::vector<int> next(n);
    std::vector<std::vector<int>> keys;
    for (int q = 0; q < n; ++q) {
      auto it = std::find(keys.begin(), keys.end(), sigs[q]);
      if (it == keys.end()) {
        keys.push_back(sigs[q]);
        next[q] = static_cast<int>(keys.size()) - 1;
      } else {
        next[q] = static_cast<int>(it - keys.begin());
      }
    }
    if (next == cls) return cls;
    cls = std::move(next);
  }
}

inline std::set<std::vector<int>> hom_set(const std::vector<AutMorphism>& homs) {
  std::set<std::vector<int>> out;
  for (const AutMorphism& f : homs) out.insert(f.map);
  return out;
}

}  // namespace testsupport
