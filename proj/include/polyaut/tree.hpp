#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"

namespace polyaut {

// Optional node identity for a lazy tree. Equal ids promise identical
// subtrees; deep traversals use them to prune revisits of rational trees.
// Nodes without an id are always traversed in full.
struct NodeId {
  std::uintptr_t family = 0;
  std::int64_t node = 0;
  auto operator<=>(const NodeId&) const = default;
};

// An element of the space of complete labeled trees: a root observation plus
// a successor per direction of the full alphabet, produced on demand. Trees
// behave as pure functions from words to labels; successor functions must be
// effectively pure for shared use.
class LazyTree {
 public:
  using Succ = std::function<LazyTree(int)>;

  LazyTree(OmegaLabel root, int degree, Succ succ,
           std::optional<NodeId> id = std::nullopt)
      : root_(root), degree_(degree),
        succ_(std::make_shared<const Succ>(std::move(succ))), id_(id) {}

  const OmegaLabel& root() const { return root_; }
  int degree() const { return degree_; }
  const std::optional<NodeId>& id() const { return id_; }

  LazyTree child(int dir) const {
    if (dir < 0 || dir >= degree_) throw error("direction index out of range");
    return (*succ_)(dir);
  }

  OmegaLabel at(std::span<const int> word) const {
    LazyTree t = *this;
    for (int d : word) t = t.child(d);
    return t.root();
  }

 private:
  OmegaLabel root_;
  int degree_;
  std::shared_ptr<const Succ> succ_;
  std::optional<NodeId> id_;
};

namespace detail {
inline const char bot_tree_family = 0;
}

// The constantly-bottom tree.
inline LazyTree bot_tree(int degree) {
  return LazyTree(
      OmegaLabel::bot(), degree, [degree](int) { return bot_tree(degree); },
      NodeId{reinterpret_cast<std::uintptr_t>(&detail::bot_tree_family), degree});
}

namespace detail {

inline LazyTree behavior_node(std::shared_ptr<const QAutomaton> aut, int q) {
  OmegaLabel obs = observation(*aut, q);
  int degree = aut->sig.dir_count();
  NodeId id{reinterpret_cast<std::uintptr_t>(aut.get()), q};
  return LazyTree(
      obs, degree,
      [aut, q](int d) { return behavior_node(aut, aut->step[q][d]); }, id);
}

}  // namespace detail

// The behavior of a state: the tree whose label at word w is the observation
// of the state reached by w. Lazy; nothing is precomputed.
inline LazyTree behavior(std::shared_ptr<const QAutomaton> aut, int q) {
  if (!aut) throw error("behavior: null automaton");
  if (q < 0 || q >= aut->size()) throw error("unknown state");
  return detail::behavior_node(std::move(aut), q);
}

inline LazyTree behavior(const QAutomaton& aut, int q) {
  return behavior(std::make_shared<const QAutomaton>(aut), q);
}

inline LazyTree behavior(const QAutomaton& aut, const std::string& state) {
  return behavior(aut, state_index(aut, state));
}

// One unfolding step of a pointwise coalgebra: the sort and label of the
// node plus one successor seed per direction of that sort, in declaration
// order.
template <typename Seed>
struct UnfoldStep {
  int sort = 0;
  int label = 0;
  std::vector<Seed> children;
};

namespace detail {

template <typename Seed, typename StepFn>
LazyTree unfold_node(std::shared_ptr<const Signature> sig,
                     std::shared_ptr<const StepFn> step, Seed seed) {
  UnfoldStep<Seed> r = (*step)(seed);
  if (r.sort < 0 || r.sort >= sig->sort_count())
    throw error("unfold step returned an invalid sort");
  if (r.label < 0 || r.label >= static_cast<int>(sig->labels[r.sort].size()))
    throw error("unfold step returned a label outside its sort");
  if (static_cast<int>(r.children.size()) != sig->dirs_of(r.sort))
    throw error("unfold step returned the wrong number of successors");
  const int degree = sig->dir_count();
  const int first = sig->first_dir[r.sort];
  const int count = sig->dirs_of(r.sort);
  auto kids = std::make_shared<const std::vector<Seed>>(std::move(r.children));
  return LazyTree(OmegaLabel{r.sort, r.label}, degree,
                  [sig, step, kids, first, count, degree](int d) {
                    if (d >= first && d < first + count)
                      return unfold_node<Seed, StepFn>(sig, step, (*kids)[d - first]);
                    return bot_tree(degree);
                  });
}

}  // namespace detail

// Anamorphism into the completed tree space: successors in the node's own
// directions recurse on the step function, successors in foreign directions
// are constantly bottom.
template <typename Seed, typename StepFn>
LazyTree unfold_tree(const Signature& sig, StepFn step, Seed seed) {
  auto sigp = std::make_shared<const Signature>(sig);
  auto stepp = std::make_shared<const StepFn>(std::move(step));
  return detail::unfold_node<Seed, StepFn>(std::move(sigp), std::move(stepp),
                                           std::move(seed));
}

namespace detail {

inline bool tree_eq_rec(const LazyTree& a, const LazyTree& b, int n,
                        std::map<std::pair<NodeId, NodeId>, int>& seen) {
  if (!(a.root() == b.root())) return false;
  if (n <= 0) return true;
  if (a.id() && b.id()) {
    auto key = std::make_pair(*a.id(), *b.id());
    auto [it, fresh] = seen.emplace(key, n);
    if (!fresh) {
      if (it->second >= n) return true;
      it->second = n;
    }
  }
  for (int d = 0; d < a.degree(); ++d)
    if (!tree_eq_rec(a.child(d), b.child(d), n - 1, seen)) return false;
  return true;
}

inline bool clause_rec(const Signature& sig, const LazyTree& t, int n,
                       std::map<NodeId, int>& seen) {
  if (n <= 0) return true;
  if (t.id()) {
    auto [it, fresh] = seen.emplace(*t.id(), n);
    if (!fresh) {
      if (it->second >= n) return true;
      it->second = n;
    }
  }
  OmegaLabel l = t.root();
  for (int d = 0; d < t.degree(); ++d) {
    LazyTree c = t.child(d);
    bool own = !l.is_bot() && sig.dir_sort(d) == l.sort;
    if (own && c.root().is_bot()) return false;
    if (!own && !c.root().is_bot()) return false;
    if (!clause_rec(sig, c, n - 1, seen)) return false;
  }
  return true;
}

}  // namespace detail

// True iff the two trees agree on every word of length <= n.
inline bool tree_eq_depth(const LazyTree& a, const LazyTree& b, int n) {
  if (n < 0) throw error("tree_eq_depth: negative depth");
  if (a.degree() != b.degree()) throw error("tree degree mismatch");
  std::map<std::pair<NodeId, NodeId>, int> seen;
  return detail::tree_eq_rec(a, b, n, seen);
}

// Depth-bounded membership in the greatest well-formed tree subspace: at
// every word shorter than n, a node labeled in sort j has non-bottom
// successors exactly in the directions of sort j, and bottom nodes have only
// bottom successors. With require_root the root must not be bottom, which is
// depth-n membership in the final coalgebra of the partial functor.
inline bool clause_check(const Signature& sig, const LazyTree& t, int n,
                         bool require_root) {
  if (n < 0) throw error("clause_check: negative depth");
  if (t.degree() != sig.dir_count()) throw error("tree degree mismatch");
  if (require_root && t.root().is_bot()) return false;
  std::map<NodeId, int> seen;
  return detail::clause_rec(sig, t, n, seen);
}

// Indented text rendering of the depth-n truncation.
inline std::string render_tree_text(const Signature& sig, const LazyTree& t,
                                    int depth) {
  std::string out;
  auto rec = [&](auto&& self, const LazyTree& node, int level) -> void {
    if (level == 0) {
      out += label_token(sig, node.root()) + "\n";
    }
    if (level >= depth) return;
    for (int d = 0; d < node.degree(); ++d) {
      LazyTree c = node.child(d);
      out.append(2 * (level + 1), ' ');
      out += sig.dir_name(d) + ": " + label_token(sig, c.root()) + "\n";
      self(self, c, level + 1);
    }
  };
  rec(rec, t, 0);
  return out;
}

// DOT rendering: one node per word, edges labeled by directions.
inline std::string render_tree_dot(const Signature& sig, const LazyTree& t,
                                   int depth) {
  std::string out = "digraph tree {\n";
  auto rec = [&](auto&& self, const LazyTree& node, const std::string& id,
                 int level) -> void {
    out += "  \"" + id + "\" [label=\"" + label_token(sig, node.root()) + "\"];\n";
    if (level >= depth) return;
    for (int d = 0; d < node.degree(); ++d) {
      std::string cid = id + "_" + sig.dir_name(d);
      out += "  \"" + id + "\" -> \"" + cid + "\" [label=\"" + sig.dir_name(d) +
             "\"];\n";
      self(self, node.child(d), cid, level + 1);
    }
  };
  rec(rec, t, "w", 0);
  out += "}\n";
  return out;
}

}  // namespace polyaut
