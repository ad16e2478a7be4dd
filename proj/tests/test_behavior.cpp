#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace polyaut;
using namespace testsupport;

namespace {

const OmegaLabel F{0, 0};
const OmegaLabel G{1, 0};
const OmegaLabel BOT = OmegaLabel::bot();

// seed 0 unfolds to f, seed 1 to g, alternating
struct AltSeed {
  int v;
};
UnfoldStep<AltSeed> alt_step(AltSeed s) {
  if (s.v == 0) return {0, 0, {AltSeed{1}}};
  return {1, 0, {AltSeed{0}, AltSeed{0}}};
}

}  // namespace

TEST_CASE("behavior: observations of the completed loop", "[behavior]") {
  LazyTree t = behavior(k_loop(), 0);
  CHECK(t.at(Word{}) == F);
  CHECK(t.at(Word{0}) == F);
  CHECK(t.at(Word{1}) == BOT);
  CHECK(t.at(Word{2}) == BOT);
  CHECK(t.at(Word{0, 0}) == F);
  CHECK(t.at(Word{1, 0}) == BOT);
  CHECK(t.at(Word{1, 1}) == BOT);
  CHECK(t.at(Word{1, 2}) == BOT);
}

TEST_CASE("behavior: the sink state is constantly bottom", "[behavior]") {
  LazyTree t = behavior(sink_only(), 0);
  CHECK(t.at(Word{}) == BOT);
  CHECK(t.at(Word{0, 1, 2, 0}) == BOT);
  CHECK(tree_eq_depth(t, bot_tree(3), 8));
}

TEST_CASE("behavior: unknown states are rejected", "[behavior]") {
  CHECK_THROWS_AS(behavior(k_loop(), 5), error);
  CHECK_THROWS_AS(behavior(k_loop(), "nope"), error);
}

TEST_CASE("behavior: morphisms preserve behavior", "[behavior]") {
  QAutomaton a = completion_K(a_2loop()), b = completion_K(a_loop());
  AutMorphism f = k_on_morphism(a_2loop(), a_loop(), AutMorphism{{0, 0}});
  REQUIRE(is_morphism_q(a, b, f));
  for (int q = 0; q < a.size(); ++q)
    CHECK(tree_eq_depth(behavior(a, q), behavior(b, f.map[q]), a.size() + b.size()));

  Rng rng(246);
  int checked = 0;
  for (int k = 0; k < 200 && checked < 30; ++k) {
    Signature sig = k % 2 ? random_signature(rng) : sig_fg();
    QAutomaton x = random_q(rng, sig, 3);
    QAutomaton y = random_q(rng, sig, 3);
    for (const AutMorphism& g : hom_enumerate(x, y)) {
      for (int q = 0; q < x.size(); ++q) {
        ++checked;
        CHECK(tree_eq_depth(behavior(x, q), behavior(y, g.map[q]), x.size() + y.size()));
      }
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("behavior: unfolding the one-state loop seed", "[behavior]") {
  Signature sig = sig_fg();
  auto step = [](int) { return UnfoldStep<int>{0, 0, {0}}; };
  LazyTree t = unfold_tree(sig, step, 0);
  CHECK(tree_eq_depth(t, behavior(k_loop(), 0), 10));
}

TEST_CASE("behavior: the alternating pattern tree", "[behavior]") {
  Signature sig = sig_fg();
  LazyTree t = unfold_tree(sig, alt_step, AltSeed{0});
  // displayed labels to depth 2
  CHECK(t.at(Word{}) == F);
  CHECK(t.at(Word{0}) == G);
  CHECK(t.at(Word{1}) == BOT);
  CHECK(t.at(Word{2}) == BOT);
  CHECK(t.at(Word{0, 0}) == BOT);
  CHECK(t.at(Word{1, 0}) == BOT);
  CHECK(t.at(Word{1, 1}) == BOT);
  CHECK(t.at(Word{2, 2}) == BOT);
  CHECK(clause_check(sig, t, 2, true));

  // the same tree is the behavior of the completed two-state automaton
  CHECK(tree_eq_depth(t, behavior(completion_K(a_fg()), 0), 9));
}

TEST_CASE("behavior: constant step functions", "[behavior]") {
  Signature sig = sig_fg();
  // every direction of sort 2 loops on the same seed
  auto step = [](int) { return UnfoldStep<int>{1, 0, {0, 0}}; };
  LazyTree t = unfold_tree(sig, step, 0);
  Rng rng(1357);
  for (int k = 0; k < 60; ++k) {
    Word w;
    bool own_only = true;
    for (int len = rng.below(5); len > 0; --len) {
      int d = rng.below(3);
      own_only = own_only && sig.dir_sort(d) == 1;
      w.push_back(d);
    }
    CHECK(t.at(w) == (own_only ? G : BOT));
  }
}

TEST_CASE("behavior: unfold validates the step output", "[behavior]") {
  Signature sig = sig_fg();
  auto bad_label = [](int) { return UnfoldStep<int>{0, 3, {0}}; };
  CHECK_THROWS_AS(unfold_tree(sig, bad_label, 0), error);
  auto bad_arity = [](int) { return UnfoldStep<int>{0, 0, {0, 0}}; };
  CHECK_THROWS_AS(unfold_tree(sig, bad_arity, 0), error);
}

TEST_CASE("behavior: unfold reproduces the step labels along own directions",
          "[behavior]") {
  Signature sig = sig_fg();
  LazyTree t = unfold_tree(sig, alt_step, AltSeed{0});
  // walk seeds and the tree in lockstep
  struct Item {
    LazyTree tree;
    AltSeed seed;
  };
  std::vector<Item> frontier{{t, AltSeed{0}}};
  for (int round = 0; round < 4; ++round) {
    std::vector<Item> next;
    for (const Item& it : frontier) {
      UnfoldStep<AltSeed> st = alt_step(it.seed);
      CHECK(it.tree.root() == OmegaLabel{st.sort, st.label});
      for (int k = 0; k < static_cast<int>(st.children.size()); ++k)
        next.push_back({it.tree.child(sig.first_dir[st.sort] + k), st.children[k]});
    }
    frontier = std::move(next);
  }
}

TEST_CASE("behavior: tree_eq_depth basics", "[behavior]") {
  LazyTree t = behavior(k_loop(), 0);
  CHECK(tree_eq_depth(t, t, 100));
  CHECK_FALSE(tree_eq_depth(t, bot_tree(3), 0));
  CHECK_THROWS_AS(tree_eq_depth(t, t, -1), error);
  CHECK_THROWS_AS(tree_eq_depth(t, bot_tree(2), 1), error);
}

TEST_CASE("behavior: clause predicate boundary cases", "[behavior]") {
  Signature sig = sig_fg();
  CHECK_FALSE(clause_check(sig, bot_tree(3), 5, true));
  CHECK(clause_check(sig, bot_tree(3), 5, false));
  CHECK_FALSE(clause_check(sig, bot_tree(3), 0, true));
  CHECK(clause_check(sig, bot_tree(3), 0, false));
  CHECK(clause_check(sig, behavior(k_loop(), 0), 20, true));
  // the bad automaton's state x breaks clause 1 immediately
  CHECK_FALSE(clause_check(sig, behavior(b_bad(), 1), 1, true));
}

TEST_CASE("behavior: bisimilarity fixtures", "[behavior]") {
  QAutomaton k1 = k_loop(), k2 = completion_K(a_2loop());
  CHECK(bisimilar(k1, 0, k2, 0));
  CHECK(bisimilar(k1, 0, k2, 1));
  CHECK_FALSE(bisimilar(k1, 0, k1, 1));

  QAutomaton other = build_q(make_signature({"1"}, {{"f"}}, {{"f1"}}),
                             {"p"}, {0}, {0}, {{0}});
  CHECK_THROWS_AS(bisimilar(k1, 0, other, 0), error);
}

TEST_CASE("behavior: bisimilar agrees with depth-bounded tree equality",
          "[behavior]") {
  Rng rng(8080);
  for (int k = 0; k < 60; ++k) {
    Signature sig = k % 2 ? random_signature(rng) : sig_fg();
    QAutomaton a = random_q(rng, sig, 3);
    QAutomaton b = random_q(rng, sig, 3);
    if (a.size() == 0 || b.size() == 0) continue;
    auto ap = std::make_shared<const QAutomaton>(a);
    auto bp = std::make_shared<const QAutomaton>(b);
    for (int qa = 0; qa < a.size(); ++qa)
      for (int qb = 0; qb < b.size(); ++qb)
        CHECK(bisimilar(a, qa, b, qb) ==
              tree_eq_depth(behavior(ap, qa), behavior(bp, qb), a.size() + b.size()));
  }
}

TEST_CASE("behavior: partition refinement agrees with naive refinement",
          "[behavior]") {
  Rng rng(9090);
  for (int k = 0; k < 150; ++k) {
    Signature sig = k % 2 ? random_signature(rng) : sig_fg();
    QAutomaton a = random_q(rng, sig, 6);
    CHECK(bisim_partition(a) == naive_partition(a));
  }
}

TEST_CASE("behavior: minimization of the two-loop completion", "[behavior]") {
  QAutomaton k2 = completion_K(a_2loop());
  auto [m, proj] = minimize(k2);
  validate_q(m);
  REQUIRE(m.size() == 2);
  CHECK(proj.map == std::vector<int>{0, 0, 1});
  CHECK(is_morphism_q(k2, m, proj));
  CHECK(iso(m, k_loop()));
}

TEST_CASE("behavior: minimization guarantees", "[behavior]") {
  Rng rng(31337);
  for (int k = 0; k < 80; ++k) {
    Signature sig = k % 2 ? random_signature(rng) : sig_fg();
    QAutomaton a = random_q(rng, sig, 5);
    auto [m, proj] = minimize(a);
    validate_q(m);
    CHECK(is_morphism_q(a, m, proj));
    // distinct behaviors in the quotient
    for (int x = 0; x < m.size(); ++x)
      for (int y = x + 1; y < m.size(); ++y) CHECK_FALSE(bisimilar(m, x, m, y));
    // idempotent up to isomorphism
    auto [mm, proj2] = minimize(m);
    CHECK(iso(mm, m));
    // behavior is preserved pointwise
    auto ap = std::make_shared<const QAutomaton>(a);
    auto mp = std::make_shared<const QAutomaton>(m);
    for (int q = 0; q < a.size(); ++q)
      CHECK(tree_eq_depth(behavior(ap, q), behavior(mp, proj.map[q]), 2 * a.size()));
    // delta membership is invariant under minimization
    CHECK(delta_check(m).verdict == delta_check(a).verdict);
  }
}

TEST_CASE("behavior: uniqueness of morphisms into a minimized automaton",
          "[behavior]") {
  Rng rng(424242);
  for (int k = 0; k < 50; ++k) {
    Signature sig = k % 2 ? random_signature(rng) : sig_fg();
    QAutomaton a = random_q(rng, sig, 4);
    auto [m, proj] = minimize(a);
    auto homs = hom_enumerate(a, m);
    CHECK(homs.size() == 1);  // exists (the projection) and is unique
    if (!homs.empty()) CHECK(homs[0].map == proj.map);
    // uniqueness also from unrelated sources
    QAutomaton b = random_q(rng, sig, 4);
    CHECK(hom_enumerate(b, m).size() <= 1);
  }
}

TEST_CASE("behavior: text and dot renderings are stable", "[behavior]") {
  Signature sig = sig_fg();
  LazyTree t = behavior(k_loop(), 0);
  CHECK(render_tree_text(sig, t, 1) ==
        "f\n"
        "  f1: f\n"
        "  g1: _bot_\n"
        "  g2: _bot_\n");
  std::string dot = render_tree_dot(sig, t, 1);
  CHECK(dot.find("\"w\" [label=\"f\"]") != std::string::npos);
  CHECK(dot.find("\"w\" -> \"w_g1\" [label=\"g1\"]") != std::string::npos);
  CHECK(dot == render_tree_dot(sig, t, 1));
}
