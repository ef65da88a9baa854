#include <doctest.h>

#include <random>

#include "metageo/errors.hpp"
#include "metageo/metabelian.hpp"
#include "metageo/sampling.hpp"
#include "metageo/steiner.hpp"
#include "oracles.hpp"

using namespace metageo;

TEST_CASE("rsmt on two terminals is an L-path of manhattan length") {
  const TreeResult t = rsmt_exact({{{0, 0}, {1, 1}}});
  CHECK(t.total_length == 2);
  CHECK(spans_terminals(t, {{{0, 0}, {1, 1}}}));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const SteinerInstance inst = random_steiner_instance(rng, 2, 2, -9, 9);
    CHECK(rsmt_exact(inst).total_length == manhattan(inst.terminals[0], inst.terminals[1]));
  }
}

TEST_CASE("rsmt corner and steiner-point examples") {
  {
    const SteinerInstance inst{{{0, 0}, {2, 0}, {0, 2}}};
    const std::int64_t oracle =
        testing::subset_mst_steiner(inst.terminals, testing::hanan_points(inst.terminals));
    CHECK(oracle == 4);
    CHECK(rsmt_exact(inst).total_length == 4);
  }
  {
    // A proper Steiner gain: the MST needs 5, the Steiner point (1,0) gives 4.
    const SteinerInstance inst{{{0, 0}, {2, 0}, {1, 2}}};
    const std::int64_t oracle =
        testing::subset_mst_steiner(inst.terminals, testing::hanan_points(inst.terminals));
    CHECK(oracle == 4);
    CHECK(rsmt_exact(inst).total_length == 4);
    CHECK(mst_terminals_approx(inst).total_length == 5);
  }
}

TEST_CASE("rsmt degenerate inputs and caps") {
  CHECK(rsmt_exact({{{3, 4}}}).edges.empty());
  CHECK(rsmt_exact({{{3, 4}, {3, 4}}}).edges.empty());  // duplicates collapse
  CHECK_THROWS_AS(rsmt_exact({{}}), std::invalid_argument);
  SolverCaps caps;
  caps.steiner_exact_max_terminals = 3;
  std::mt19937_64 rng(12);
  CHECK_THROWS_AS(rsmt_exact(random_steiner_instance(rng, 2, 4, 0, 9), caps), CapExceeded);
}

TEST_CASE("hanan restriction validated against full-box search in the plane") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const SteinerInstance inst = random_steiner_instance(rng, 2, 2 + t % 3, 0, 3);
    const std::int64_t box_oracle =
        testing::subset_mst_steiner(inst.terminals, testing::box_points(inst.terminals));
    CHECK(rsmt_exact(inst).total_length == box_oracle);
  }
}

TEST_CASE("mst approximation: ratio in [1, 2], result verified") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const SteinerInstance inst = random_steiner_instance(rng, 2, 2 + t % 7, -7, 7);
    const TreeResult exact = rsmt_exact(inst);
    const TreeResult mst = mst_terminals_approx(inst);
    CHECK(spans_terminals(mst, inst));
    CHECK(exact.total_length <= mst.total_length);
    CHECK(mst.total_length <= 2 * exact.total_length);
    CHECK(static_cast<std::int64_t>(mst.edges.size()) <= mst.total_length);
  }
  CHECK(mst_terminals_approx({{{5, 5}}}).edges.empty());
}

TEST_CASE("group steiner examples") {
  CHECK(group_steiner_exact({{{{0, 0}, {1, 0}}}}).total_length == 0);  // single group
  CHECK(group_steiner_exact({{{{0, 0}}, {{1, 0}}}}).total_length == 1);

  const GroupSteinerInstance square{{{{0, 0}}, {{5, 0}, {6, 0}, {5, 1}, {6, 1}}}};
  CHECK(testing::two_group_connector(square.groups[0], square.groups[1]) == 5);
  const TreeResult q = group_steiner_exact(square);
  CHECK(q.total_length == 5);
  CHECK(spans_groups(q, square));
}

TEST_CASE("group steiner equals the 0-1 bfs connector on random two-group instances") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 60; ++t) {
    const GroupSteinerInstance inst = random_group_instance(rng, 2, 2, 1 + t % 4, 0, 8);
    CHECK(group_steiner_exact(inst).total_length ==
          testing::two_group_connector(inst.groups[0], inst.groups[1]));
  }
}

TEST_CASE("group steiner with singleton groups reduces to rsmt") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 60; ++t) {
    const SteinerInstance pts = random_steiner_instance(rng, 2, 2 + t % 4, 0, 7);
    GroupSteinerInstance inst;
    for (const auto& p : pts.terminals) inst.groups.push_back({p});
    CHECK(group_steiner_exact(inst).total_length == rsmt_exact(pts).total_length);
  }
}

TEST_CASE("group steiner rejects malformed groups") {
  CHECK_THROWS_AS(group_steiner_exact({{{{0, 0}, {2, 0}}}}), std::invalid_argument);  // gap
  CHECK_THROWS_AS(group_steiner_exact({{{{0, 0}}, {{0, 0}, {0, 1}}}}),
                  std::invalid_argument);  // overlap
  CHECK_THROWS_AS(group_steiner_exact({{}}), std::invalid_argument);
  SolverCaps caps;
  caps.steiner_max_vertices = 4;
  CHECK_THROWS_AS(group_steiner_exact({{{{0, 0}}, {{5, 5}}}}, 1, caps), CapExceeded);
}

TEST_CASE("box margin does not change the optimum") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const GroupSteinerInstance inst = random_group_instance(rng, 2, 2 + t % 2, 2, 0, 7);
    const std::int64_t m0 = group_steiner_exact(inst, 0).total_length;
    const std::int64_t m1 = group_steiner_exact(inst, 1).total_length;
    const std::int64_t m2 = group_steiner_exact(inst, 2).total_length;
    CHECK(m0 == m1);
    CHECK(m1 == m2);
  }
}

TEST_CASE("representative_reduction picks lexicographic minima deterministically") {
  const GroupSteinerInstance inst{{{{2, 1}, {1, 1}}}};
  const SteinerInstance reps = representative_reduction(inst);
  REQUIRE(reps.terminals.size() == 1);
  CHECK(reps.terminals[0] == LatticePoint{1, 1});

  const GroupSteinerInstance singletons{{{{3, 0}}, {{0, 2}}}};
  const SteinerInstance reps2 = representative_reduction(singletons);
  CHECK(reps2.terminals == std::vector<LatticePoint>{{3, 0}, {0, 2}});
  CHECK(representative_reduction(singletons).terminals == reps2.terminals);
}

TEST_CASE("group steiner via representatives") {
  CHECK(group_steiner_via_representatives({{{{1, 1}, {1, 2}}}}, SteinerSolver::exact)
            .total_length == 0);

  const GroupSteinerInstance square{{{{0, 0}}, {{5, 0}, {6, 0}, {5, 1}, {6, 1}}}};
  CHECK(group_steiner_via_representatives(square, SteinerSolver::exact).total_length == 5);
}

TEST_CASE("representative tree is sandwiched by the exact tree and the component sizes") {
  std::mt19937_64 rng(18);
  Alphabet meta2 = Alphabet::metabelian(2);
  int multi = 0;
  for (int t = 0; t < 400 && multi < 60; ++t) {
    const Word w = random_reduced_word(rng, meta2, 8 + t % 25);
    const SupportGraph sg = support_components(compute_flow(w, 2));
    if (sg.components.size() < 2) continue;
    ++multi;
    const GroupSteinerInstance inst = to_group_steiner_instance(sg);
    const std::int64_t exact = group_steiner_exact(inst).total_length;
    const std::int64_t reps =
        group_steiner_via_representatives(inst, SteinerSolver::exact).total_length;
    std::int64_t support_edges = 0;
    for (std::int64_t c : sg.edge_counts) support_edges += c;
    CHECK(exact <= reps);
    CHECK(reps <= exact + support_edges);
    std::int64_t induced = 0;
    for (const auto& grp : inst.groups) induced += induced_edge_count(grp);
    CHECK(reps <= exact + induced);
  }
  CHECK(multi == 60);
}

TEST_CASE("synthetic vertex-set groups also satisfy the representative bound") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 40; ++t) {
    const GroupSteinerInstance inst = random_group_instance(rng, 2, 2 + t % 3, 1 + t % 3, 0, 9);
    const std::int64_t exact = group_steiner_exact(inst).total_length;
    const std::int64_t reps =
        group_steiner_via_representatives(inst, SteinerSolver::exact).total_length;
    std::int64_t induced = 0;
    for (const auto& grp : inst.groups) induced += induced_edge_count(grp);
    CHECK(exact <= reps);
    CHECK(reps <= exact + induced);
  }
}

TEST_CASE("induced_edge_count") {
  CHECK(induced_edge_count({}) == 0);
  CHECK(induced_edge_count({{0, 0}}) == 0);
  CHECK(induced_edge_count({{0, 0}, {1, 0}, {0, 1}, {1, 1}}) == 4);  // unit square
}
