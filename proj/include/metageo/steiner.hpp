#pragma once

#include <cstdint>
#include <vector>

#include "metageo/caps.hpp"
#include "metageo/lattice.hpp"

namespace metageo {

/// Terminals for a rectilinear Steiner tree. Duplicates are collapsed on use.
struct SteinerInstance {
  std::vector<LatticePoint> terminals;
};

/// Pairwise-disjoint vertex groups, each connected in the lattice graph.
struct GroupSteinerInstance {
  std::vector<std::vector<LatticePoint>> groups;
};

/// A set of unit lattice edges with its total length. For the exact solvers
/// total_length == edges.size(); the MST embedding reports the MST weight,
/// which can exceed the deduplicated edge count when staircases overlap.
struct TreeResult {
  std::vector<LatticeEdge> edges;  // sorted, unique
  std::int64_t total_length = 0;
};

/// Minimum rectilinear Steiner tree via Dreyfus–Wagner restricted to the
/// Hanan grid of the terminals. Throws CapExceeded beyond
/// caps.steiner_exact_max_terminals or caps.steiner_max_vertices.
TreeResult rsmt_exact(const SteinerInstance& inst, const SolverCaps& caps = {});

/// Minimum spanning tree on the terminals under Manhattan distance, each
/// tree edge embedded as an axis-ascending staircase. total_length is the
/// MST weight; never more than twice the exact optimum.
TreeResult mst_terminals_approx(const SteinerInstance& inst);

/// The same staircase embedding as a multiset: one entry per unit edge per
/// tree edge, duplicates preserved where staircases overlap. The size always
/// equals the MST weight.
std::vector<LatticeEdge> mst_terminals_embedding(const SteinerInstance& inst);

/// Minimum edge set Q (edges outside the groups) making the union of the
/// groups connected. Each group is contracted to a supernode of the lattice
/// graph restricted to the groups' bounding box expanded by box_margin, then
/// Dreyfus–Wagner runs on the contracted graph. Rejects disconnected or
/// overlapping groups.
TreeResult group_steiner_exact(const GroupSteinerInstance& inst, int box_margin = 1,
                               const SolverCaps& caps = {});

/// Picks the lexicographically smallest vertex of each group.
SteinerInstance representative_reduction(const GroupSteinerInstance& inst);

enum class SteinerSolver { exact, mst };

/// The inner solver's Steiner tree on the group representatives.
TreeResult group_steiner_via_representatives(const GroupSteinerInstance& inst,
                                             SteinerSolver inner,
                                             const SolverCaps& caps = {});

/// Number of unit lattice edges with both endpoints in the vertex set.
std::int64_t induced_edge_count(const std::vector<LatticePoint>& vertices);

/// Independent connectivity checks used on every solver result.
bool spans_terminals(const TreeResult& tree, const SteinerInstance& inst);
bool spans_groups(const TreeResult& tree, const GroupSteinerInstance& inst);

}  // namespace metageo
