#pragma once

#include <cstdint>
#include <vector>

#include "metageo/caps.hpp"
#include "metageo/lattice.hpp"

namespace metageo {

/// Minimum-walk instance: visit every target starting from `start` and
/// finishing at `end`, under the Manhattan metric. Targets must be pairwise
/// distinct and all points of equal dimension.
struct WalkInstance {
  LatticePoint start;
  std::vector<LatticePoint> targets;
  LatticePoint end;
};

/// `order` holds indices into the instance's target list, in visiting
/// sequence; `length` is the walk length realized by that order.
struct WalkSolution {
  std::vector<int> order;
  std::int64_t length = 0;
};

enum class ApproxWalkVariant { nn_two_opt, mst_shortcut };

/// Length of the walk start -> targets[order...] -> end.
std::int64_t walk_length(const WalkInstance& inst, const std::vector<int>& order);

/// Bitmask dynamic program over target subsets; provably minimum. Ties are
/// broken toward the lexicographically smallest visiting order among all
/// optimal walks. Throws CapExceeded beyond caps.tsp_exact_max_targets.
WalkSolution exact_walk_held_karp(const WalkInstance& inst, const SolverCaps& caps = {});

/// Closed-form sweep solver for 1-dimensional instances: with l and r the
/// extremes of targets ∪ {start, end},
///   length = (r - l) + min((start - l) + (r - end), (r - start) + (end - l)).
/// Throws std::invalid_argument when the dimension is not 1.
WalkSolution exact_walk_line(const WalkInstance& inst);

/// Deterministic heuristics: nearest-neighbor construction followed by
/// path 2-opt (endpoints fixed), or MST doubling with shortcutting.
/// The returned length is always >= the optimum.
WalkSolution approx_walk(const WalkInstance& inst,
                         ApproxWalkVariant variant = ApproxWalkVariant::nn_two_opt);

/// Exhaustive minimum over all target permutations (lexicographically first
/// optimum). Throws CapExceeded beyond caps.tsp_bruteforce_max_targets.
WalkSolution permutation_bruteforce(const WalkInstance& inst, const SolverCaps& caps = {});

}  // namespace metageo
