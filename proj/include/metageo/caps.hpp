#pragma once

namespace metageo {

/// Size limits for the exact solvers and the BFS oracles.
/// The METAGEO_MAX_EXACT environment variable (see the CLI) overrides the
/// two *_max_targets/terminals caps; flags override the environment.
struct SolverCaps {
  int tsp_exact_max_targets = 18;        // Held–Karp bitmask DP
  int tsp_bruteforce_max_targets = 9;    // permutation enumeration
  int steiner_exact_max_terminals = 10;  // Dreyfus–Wagner terminals / groups
  long long steiner_max_vertices = 4096; // candidate vertices in a box or Hanan graph
  long long bfs_max_states = 2000000;    // oracle ball state count
};

}  // namespace metageo
