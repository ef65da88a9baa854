#include "metageo/lattice_tsp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "metageo/errors.hpp"

namespace metageo {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void validate(const WalkInstance& inst) {
  const std::size_t dim = inst.start.size();
  if (inst.end.size() != dim) throw std::invalid_argument("walk: start/end dimension mismatch");
  std::set<LatticePoint> seen;
  for (const LatticePoint& t : inst.targets) {
    if (t.size() != dim) throw std::invalid_argument("walk: target dimension mismatch");
    if (!seen.insert(t).second) throw std::invalid_argument("walk: targets must be pairwise distinct");
  }
}

}  // namespace

std::int64_t walk_length(const WalkInstance& inst, const std::vector<int>& order) {
  if (order.empty()) return manhattan(inst.start, inst.end);
  std::int64_t len = manhattan(inst.start, inst.targets[static_cast<std::size_t>(order.front())]);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    len += manhattan(inst.targets[static_cast<std::size_t>(order[i])],
                     inst.targets[static_cast<std::size_t>(order[i + 1])]);
  }
  len += manhattan(inst.targets[static_cast<std::size_t>(order.back())], inst.end);
  return len;
}

WalkSolution exact_walk_held_karp(const WalkInstance& inst, const SolverCaps& caps) {
  validate(inst);
  const int n = static_cast<int>(inst.targets.size());
  if (n > caps.tsp_exact_max_targets) {
    throw CapExceeded("exact_walk_held_karp: " + std::to_string(n) + " targets exceeds cap " +
                      std::to_string(caps.tsp_exact_max_targets));
  }
  if (n == 0) return WalkSolution{{}, manhattan(inst.start, inst.end)};

  std::vector<std::vector<std::int64_t>> d(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(n)));
  std::vector<std::int64_t> from_start(static_cast<std::size_t>(n)), to_end(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    from_start[i] = manhattan(inst.start, inst.targets[i]);
    to_end[i] = manhattan(inst.targets[i], inst.end);
    for (int j = 0; j < n; ++j) d[i][j] = manhattan(inst.targets[i], inst.targets[j]);
  }

  // h[mask][j]: best length starting at target j, visiting every target in
  // mask (j not in mask), then finishing at end.
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::int64_t> h(full * static_cast<std::size_t>(n), kInf);
  auto H = [&](std::size_t mask, int j) -> std::int64_t& {
    return h[mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  for (int j = 0; j < n; ++j) H(0, j) = to_end[j];
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      std::int64_t best = kInf;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (std::size_t{1} << i))) continue;
        std::int64_t cand = d[j][i] + H(mask ^ (std::size_t{1} << i), i);
        if (cand < best) best = cand;
      }
      H(mask, j) = best;
    }
  }

  std::int64_t opt = kInf;
  for (int j = 0; j < n; ++j) {
    opt = std::min(opt, from_start[j] + H(full - 1 - (std::size_t{1} << j), j));
  }

  // Greedy forward reconstruction yields the lexicographically smallest
  // optimal visiting order.
  WalkSolution sol;
  sol.length = opt;
  std::size_t remaining = full - 1;
  std::int64_t need = opt;
  int cur = -1;
  while (remaining) {
    for (int i = 0; i < n; ++i) {
      if (!(remaining & (std::size_t{1} << i))) continue;
      std::int64_t step = (cur < 0 ? from_start[i] : d[cur][i]);
      if (step + H(remaining ^ (std::size_t{1} << i), i) == need) {
        sol.order.push_back(i);
        remaining ^= std::size_t{1} << i;
        need -= step;
        cur = i;
        break;
      }
    }
  }
  return sol;
}

WalkSolution exact_walk_line(const WalkInstance& inst) {
  validate(inst);
  if (inst.start.size() != 1) {
    throw std::invalid_argument("exact_walk_line: dimension must be 1");
  }
  const Coord s = inst.start[0];
  const int n = static_cast<int>(inst.targets.size());

  // Two sweep candidates: everything left of the start first, or everything
  // right of it first. One of them is optimal on a line.
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);

  std::vector<int> left_first = idx;
  std::stable_sort(left_first.begin(), left_first.end(), [&](int a, int b) {
    const Coord xa = inst.targets[a][0], xb = inst.targets[b][0];
    const bool la = xa <= s, lb = xb <= s;
    if (la != lb) return la;           // left-of-start block first
    if (la) return xa > xb;            // descending toward the left extreme
    return xa < xb;                    // then ascending to the right extreme
  });
  std::vector<int> right_first = idx;
  std::stable_sort(right_first.begin(), right_first.end(), [&](int a, int b) {
    const Coord xa = inst.targets[a][0], xb = inst.targets[b][0];
    const bool ra = xa >= s, rb = xb >= s;
    if (ra != rb) return ra;
    if (ra) return xa < xb;
    return xa > xb;
  });

  const std::int64_t len_l = walk_length(inst, left_first);
  const std::int64_t len_r = walk_length(inst, right_first);
  WalkSolution sol;
  if (len_l <= len_r) {
    sol.order = std::move(left_first);
    sol.length = len_l;
  } else {
    sol.order = std::move(right_first);
    sol.length = len_r;
  }
  return sol;
}

namespace {

WalkSolution nearest_neighbor_two_opt(const WalkInstance& inst) {
  const int n = static_cast<int>(inst.targets.size());
  WalkSolution sol;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  LatticePoint cur = inst.start;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::int64_t best_d = kInf;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      std::int64_t di = manhattan(cur, inst.targets[i]);
      if (di < best_d) {
        best_d = di;
        best = i;
      }
    }
    used[best] = true;
    sol.order.push_back(best);
    cur = inst.targets[best];
  }

  // Path 2-opt with fixed endpoints: reverse internal segments while any
  // first-improvement move exists.
  auto point_at = [&](int pos) -> const LatticePoint& {
    if (pos < 0) return inst.start;
    if (pos >= n) return inst.end;
    return inst.targets[static_cast<std::size_t>(sol.order[static_cast<std::size_t>(pos)])];
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n && !improved; ++i) {
      for (int j = i; j < n && !improved; ++j) {
        const std::int64_t before = manhattan(point_at(i - 1), point_at(i)) +
                                    manhattan(point_at(j), point_at(j + 1));
        const std::int64_t after = manhattan(point_at(i - 1), point_at(j)) +
                                   manhattan(point_at(i), point_at(j + 1));
        if (after < before) {
          std::reverse(sol.order.begin() + i, sol.order.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  sol.length = walk_length(inst, sol.order);
  return sol;
}

WalkSolution mst_shortcut(const WalkInstance& inst) {
  const int n = static_cast<int>(inst.targets.size());
  // Nodes: 0 = start, 1..n = targets, n+1 = end.
  const int m = n + 2;
  auto point_of = [&](int v) -> const LatticePoint& {
    if (v == 0) return inst.start;
    if (v == m - 1) return inst.end;
    return inst.targets[static_cast<std::size_t>(v - 1)];
  };

  struct E {
    std::int64_t w;
    int u, v;
    bool operator<(const E& o) const { return std::tie(w, u, v) < std::tie(o.w, o.u, o.v); }
  };
  std::vector<E> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.push_back({manhattan(point_of(u), point_of(v)), u, v});
  std::sort(edges.begin(), edges.end());

  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
  for (const E& e : edges) {
    int a = find(e.u), b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Preorder from start; the end node is forced to come last.
  WalkSolution sol;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    if (v != 0 && v != m - 1) sol.order.push_back(v - 1);
    for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it)
      if (!seen[*it]) stack.push_back(*it);
  }
  sol.length = walk_length(inst, sol.order);
  return sol;
}

}  // namespace

WalkSolution approx_walk(const WalkInstance& inst, ApproxWalkVariant variant) {
  validate(inst);
  if (inst.targets.empty()) return WalkSolution{{}, manhattan(inst.start, inst.end)};
  return variant == ApproxWalkVariant::nn_two_opt ? nearest_neighbor_two_opt(inst)
                                                  : mst_shortcut(inst);
}

WalkSolution permutation_bruteforce(const WalkInstance& inst, const SolverCaps& caps) {
  validate(inst);
  const int n = static_cast<int>(inst.targets.size());
  if (n > caps.tsp_bruteforce_max_targets) {
    throw CapExceeded("permutation_bruteforce: " + std::to_string(n) + " targets exceeds cap " +
                      std::to_string(caps.tsp_bruteforce_max_targets));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  WalkSolution best{perm, walk_length(inst, perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::int64_t len = walk_length(inst, perm);
    if (len < best.length) {
      best.order = perm;
      best.length = len;
    }
  }
  return best;
}

}  // namespace metageo
