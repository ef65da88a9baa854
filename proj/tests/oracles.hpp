// Test-only oracles, kept independent of the solver paths they check.
#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "metageo/lattice.hpp"
#include "metageo/metabelian.hpp"
#include "metageo/steiner.hpp"
#include "metageo/words.hpp"
#include "metageo/wreath.hpp"

namespace metageo::testing {

// Fixpoint scan-and-remove reducer; quadratic, independent of the stack
// implementation in free_reduce.
inline Word naive_reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
      if (w.letters[i] == letter_inverse(w.letters[i + 1])) {
        w.letters.erase(w.letters.begin() + static_cast<std::ptrdiff_t>(i),
                        w.letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  w.reduced = true;
  return w;
}

// BFS over the abelian lamp group's Cayley graph.
inline std::int64_t abelian_bfs_length(const AElement& target, const GroupSpec& spec,
                                       int max_radius = 64) {
  const AElement start = lamp_identity(spec);
  if (target == start) return 0;
  std::set<AElement> seen{start};
  std::deque<std::pair<AElement, int>> frontier{{start, 0}};
  while (!frontier.empty()) {
    auto [a, d] = frontier.front();
    frontier.pop_front();
    if (d == max_radius) continue;
    for (int i = 1; i <= spec.lamp_rank(); ++i) {
      for (int sign : {+1, -1}) {
        AElement b = a;
        lamp_apply(b, i, sign, spec);
        if (b == target) return d + 1;
        if (seen.insert(b).second) frontier.emplace_back(std::move(b), d + 1);
      }
    }
  }
  throw std::runtime_error("abelian_bfs_length: radius exhausted");
}

// Prim MST weight over a point set under Manhattan distance.
inline std::int64_t mst_weight(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) return 0;
  const std::size_t n = pts.size();
  std::vector<bool> used(n, false);
  std::vector<std::int64_t> best(n, std::numeric_limits<std::int64_t>::max() / 4);
  best[0] = 0;
  std::int64_t total = 0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!used[v] && (u == n || best[v] < best[u])) u = v;
    }
    used[u] = true;
    total += best[u];
    for (std::size_t v = 0; v < n; ++v) {
      if (!used[v]) best[v] = std::min(best[v], manhattan(pts[u], pts[v]));
    }
  }
  return total;
}

// Exact Steiner-tree oracle: minimum over all candidate Steiner-point
// subsets of the MST weight of terminals ∪ subset. Exponential in the
// candidate count; independent of the Dreyfus–Wagner route.
inline std::int64_t subset_mst_steiner(const std::vector<LatticePoint>& terminals,
                                       const std::vector<LatticePoint>& candidates) {
  if (candidates.size() > 20) throw std::invalid_argument("subset_mst_steiner: too many candidates");
  std::int64_t best = mst_weight(terminals);
  for (std::size_t mask = 1; mask < (std::size_t{1} << candidates.size()); ++mask) {
    std::vector<LatticePoint> pts = terminals;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask & (std::size_t{1} << i)) pts.push_back(candidates[i]);
    }
    best = std::min(best, mst_weight(pts));
  }
  return best;
}

inline std::vector<LatticePoint> hanan_points(const std::vector<LatticePoint>& terminals) {
  const std::size_t r = terminals.front().size();
  std::vector<std::vector<Coord>> axis(r);
  for (const auto& t : terminals)
    for (std::size_t a = 0; a < r; ++a) axis[a].push_back(t[a]);
  for (auto& c : axis) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::vector<LatticePoint> out{{}};
  for (std::size_t a = 0; a < r; ++a) {
    std::vector<LatticePoint> next;
    for (const auto& p : out) {
      for (Coord c : axis[a]) {
        LatticePoint q = p;
        q.push_back(c);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  std::set<LatticePoint> terms(terminals.begin(), terminals.end());
  std::vector<LatticePoint> filtered;
  for (auto& p : out)
    if (!terms.count(p)) filtered.push_back(std::move(p));
  return filtered;
}

inline std::vector<LatticePoint> box_points(const std::vector<LatticePoint>& terminals) {
  const std::size_t r = terminals.front().size();
  LatticePoint lo = terminals.front(), hi = lo;
  for (const auto& t : terminals) {
    for (std::size_t a = 0; a < r; ++a) {
      lo[a] = std::min(lo[a], t[a]);
      hi[a] = std::max(hi[a], t[a]);
    }
  }
  std::vector<LatticePoint> out{{}};
  for (std::size_t a = 0; a < r; ++a) {
    std::vector<LatticePoint> next;
    for (const auto& p : out) {
      for (Coord c = lo[a]; c <= hi[a]; ++c) {
        LatticePoint q = p;
        q.push_back(c);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  std::set<LatticePoint> terms(terminals.begin(), terminals.end());
  std::vector<LatticePoint> filtered;
  for (auto& p : out)
    if (!terms.count(p)) filtered.push_back(std::move(p));
  return filtered;
}

// 0-1 BFS connector oracle for two-group instances: edges inside a group
// cost 0, every other lattice edge costs 1.
inline std::int64_t two_group_connector(const std::vector<LatticePoint>& a,
                                        const std::vector<LatticePoint>& b) {
  const std::size_t r = a.front().size();
  LatticePoint lo = a.front(), hi = lo;
  auto extend = [&](const std::vector<LatticePoint>& grp) {
    for (const auto& p : grp) {
      for (std::size_t ax = 0; ax < r; ++ax) {
        lo[ax] = std::min(lo[ax], p[ax]);
        hi[ax] = std::max(hi[ax], p[ax]);
      }
    }
  };
  extend(a);
  extend(b);
  for (std::size_t ax = 0; ax < r; ++ax) {
    lo[ax] -= 1;
    hi[ax] += 1;
  }
  const std::set<LatticePoint> in_a(a.begin(), a.end()), in_b(b.begin(), b.end());
  auto same_group = [&](const LatticePoint& u, const LatticePoint& v) {
    return (in_a.count(u) && in_a.count(v)) || (in_b.count(u) && in_b.count(v));
  };
  std::map<LatticePoint, std::int64_t> dist;
  std::deque<LatticePoint> dq;
  for (const auto& p : a) {
    dist[p] = 0;
    dq.push_back(p);
  }
  while (!dq.empty()) {
    LatticePoint u = dq.front();
    dq.pop_front();
    const std::int64_t du = dist.at(u);
    for (std::size_t ax = 0; ax < r; ++ax) {
      for (int d : {-1, +1}) {
        LatticePoint v = u;
        v[ax] += d;
        if (v[ax] < lo[ax] || v[ax] > hi[ax]) continue;
        const std::int64_t w = same_group(u, v) ? 0 : 1;
        auto it = dist.find(v);
        if (it == dist.end() || du + w < it->second) {
          dist[v] = du + w;
          if (w == 0) {
            dq.push_front(v);
          } else {
            dq.push_back(v);
          }
        }
      }
    }
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& p : b) best = std::min(best, dist.at(p));
  return best;
}

// Meet-in-the-middle word-metric distance via two half-radius flow balls:
// BFS from the identity and BFS from the target meet on a geodesic midpoint
// whenever the distance is within `radius`.
inline std::optional<int> bounded_distance_metabelian(const Word& w, int rank, int radius) {
  const Flow target = compute_flow(w, rank);
  const int half = (radius + 1) / 2;
  const FlowBall from_identity(rank, half);
  const FlowBall from_target(target, radius - half);
  std::optional<int> best;
  from_identity.for_each([&](const std::vector<std::int64_t>& enc, int d_id) {
    if (auto d_t = from_target.distance_encoded(enc)) {
      const int total = d_id + *d_t;
      if (!best || total < *best) best = total;
    }
  });
  if (best && *best > radius) return std::nullopt;
  return best;
}

}  // namespace metageo::testing
