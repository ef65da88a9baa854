#include "metageo/steiner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "metageo/errors.hpp"

namespace metageo {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

struct WeightedGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj;  // (vertex, weight)
};

struct DwSolution {
  std::int64_t length = 0;
  std::vector<std::pair<int, int>> edges;  // graph edges, u < v
};

// Dreyfus–Wagner over an explicit weighted graph. dp[mask][v] is the minimum
// tree spanning terminals(mask) ∪ {v}; masks merge at a vertex or grow along
// a Dijkstra relaxation. Reconstruction replays the recorded choices.
DwSolution dreyfus_wagner(const WeightedGraph& g, const std::vector<int>& terminals) {
  const int k = static_cast<int>(terminals.size());
  DwSolution out;
  if (k <= 1) return out;

  const std::size_t nmask = std::size_t{1} << k;
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<std::int64_t> dp(nmask * n, kInf);
  // choice >= 0: merge with that submask at the same vertex;
  // choice < 0 (and != kNone): arrived via vertex -(choice+1).
  constexpr std::int32_t kNone = std::numeric_limits<std::int32_t>::min();
  std::vector<std::int32_t> choice(nmask * n, kNone);
  auto at = [&](std::size_t mask, int v) { return mask * n + static_cast<std::size_t>(v); };

  for (int i = 0; i < k; ++i) dp[at(std::size_t{1} << i, terminals[i])] = 0;

  using QItem = std::pair<std::int64_t, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
  for (std::size_t mask = 1; mask < nmask; ++mask) {
    for (int v = 0; v < g.n; ++v) {
      for (std::size_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        if (dp[at(sub, v)] >= kInf || dp[at(mask ^ sub, v)] >= kInf) continue;
        const std::int64_t cand = dp[at(sub, v)] + dp[at(mask ^ sub, v)];
        if (cand < dp[at(mask, v)]) {
          dp[at(mask, v)] = cand;
          choice[at(mask, v)] = static_cast<std::int32_t>(sub);
        }
      }
      if (dp[at(mask, v)] < kInf) pq.emplace(dp[at(mask, v)], v);
    }
    while (!pq.empty()) {
      auto [dist, v] = pq.top();
      pq.pop();
      if (dist != dp[at(mask, v)]) continue;
      for (const auto& [u, w] : g.adj[static_cast<std::size_t>(v)]) {
        if (dist + w < dp[at(mask, u)]) {
          dp[at(mask, u)] = dist + w;
          choice[at(mask, u)] = static_cast<std::int32_t>(-(v + 1));
          pq.emplace(dist + w, u);
        }
      }
    }
  }

  const std::size_t full = nmask - 1;
  int root = -1;
  std::int64_t best = kInf;
  for (int v = 0; v < g.n; ++v) {
    if (dp[at(full, v)] < best) {
      best = dp[at(full, v)];
      root = v;
    }
  }
  if (root < 0) throw std::logic_error("dreyfus_wagner: disconnected terminal set");
  out.length = best;

  std::set<std::pair<int, int>> edges;
  std::vector<std::pair<std::size_t, int>> stack{{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    const std::int32_t c = choice[at(mask, v)];
    if (c == kNone) {
      if (dp[at(mask, v)] != 0) throw std::logic_error("dreyfus_wagner: broken reconstruction");
      continue;  // singleton terminal state
    }
    if (c >= 0) {
      stack.emplace_back(static_cast<std::size_t>(c), v);
      stack.emplace_back(mask ^ static_cast<std::size_t>(c), v);
    } else {
      const int u = -c - 1;
      edges.emplace(std::min(u, v), std::max(u, v));
      stack.emplace_back(mask, u);
    }
  }
  out.edges.assign(edges.begin(), edges.end());

  std::int64_t total = 0;
  for (const auto& [u, v] : out.edges) {
    std::int64_t w = kInf;
    for (const auto& [x, wx] : g.adj[static_cast<std::size_t>(u)])
      if (x == v) w = std::min(w, wx);
    total += w;
  }
  if (total != out.length) {
    throw std::logic_error("dreyfus_wagner: reconstructed edge set does not match dp length");
  }
  return out;
}

std::vector<LatticePoint> unique_points(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void check_dimensions(const std::vector<LatticePoint>& pts) {
  for (const LatticePoint& p : pts) {
    if (p.size() != pts.front().size())
      throw std::invalid_argument("steiner: point dimension mismatch");
    if (p.empty()) throw std::invalid_argument("steiner: zero-dimensional point");
  }
}

}  // namespace

std::int64_t induced_edge_count(const std::vector<LatticePoint>& vertices) {
  if (vertices.empty()) return 0;
  std::set<LatticePoint> in(vertices.begin(), vertices.end());
  std::int64_t count = 0;
  for (const LatticePoint& v : in) {
    for (std::size_t ax = 0; ax < v.size(); ++ax) {
      LatticePoint u = v;
      u[ax] += 1;
      if (in.count(u)) ++count;
    }
  }
  return count;
}

bool spans_terminals(const TreeResult& tree, const SteinerInstance& inst) {
  const std::vector<LatticePoint> terminals = unique_points(inst.terminals);
  std::map<LatticePoint, std::size_t> id;
  auto get = [&](const LatticePoint& p) {
    auto [it, _] = id.emplace(p, id.size());
    return it->second;
  };
  for (const LatticePoint& t : terminals) get(t);
  std::vector<std::pair<std::size_t, std::size_t>> unions;
  for (const LatticeEdge& e : tree.edges) unions.emplace_back(get(e.base), get(edge_head(e)));
  UnionFind uf(id.size());
  for (auto [a, b] : unions) uf.unite(a, b);
  const std::size_t root = uf.find(0);
  for (std::size_t i = 1; i < terminals.size(); ++i) {
    if (uf.find(i) != root) return false;
  }
  return true;
}

bool spans_groups(const TreeResult& tree, const GroupSteinerInstance& inst) {
  std::map<LatticePoint, std::size_t> id;
  auto get = [&](const LatticePoint& p) {
    auto [it, _] = id.emplace(p, id.size());
    return it->second;
  };
  std::vector<std::size_t> group_roots;
  std::vector<std::pair<std::size_t, std::size_t>> unions;
  for (const auto& grp : inst.groups) {
    group_roots.push_back(get(grp.front()));
    for (std::size_t i = 1; i < grp.size(); ++i) unions.emplace_back(get(grp[0]), get(grp[i]));
  }
  for (const LatticeEdge& e : tree.edges) unions.emplace_back(get(e.base), get(edge_head(e)));
  UnionFind uf(id.size());
  for (auto [a, b] : unions) uf.unite(a, b);
  const std::size_t root = uf.find(group_roots.front());
  for (std::size_t g : group_roots) {
    if (uf.find(g) != root) return false;
  }
  return true;
}

TreeResult rsmt_exact(const SteinerInstance& inst, const SolverCaps& caps) {
  if (inst.terminals.empty()) throw std::invalid_argument("rsmt_exact: no terminals");
  check_dimensions(inst.terminals);
  const std::vector<LatticePoint> terminals = unique_points(inst.terminals);
  const std::size_t r = terminals.front().size();
  if (static_cast<int>(terminals.size()) > caps.steiner_exact_max_terminals) {
    throw CapExceeded("rsmt_exact: " + std::to_string(terminals.size()) +
                      " terminals exceeds cap " + std::to_string(caps.steiner_exact_max_terminals));
  }
  if (terminals.size() == 1) return TreeResult{};

  // Hanan grid: all combinations of the terminals' per-axis coordinates.
  std::vector<std::vector<Coord>> axis_coords(r);
  for (std::size_t ax = 0; ax < r; ++ax) {
    for (const LatticePoint& t : terminals) axis_coords[ax].push_back(t[ax]);
    std::sort(axis_coords[ax].begin(), axis_coords[ax].end());
    axis_coords[ax].erase(std::unique(axis_coords[ax].begin(), axis_coords[ax].end()),
                          axis_coords[ax].end());
  }
  std::int64_t vertex_count = 1;
  for (const auto& c : axis_coords) {
    vertex_count *= static_cast<std::int64_t>(c.size());
    if (vertex_count > caps.steiner_max_vertices) {
      throw CapExceeded("rsmt_exact: Hanan grid exceeds vertex cap");
    }
  }

  // Mixed-radix vertex ids over the grid indices, axis 1 most significant.
  std::vector<std::size_t> stride(r, 1);
  for (std::size_t ax = r; ax-- > 1;) stride[ax - 1] = stride[ax] * axis_coords[ax].size();
  auto vertex_id = [&](const std::vector<std::size_t>& ix) {
    std::size_t v = 0;
    for (std::size_t ax = 0; ax < r; ++ax) v += ix[ax] * stride[ax];
    return static_cast<int>(v);
  };
  auto grid_indices = [&](int v) {
    std::vector<std::size_t> ix(r);
    std::size_t rest = static_cast<std::size_t>(v);
    for (std::size_t ax = 0; ax < r; ++ax) {
      ix[ax] = rest / stride[ax];
      rest %= stride[ax];
    }
    return ix;
  };

  WeightedGraph g;
  g.n = static_cast<int>(vertex_count);
  g.adj.resize(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) {
    const auto ix = grid_indices(v);
    for (std::size_t ax = 0; ax < r; ++ax) {
      if (ix[ax] + 1 < axis_coords[ax].size()) {
        auto jx = ix;
        jx[ax] += 1;
        const int u = vertex_id(jx);
        const std::int64_t w = axis_coords[ax][jx[ax]] - axis_coords[ax][ix[ax]];
        g.adj[static_cast<std::size_t>(v)].emplace_back(u, w);
        g.adj[static_cast<std::size_t>(u)].emplace_back(v, w);
      }
    }
  }

  std::vector<int> term_ids;
  for (const LatticePoint& t : terminals) {
    std::vector<std::size_t> ix(r);
    for (std::size_t ax = 0; ax < r; ++ax) {
      ix[ax] = static_cast<std::size_t>(
          std::lower_bound(axis_coords[ax].begin(), axis_coords[ax].end(), t[ax]) -
          axis_coords[ax].begin());
    }
    term_ids.push_back(vertex_id(ix));
  }

  const DwSolution dw = dreyfus_wagner(g, term_ids);

  TreeResult result;
  result.total_length = dw.length;
  for (const auto& [u, v] : dw.edges) {
    const auto iu = grid_indices(u), iv = grid_indices(v);
    std::size_t ax = 0;
    while (ax < r && iu[ax] == iv[ax]) ++ax;
    const auto& lo = (iu[ax] < iv[ax]) ? iu : iv;
    LatticePoint base(r);
    for (std::size_t a2 = 0; a2 < r; ++a2) base[a2] = axis_coords[a2][lo[a2]];
    const Coord from = axis_coords[ax][lo[ax]];
    const Coord to = axis_coords[ax][lo[ax] + 1];
    for (Coord c = from; c < to; ++c) {
      LatticePoint b = base;
      b[ax] = c;
      result.edges.push_back(LatticeEdge{std::move(b), static_cast<int>(ax + 1)});
    }
  }
  std::sort(result.edges.begin(), result.edges.end());
  if (static_cast<std::int64_t>(result.edges.size()) != result.total_length ||
      !spans_terminals(result, SteinerInstance{terminals})) {
    throw std::logic_error("rsmt_exact: result failed verification");
  }
  return result;
}

namespace {

// Kruskal over the terminal clique, each tree edge embedded as an
// axis-ascending staircase of unit edges (duplicates kept).
std::vector<LatticeEdge> mst_staircases(const std::vector<LatticePoint>& terminals) {
  const std::size_t n = terminals.size();
  struct E {
    std::int64_t w;
    std::size_t u, v;
    bool operator<(const E& o) const { return std::tie(w, u, v) < std::tie(o.w, o.u, o.v); }
  };
  std::vector<E> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      edges.push_back({manhattan(terminals[u], terminals[v]), u, v});
  std::sort(edges.begin(), edges.end());

  UnionFind uf(n);
  std::vector<LatticeEdge> unit_edges;
  for (const E& e : edges) {
    if (uf.find(e.u) == uf.find(e.v)) continue;
    uf.unite(e.u, e.v);
    LatticePoint cur = terminals[e.u];
    const LatticePoint& dst = terminals[e.v];
    for (std::size_t ax = 0; ax < cur.size(); ++ax) {
      while (cur[ax] < dst[ax]) {
        unit_edges.push_back(LatticeEdge{cur, static_cast<int>(ax + 1)});
        cur[ax] += 1;
      }
      while (cur[ax] > dst[ax]) {
        cur[ax] -= 1;
        unit_edges.push_back(LatticeEdge{cur, static_cast<int>(ax + 1)});
      }
    }
  }
  return unit_edges;
}

}  // namespace

TreeResult mst_terminals_approx(const SteinerInstance& inst) {
  if (inst.terminals.empty()) throw std::invalid_argument("mst_terminals_approx: no terminals");
  check_dimensions(inst.terminals);
  const std::vector<LatticePoint> terminals = unique_points(inst.terminals);
  TreeResult result;
  if (terminals.size() == 1) return result;

  const std::vector<LatticeEdge> staircases = mst_staircases(terminals);
  result.total_length = static_cast<std::int64_t>(staircases.size());
  std::set<LatticeEdge> unique_edges(staircases.begin(), staircases.end());
  result.edges.assign(unique_edges.begin(), unique_edges.end());
  if (!spans_terminals(result, SteinerInstance{terminals})) {
    throw std::logic_error("mst_terminals_approx: result failed verification");
  }
  return result;
}

std::vector<LatticeEdge> mst_terminals_embedding(const SteinerInstance& inst) {
  if (inst.terminals.empty()) throw std::invalid_argument("mst_terminals_embedding: no terminals");
  check_dimensions(inst.terminals);
  const std::vector<LatticePoint> terminals = unique_points(inst.terminals);
  if (terminals.size() == 1) return {};
  return mst_staircases(terminals);
}

namespace {

void validate_groups(const GroupSteinerInstance& inst) {
  if (inst.groups.empty()) throw std::invalid_argument("group steiner: no groups");
  std::map<LatticePoint, std::size_t> owner;
  for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
    const auto& grp = inst.groups[gi];
    if (grp.empty()) throw std::invalid_argument("group steiner: empty group");
    check_dimensions(grp);
    if (grp.front().size() != inst.groups.front().front().size())
      throw std::invalid_argument("group steiner: group dimension mismatch");
    std::set<LatticePoint> members;
    for (const LatticePoint& p : grp) {
      if (!members.insert(p).second)
        throw std::invalid_argument("group steiner: duplicate vertex in a group");
      auto [it, inserted] = owner.emplace(p, gi);
      if (!inserted) throw std::invalid_argument("group steiner: groups are not disjoint");
    }
    // Connectivity of the induced subgraph.
    std::set<LatticePoint> seen;
    std::vector<LatticePoint> stack{grp.front()};
    seen.insert(grp.front());
    while (!stack.empty()) {
      LatticePoint v = stack.back();
      stack.pop_back();
      for (std::size_t ax = 0; ax < v.size(); ++ax) {
        for (int d : {-1, 1}) {
          LatticePoint u = v;
          u[ax] += d;
          if (members.count(u) && seen.insert(u).second) stack.push_back(u);
        }
      }
    }
    if (seen.size() != members.size())
      throw std::invalid_argument("group steiner: group is not connected in the lattice graph");
  }
}

}  // namespace

TreeResult group_steiner_exact(const GroupSteinerInstance& inst, int box_margin,
                               const SolverCaps& caps) {
  validate_groups(inst);
  if (box_margin < 0) throw std::invalid_argument("group steiner: negative box margin");
  const std::size_t k = inst.groups.size();
  if (k == 1) return TreeResult{};
  if (static_cast<int>(k) > caps.steiner_exact_max_terminals) {
    throw CapExceeded("group_steiner_exact: " + std::to_string(k) + " groups exceeds cap " +
                      std::to_string(caps.steiner_exact_max_terminals));
  }
  const std::size_t r = inst.groups.front().front().size();

  LatticePoint lo = inst.groups.front().front(), hi = lo;
  for (const auto& grp : inst.groups) {
    for (const LatticePoint& p : grp) {
      for (std::size_t ax = 0; ax < r; ++ax) {
        lo[ax] = std::min(lo[ax], p[ax]);
        hi[ax] = std::max(hi[ax], p[ax]);
      }
    }
  }
  for (std::size_t ax = 0; ax < r; ++ax) {
    lo[ax] -= box_margin;
    hi[ax] += box_margin;
  }

  std::int64_t vertex_count = 1;
  std::vector<std::int64_t> extent(r);
  for (std::size_t ax = 0; ax < r; ++ax) {
    extent[ax] = hi[ax] - lo[ax] + 1;
    vertex_count *= extent[ax];
    if (vertex_count > caps.steiner_max_vertices) {
      throw CapExceeded("group_steiner_exact: candidate box exceeds vertex cap");
    }
  }

  std::vector<std::int64_t> stride(r, 1);
  for (std::size_t ax = r; ax-- > 1;) stride[ax - 1] = stride[ax] * extent[ax];
  auto box_id = [&](const LatticePoint& p) {
    std::int64_t v = 0;
    for (std::size_t ax = 0; ax < r; ++ax) v += (p[ax] - lo[ax]) * stride[ax];
    return v;
  };
  auto box_point = [&](std::int64_t v) {
    LatticePoint p(r);
    for (std::size_t ax = 0; ax < r; ++ax) {
      p[ax] = lo[ax] + v / stride[ax];
      v %= stride[ax];
    }
    return p;
  };

  // Contract each group to one node; free vertices keep their own nodes.
  std::vector<int> node_of(static_cast<std::size_t>(vertex_count), -1);
  for (std::size_t gi = 0; gi < k; ++gi) {
    for (const LatticePoint& p : inst.groups[gi]) {
      node_of[static_cast<std::size_t>(box_id(p))] = static_cast<int>(gi);
    }
  }
  int next_node = static_cast<int>(k);
  for (std::int64_t v = 0; v < vertex_count; ++v) {
    if (node_of[static_cast<std::size_t>(v)] < 0) node_of[static_cast<std::size_t>(v)] = next_node++;
  }

  WeightedGraph g;
  g.n = next_node;
  g.adj.resize(static_cast<std::size_t>(g.n));
  // Lexicographic vertex/axis sweep: the first original edge recorded for a
  // contracted pair is the lexicographically smallest one.
  std::map<std::pair<int, int>, LatticeEdge> rep_edge;
  for (std::int64_t v = 0; v < vertex_count; ++v) {
    const LatticePoint pv = box_point(v);
    for (std::size_t ax = 0; ax < r; ++ax) {
      if (pv[ax] + 1 > hi[ax]) continue;
      LatticePoint pu = pv;
      pu[ax] += 1;
      const int a = node_of[static_cast<std::size_t>(v)];
      const int b = node_of[static_cast<std::size_t>(box_id(pu))];
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      if (rep_edge.emplace(std::pair<int, int>(key.first, key.second),
                           LatticeEdge{pv, static_cast<int>(ax + 1)})
              .second) {
        g.adj[static_cast<std::size_t>(a)].emplace_back(b, 1);
        g.adj[static_cast<std::size_t>(b)].emplace_back(a, 1);
      }
    }
  }

  std::vector<int> terminals(k);
  std::iota(terminals.begin(), terminals.end(), 0);
  const DwSolution dw = dreyfus_wagner(g, terminals);

  TreeResult result;
  result.total_length = dw.length;
  for (const auto& [u, v] : dw.edges) result.edges.push_back(rep_edge.at({u, v}));
  std::sort(result.edges.begin(), result.edges.end());
  if (static_cast<std::int64_t>(result.edges.size()) != result.total_length ||
      !spans_groups(result, inst)) {
    throw std::logic_error("group_steiner_exact: result failed verification");
  }
  return result;
}

SteinerInstance representative_reduction(const GroupSteinerInstance& inst) {
  validate_groups(inst);
  SteinerInstance out;
  for (const auto& grp : inst.groups) {
    out.terminals.push_back(*std::min_element(grp.begin(), grp.end()));
  }
  return out;
}

TreeResult group_steiner_via_representatives(const GroupSteinerInstance& inst,
                                             SteinerSolver inner, const SolverCaps& caps) {
  const SteinerInstance reps = representative_reduction(inst);
  return inner == SteinerSolver::exact ? rsmt_exact(reps, caps) : mst_terminals_approx(reps);
}

}  // namespace metageo
