#include "metageo/metabelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "metageo/errors.hpp"

namespace metageo {

namespace {

void check_metabelian_letter(const Letter& l, int rank) {
  if (l.gen.kind != GenKind::metabelian) {
    throw std::invalid_argument("metabelian: non-metabelian letter in word");
  }
  if (l.gen.index < 1 || l.gen.index > rank) {
    throw std::invalid_argument("metabelian: generator x" + std::to_string(l.gen.index) +
                                " out of range for rank " + std::to_string(rank));
  }
}

void bump_edge(std::map<LatticeEdge, std::int64_t>& values, LatticeEdge e, std::int64_t delta) {
  auto it = values.find(e);
  if (it == values.end()) {
    if (delta != 0) values.emplace(std::move(e), delta);
    return;
  }
  it->second += delta;
  if (it->second == 0) values.erase(it);
}

}  // namespace

Flow compute_flow(const Word& w, int rank) {
  if (rank < 1) throw std::invalid_argument("metabelian: rank must be >= 1");
  Flow f;
  f.rank = rank;
  LatticePoint pos(static_cast<std::size_t>(rank), 0);
  for (const Letter& l : w.letters) {
    check_metabelian_letter(l, rank);
    const std::size_t ax = static_cast<std::size_t>(l.gen.index - 1);
    if (l.sign > 0) {
      bump_edge(f.values, LatticeEdge{pos, l.gen.index}, +1);
      pos[ax] += 1;
    } else {
      pos[ax] -= 1;
      bump_edge(f.values, LatticeEdge{pos, l.gen.index}, -1);
    }
  }
  f.endpoint = std::move(pos);
  return f;
}

bool check_kirchhoff(const Flow& f) {
  const LatticePoint origin(static_cast<std::size_t>(f.rank), 0);
  std::map<LatticePoint, std::int64_t> net;
  for (const auto& [e, v] : f.values) {
    net[e.base] += v;
    net[edge_head(e)] -= v;
  }
  std::int64_t at_origin = 0, at_endpoint = 0;
  for (const auto& [p, n] : net) {
    if (n == 0) continue;
    if (p == origin) {
      at_origin = n;
    } else if (p == f.endpoint) {
      at_endpoint = n;
    } else {
      return false;
    }
  }
  if (f.endpoint == origin) return at_origin == 0;
  return at_origin == -at_endpoint;
}

bool metabelian_equal(const Word& u, const Word& v, int rank) {
  return compute_flow(u, rank) == compute_flow(v, rank);
}

Flow translate_flow(const Flow& f, const LatticePoint& shift) {
  Flow out;
  out.rank = f.rank;
  out.endpoint = point_add(f.endpoint, shift);
  for (const auto& [e, val] : f.values) {
    out.values.emplace(LatticeEdge{point_add(e.base, shift), e.axis}, val);
  }
  return out;
}

Flow flow_sum(const Flow& a, const Flow& b) {
  if (a.rank != b.rank) throw std::invalid_argument("flow_sum: rank mismatch");
  Flow out = a;
  for (const auto& [e, val] : b.values) bump_edge(out.values, e, val);
  out.endpoint = b.endpoint;
  return out;
}

SupportGraph support_components(const Flow& f) {
  const LatticePoint origin(static_cast<std::size_t>(f.rank), 0);

  std::map<LatticePoint, std::size_t> id;
  auto get = [&](const LatticePoint& p) {
    auto [it, _] = id.emplace(p, id.size());
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edge_ids;
  for (const auto& [e, _] : f.values) edge_ids.emplace_back(get(e.base), get(edge_head(e)));

  std::vector<std::size_t> parent(id.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edge_ids) parent[find(a)] = find(b);

  std::map<std::size_t, std::vector<LatticePoint>> comp_vertices;
  for (const auto& [p, i] : id) comp_vertices[find(i)].push_back(p);
  std::map<std::size_t, std::int64_t> comp_edges;
  for (auto [a, b] : edge_ids) comp_edges[find(a)] += 1;

  SupportGraph sg;
  for (auto& [root, verts] : comp_vertices) {
    std::sort(verts.begin(), verts.end());
    sg.components.push_back(std::move(verts));
    sg.edge_counts.push_back(comp_edges[root]);
  }
  // Deterministic component order: by smallest vertex.
  std::vector<std::size_t> order(sg.components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sg.components[a].front() < sg.components[b].front();
  });
  {
    std::vector<std::vector<LatticePoint>> comps;
    std::vector<std::int64_t> counts;
    for (std::size_t i : order) {
      comps.push_back(std::move(sg.components[i]));
      counts.push_back(sg.edge_counts[i]);
    }
    sg.components = std::move(comps);
    sg.edge_counts = std::move(counts);
  }

  auto component_of = [&](const LatticePoint& p) -> int {
    for (std::size_t i = 0; i < sg.components.size(); ++i) {
      if (std::binary_search(sg.components[i].begin(), sg.components[i].end(), p)) {
        return static_cast<int>(i);
      }
    }
    return -1;
  };

  sg.origin_component = component_of(origin);
  if (sg.origin_component < 0) {
    sg.components.push_back({origin});
    sg.edge_counts.push_back(0);
    sg.origin_component = static_cast<int>(sg.components.size()) - 1;
  }
  sg.endpoint_component = component_of(f.endpoint);
  if (sg.endpoint_component < 0) {
    sg.components.push_back({f.endpoint});
    sg.edge_counts.push_back(0);
    sg.endpoint_component = static_cast<int>(sg.components.size()) - 1;
  }
  return sg;
}

GroupSteinerInstance to_group_steiner_instance(const SupportGraph& sg) {
  GroupSteinerInstance inst;
  inst.groups = sg.components;
  return inst;
}

std::int64_t flow_term(const Flow& f) {
  std::int64_t sum = 0;
  for (const auto& [_, v] : f.values) sum += std::llabs(v);
  return sum;
}

namespace {

TreeResult exact_tree_for(const Flow& f, int box_margin, const SolverCaps& caps) {
  const SupportGraph sg = support_components(f);
  if (sg.components.size() == 1) return TreeResult{};
  return group_steiner_exact(to_group_steiner_instance(sg), box_margin, caps);
}

TreeResult representative_tree_for(const Flow& f, SteinerSolver inner, const SolverCaps& caps) {
  const SupportGraph sg = support_components(f);
  return group_steiner_via_representatives(to_group_steiner_instance(sg), inner, caps);
}

// Tree edges for the Euler construction, with multiplicity: the MST
// embedding repeats a unit edge when two staircases overlap, so the emitted
// word realizes exactly the 2-approx estimate.
std::vector<LatticeEdge> representative_tree_edges(const Flow& f, SteinerSolver inner,
                                                   const SolverCaps& caps) {
  const SupportGraph sg = support_components(f);
  const SteinerInstance reps = representative_reduction(to_group_steiner_instance(sg));
  if (inner == SteinerSolver::exact) return rsmt_exact(reps, caps).edges;
  return mst_terminals_embedding(reps);
}

}  // namespace

std::int64_t geodesic_length_exact(const Word& w, int rank, int box_margin,
                                   const SolverCaps& caps) {
  const Flow f = compute_flow(w, rank);
  return flow_term(f) + 2 * exact_tree_for(f, box_margin, caps).total_length;
}

ApproxGeodesicResult geodesic_length_2approx(const Word& w, int rank, SteinerSolver inner,
                                             const SolverCaps& caps) {
  const Flow f = compute_flow(w, rank);
  ApproxGeodesicResult r;
  r.exact_flow_term = flow_term(f);
  r.tree_length = representative_tree_for(f, inner, caps).total_length;
  r.estimate = r.exact_flow_term + 2 * r.tree_length;
  return r;
}

namespace {

// Directed Euler path from origin to endpoint over the support edges (net
// multiplicities) plus each tree edge once in both directions.
Word euler_word(const Flow& f, const std::vector<LatticeEdge>& tree_edges) {
  const LatticePoint origin(static_cast<std::size_t>(f.rank), 0);

  struct Arc {
    int to;
    int axis;
    int sign;
  };
  std::map<LatticePoint, std::size_t> id;
  std::vector<LatticePoint> points;
  auto get = [&](const LatticePoint& p) {
    auto [it, inserted] = id.emplace(p, id.size());
    if (inserted) points.push_back(p);
    return it->second;
  };
  std::vector<std::vector<Arc>> out;
  auto add_arc = [&](const LatticePoint& from, const LatticePoint& to, int axis, int sign) {
    const std::size_t a = get(from), b = get(to);
    out.resize(std::max(out.size(), std::max(a, b) + 1));
    out[a].push_back(Arc{static_cast<int>(b), axis, sign});
  };

  get(origin);
  get(f.endpoint);
  for (const auto& [e, val] : f.values) {
    const LatticePoint head = edge_head(e);
    for (std::int64_t c = 0; c < std::llabs(val); ++c) {
      if (val > 0) {
        add_arc(e.base, head, e.axis, +1);
      } else {
        add_arc(head, e.base, e.axis, -1);
      }
    }
  }
  for (const LatticeEdge& e : tree_edges) {
    const LatticePoint head = edge_head(e);
    add_arc(e.base, head, e.axis, +1);
    add_arc(head, e.base, e.axis, -1);
  }
  out.resize(points.size());

  std::size_t total_arcs = 0;
  for (const auto& a : out) total_arcs += a.size();

  // Hierholzer, iterative; arcs are consumed in insertion order.
  std::vector<std::size_t> next(out.size(), 0);
  std::vector<std::pair<std::size_t, int>> stack{{id.at(origin), -1}};  // (vertex, incoming arc letter)
  std::vector<std::pair<int, int>> arcs_taken;  // (axis, sign), reversed at the end
  std::vector<std::pair<int, int>> pending;
  while (!stack.empty()) {
    auto [v, incoming] = stack.back();
    if (next[v] < out[v].size()) {
      const Arc a = out[v][next[v]++];
      stack.emplace_back(static_cast<std::size_t>(a.to), (a.axis << 1) | (a.sign > 0 ? 1 : 0));
    } else {
      stack.pop_back();
      if (incoming >= 0) pending.emplace_back(incoming >> 1, (incoming & 1) ? 1 : -1);
    }
  }
  if (pending.size() != total_arcs) {
    throw std::logic_error("euler_word: multigraph is not connected");
  }

  Word w;
  w.letters.reserve(pending.size());
  for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
    w.letters.push_back(Letter{Generator{GenKind::metabelian, it->first}, it->second});
  }
  return w;
}

}  // namespace

Word geodesic_word_metabelian(const Word& w, int rank, SteinerSolver inner,
                              const SolverCaps& caps) {
  const Flow f = compute_flow(w, rank);
  return euler_word(f, representative_tree_edges(f, inner, caps));
}

Word geodesic_word_metabelian_exact(const Word& w, int rank, int box_margin,
                                    const SolverCaps& caps) {
  const Flow f = compute_flow(w, rank);
  return euler_word(f, exact_tree_for(f, box_margin, caps).edges);
}

std::vector<std::int64_t> encode_flow(const Flow& f) {
  std::vector<std::int64_t> enc;
  enc.reserve(f.endpoint.size() + f.values.size() * 4);
  enc.insert(enc.end(), f.endpoint.begin(), f.endpoint.end());
  for (const auto& [e, v] : f.values) {
    enc.insert(enc.end(), e.base.begin(), e.base.end());
    enc.push_back(e.axis);
    enc.push_back(v);
  }
  return enc;
}

FlowBall::FlowBall(int rank, int radius, const SolverCaps& caps)
    : FlowBall(Flow{{}, LatticePoint(static_cast<std::size_t>(rank), 0), rank}, radius, caps) {}

FlowBall::FlowBall(const Flow& base, int radius, const SolverCaps& caps)
    : rank_(base.rank), radius_(radius) {
  build(base, caps);
}

void FlowBall::build(const Flow& base, const SolverCaps& caps) {
  std::deque<std::pair<Flow, int>> frontier{{base, 0}};
  dist_.emplace(encode_flow(base), 0);
  while (!frontier.empty()) {
    const auto [f, d] = frontier.front();
    frontier.pop_front();
    if (d == radius_) continue;
    for (int axis = 1; axis <= rank_; ++axis) {
      for (int sign : {+1, -1}) {
        Flow g = f;
        const std::size_t ax = static_cast<std::size_t>(axis - 1);
        if (sign > 0) {
          bump_edge(g.values, LatticeEdge{g.endpoint, axis}, +1);
          g.endpoint[ax] += 1;
        } else {
          g.endpoint[ax] -= 1;
          bump_edge(g.values, LatticeEdge{g.endpoint, axis}, -1);
        }
        auto [slot, inserted] = dist_.emplace(encode_flow(g), d + 1);
        if (inserted) {
          if (static_cast<long long>(dist_.size()) > caps.bfs_max_states) {
            throw CapExceeded("metabelian BFS oracle exceeded the state cap of " +
                              std::to_string(caps.bfs_max_states));
          }
          frontier.emplace_back(std::move(g), d + 1);
        }
      }
    }
  }
}

std::optional<int> FlowBall::distance(const Flow& f) const {
  return distance_encoded(encode_flow(f));
}

std::optional<int> FlowBall::distance_encoded(const std::vector<std::int64_t>& enc) const {
  auto it = dist_.find(enc);
  if (it == dist_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> bfs_geodesic_oracle_metabelian(const Word& w, int rank, int radius,
                                                  const SolverCaps& caps) {
  return FlowBall(rank, radius, caps).distance(compute_flow(w, rank));
}

}  // namespace metageo
