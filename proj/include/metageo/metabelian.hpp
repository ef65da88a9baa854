#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "metageo/caps.hpp"
#include "metageo/lattice.hpp"
#include "metageo/steiner.hpp"
#include "metageo/words.hpp"

namespace metageo {

/// Integer flow on the positively oriented unit edges of Z^r plus the image
/// of the word in Z^r; the canonical form of a free metabelian element.
/// Only nonzero edge values are stored.
struct Flow {
  std::map<LatticeEdge, std::int64_t> values;
  LatticePoint endpoint;
  int rank = 1;

  bool operator==(const Flow&) const = default;
};

/// Connected components of the subgraph induced by the flow support,
/// augmented with singleton {origin} / {endpoint} components when those
/// vertices touch no support edge. edge_counts holds each component's
/// support-edge total.
struct SupportGraph {
  std::vector<std::vector<LatticePoint>> components;  // disjoint, each sorted
  std::vector<std::int64_t> edge_counts;
  int origin_component = -1;
  int endpoint_component = -1;
};

/// Traces the path of `w` through Z^r from the origin; each traversal of a
/// canonical edge adds +1 forward, -1 backward.
Flow compute_flow(const Word& w, int rank);

/// True iff net flow vanishes at every vertex except possibly origin and
/// endpoint, with net(origin) == -net(endpoint).
bool check_kirchhoff(const Flow& f);

/// The flow map is a complete invariant of F/F''-equality.
bool metabelian_equal(const Word& u, const Word& v, int rank);

Flow translate_flow(const Flow& f, const LatticePoint& shift);

/// Pointwise edge-value sum; the result takes b's endpoint, matching the
/// composition identity
///   compute_flow(uv) == flow_sum(flow(u), translate_flow(flow(v), u.endpoint)).
Flow flow_sum(const Flow& a, const Flow& b);

SupportGraph support_components(const Flow& f);
GroupSteinerInstance to_group_steiner_instance(const SupportGraph& sg);

/// Sum of |value| over the flow support.
std::int64_t flow_term(const Flow& f);

/// Exact geodesic length: flow term plus twice the minimum group Steiner
/// tree over the support components (origin and endpoint always included as
/// terminals).
std::int64_t geodesic_length_exact(const Word& w, int rank, int box_margin = 1,
                                   const SolverCaps& caps = {});

struct ApproxGeodesicResult {
  std::int64_t estimate = 0;         // exact_flow_term + 2 * tree_length
  std::int64_t exact_flow_term = 0;  // sum |pi_w(e)|
  std::int64_t tree_length = 0;      // |Q1|, tree on the representatives
};

/// Approximation via a Steiner tree on one representative per component.
/// With inner = exact: estimate >= exact and (estimate - exact) / exact <= 2.
ApproxGeodesicResult geodesic_length_2approx(const Word& w, int rank, SteinerSolver inner,
                                             const SolverCaps& caps = {});

/// Euler-path word over the support edges (each |value| times in its net
/// direction) plus the representative tree's edges (once each way). The
/// result equals `w` in F/F'' and has exactly the 2-approx estimate length.
Word geodesic_word_metabelian(const Word& w, int rank, SteinerSolver inner,
                              const SolverCaps& caps = {});

/// Same construction over the exact group Steiner tree: a word of exactly
/// geodesic_length_exact letters.
Word geodesic_word_metabelian_exact(const Word& w, int rank, int box_margin = 1,
                                    const SolverCaps& caps = {});

/// Breadth-first distance table over flow states around a base element.
class FlowBall {
 public:
  FlowBall(int rank, int radius, const SolverCaps& caps = {});
  FlowBall(const Flow& base, int radius, const SolverCaps& caps = {});

  std::optional<int> distance(const Flow& f) const;
  std::optional<int> distance_encoded(const std::vector<std::int64_t>& enc) const;
  int radius() const { return radius_; }
  std::size_t size() const { return dist_.size(); }

  /// Visits every (encoded flow, distance) pair of the ball.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [enc, d] : dist_) fn(enc, d);
  }

 private:
  void build(const Flow& base, const SolverCaps& caps);

  int rank_;
  int radius_;
  std::unordered_map<std::vector<std::int64_t>, int, VecHash> dist_;
};

std::vector<std::int64_t> encode_flow(const Flow& f);

/// Exact word-metric distance of `w`'s element if it is <= radius.
std::optional<int> bfs_geodesic_oracle_metabelian(const Word& w, int rank, int radius,
                                                  const SolverCaps& caps = {});

}  // namespace metageo
