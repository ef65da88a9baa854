#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace metageo {

using Coord = std::int64_t;

/// A point of Z^r, stored as its coordinate vector.
using LatticePoint = std::vector<Coord>;

/// L1 distance. Throws std::invalid_argument on dimension mismatch.
std::int64_t manhattan(const LatticePoint& x, const LatticePoint& y);

/// Positively oriented unit edge from `base` to `base + e_axis`.
/// `axis` is 1-based, matching the JSON schemas.
struct LatticeEdge {
  LatticePoint base;
  int axis = 1;

  auto operator<=>(const LatticeEdge&) const = default;
};

LatticePoint edge_head(const LatticeEdge& e);

LatticePoint point_add(const LatticePoint& a, const LatticePoint& b);
LatticePoint point_sub(const LatticePoint& a, const LatticePoint& b);

std::string point_to_string(const LatticePoint& p);

/// FNV-1a over the coordinate words; shared by the oracle state tables.
struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept;
};

}  // namespace metageo
