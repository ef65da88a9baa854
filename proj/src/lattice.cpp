#include "metageo/lattice.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace metageo {

std::int64_t manhattan(const LatticePoint& x, const LatticePoint& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("manhattan: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  std::int64_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += std::llabs(x[i] - y[i]);
  }
  return d;
}

LatticePoint edge_head(const LatticeEdge& e) {
  LatticePoint p = e.base;
  p[static_cast<std::size_t>(e.axis - 1)] += 1;
  return p;
}

LatticePoint point_add(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) throw std::invalid_argument("point_add: dimension mismatch");
  LatticePoint r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

LatticePoint point_sub(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) throw std::invalid_argument("point_sub: dimension mismatch");
  LatticePoint r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

std::string point_to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

std::size_t VecHash::operator()(const std::vector<std::int64_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t x : v) {
    std::uint64_t u = static_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

}  // namespace metageo
