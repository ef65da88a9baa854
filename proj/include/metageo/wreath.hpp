#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "metageo/caps.hpp"
#include "metageo/lattice.hpp"
#include "metageo/lattice_tsp.hpp"
#include "metageo/words.hpp"

namespace metageo {

/// G = A wr Z^r with lamp group A = Z_{m1} x ... x Z_{mq} x Z^s.
/// Lamp generator a_i addresses the torsion factors in declaration order,
/// then the free factors.
struct GroupSpec {
  int base_rank = 1;
  std::vector<std::int64_t> lamp_moduli;
  int lamp_free_rank = 0;

  int lamp_rank() const { return static_cast<int>(lamp_moduli.size()) + lamp_free_rank; }
  Alphabet alphabet() const;

  /// Text form: "Z2 wr Z^2", "Z3xZ wr Z^1" (Zm = torsion factor, Z = free).
  static GroupSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Element of the lamp group as an exponent vector; torsion entries are kept
/// reduced into [0, m_i).
struct AElement {
  std::vector<std::int64_t> exponents;

  bool operator==(const AElement&) const = default;
  auto operator<=>(const AElement&) const = default;
};

AElement lamp_identity(const GroupSpec& spec);
bool lamp_is_identity(const AElement& a);
void lamp_apply(AElement& a, int gen_index, int sign, const GroupSpec& spec);
AElement lamp_mul(const AElement& a, const AElement& b, const GroupSpec& spec);

/// Minimal letter count expressing `a` over the lamp generators:
/// sum of min(e_i, m_i - e_i) over torsion factors plus |e_j| over free ones.
std::int64_t lamp_geodesic_length(const AElement& a, const GroupSpec& spec);

/// Minimal lamp word for `a`, letters ordered by generator index.
Word lamp_geodesic_word(const AElement& a, const GroupSpec& spec);

/// Normal form of a wreath-product element: finitely many non-identity lamp
/// values indexed by lattice position, plus the cursor endpoint.
struct WreathElement {
  std::map<LatticePoint, AElement> support;
  LatticePoint cursor;

  bool operator==(const WreathElement&) const = default;
};

WreathElement wreath_identity(const GroupSpec& spec);

/// Cursor state machine: translation letters move the cursor, lamp letters
/// multiply the lamp value under it. Identity lamp values are pruned.
WreathElement evaluate(const Word& w, const GroupSpec& spec);

/// Block decomposition route: collects the conjugate (position, lamp) pairs
/// of the word, then merges colliding positions by multiplying lamp values.
/// Always equals evaluate(w, spec).
WreathElement normal_form(const Word& w, const GroupSpec& spec);

/// Group law (f, b)(f', b') = (f · b(f'), b b').
WreathElement compose(const WreathElement& g, const WreathElement& h, const GroupSpec& spec);

enum class WalkSolver { exact, line_exact, heuristic };

/// The walk instance behind a wreath geodesic: origin start, support
/// positions as targets, cursor end.
WalkInstance walk_instance_of(const WreathElement& g, const GroupSpec& spec);

/// Sum of lamp geodesic lengths plus the solver's walk length. Exact with
/// solver = exact (or line_exact when r = 1).
std::int64_t geodesic_length_wreath(const WreathElement& g, const GroupSpec& spec,
                                    WalkSolver solver, const SolverCaps& caps = {});

/// A word realizing geodesic_length_wreath for the same solver: Manhattan
/// moves between stops (axis-ascending emission), minimal lamp word at each
/// stop. evaluate(result) == g.
Word geodesic_word_wreath(const WreathElement& g, const GroupSpec& spec, WalkSolver solver,
                          const SolverCaps& caps = {});

/// Breadth-first distance table over wreath elements out to a fixed radius;
/// the ground-truth oracle. Throws CapExceeded past caps.bfs_max_states.
class WreathBall {
 public:
  WreathBall(const GroupSpec& spec, int radius, const SolverCaps& caps = {});

  std::optional<int> distance(const WreathElement& g) const;
  int radius() const { return radius_; }
  std::size_t size() const { return dist_.size(); }

 private:
  GroupSpec spec_;
  int radius_;
  std::unordered_map<std::vector<std::int64_t>, int, VecHash> dist_;
};

std::vector<std::int64_t> encode_wreath(const WreathElement& g);

/// One-shot oracle: exact word-metric distance of `g` if it is <= radius.
std::optional<int> bfs_geodesic_oracle_wreath(const WreathElement& g, const GroupSpec& spec,
                                              int radius, const SolverCaps& caps = {});

}  // namespace metageo
