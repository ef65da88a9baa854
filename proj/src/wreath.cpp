#include "metageo/wreath.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "metageo/errors.hpp"

namespace metageo {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Digits only, no signs or trailing characters.
std::optional<std::int64_t> parse_uint(const std::string& s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Alphabet GroupSpec::alphabet() const {
  Alphabet a;
  a.lamp_rank = lamp_rank();
  a.translation_rank = base_rank;
  return a;
}

GroupSpec GroupSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t at = t.find(" wr ");
  if (at == std::string::npos) {
    throw std::invalid_argument("group spec: expected '<lamp> wr Z^<r>' in '" + text + "'");
  }
  const std::string lamp_part = trim(t.substr(0, at));
  const std::string base_part = trim(t.substr(at + 4));

  GroupSpec spec;
  if (base_part == "Z") {
    spec.base_rank = 1;
  } else if (base_part.rfind("Z^", 0) == 0) {
    const auto rank = parse_uint(base_part.substr(2));
    if (!rank) throw std::invalid_argument("group spec: bad base rank in '" + text + "'");
    spec.base_rank = static_cast<int>(*rank);
  } else {
    throw std::invalid_argument("group spec: base group must be Z or Z^r in '" + text + "'");
  }
  if (spec.base_rank < 1) {
    throw std::invalid_argument("group spec: base rank must be >= 1 in '" + text + "'");
  }

  if (lamp_part.empty()) throw std::invalid_argument("group spec: missing lamp group");
  for (const std::string& factor : split(lamp_part, 'x')) {
    const std::string f = trim(factor);
    if (f == "Z") {
      spec.lamp_free_rank += 1;
      continue;
    }
    if (f.size() < 2 || f[0] != 'Z') {
      throw std::invalid_argument("group spec: bad lamp factor '" + f + "'");
    }
    const auto m = parse_uint(f.substr(1));
    if (!m) throw std::invalid_argument("group spec: bad lamp factor '" + f + "'");
    if (*m < 2) {
      throw std::invalid_argument("group spec: torsion modulus must be >= 2 in '" + f + "'");
    }
    spec.lamp_moduli.push_back(*m);
  }
  if (spec.lamp_rank() == 0) throw std::invalid_argument("group spec: lamp group must be nontrivial");
  return spec;
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::int64_t m : lamp_moduli) {
    if (!first) os << 'x';
    os << 'Z' << m;
    first = false;
  }
  for (int i = 0; i < lamp_free_rank; ++i) {
    if (!first) os << 'x';
    os << 'Z';
    first = false;
  }
  os << " wr Z^" << base_rank;
  return os.str();
}

AElement lamp_identity(const GroupSpec& spec) {
  return AElement{std::vector<std::int64_t>(static_cast<std::size_t>(spec.lamp_rank()), 0)};
}

bool lamp_is_identity(const AElement& a) {
  return std::all_of(a.exponents.begin(), a.exponents.end(), [](std::int64_t e) { return e == 0; });
}

void lamp_apply(AElement& a, int gen_index, int sign, const GroupSpec& spec) {
  const std::size_t i = static_cast<std::size_t>(gen_index - 1);
  a.exponents[i] += sign;
  if (i < spec.lamp_moduli.size()) {
    const std::int64_t m = spec.lamp_moduli[i];
    a.exponents[i] = ((a.exponents[i] % m) + m) % m;
  }
}

AElement lamp_mul(const AElement& a, const AElement& b, const GroupSpec& spec) {
  AElement r = a;
  for (std::size_t i = 0; i < r.exponents.size(); ++i) {
    r.exponents[i] += b.exponents[i];
    if (i < spec.lamp_moduli.size()) {
      const std::int64_t m = spec.lamp_moduli[i];
      r.exponents[i] = ((r.exponents[i] % m) + m) % m;
    }
  }
  return r;
}

std::int64_t lamp_geodesic_length(const AElement& a, const GroupSpec& spec) {
  std::int64_t len = 0;
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    if (i < spec.lamp_moduli.size()) {
      const std::int64_t e = a.exponents[i];
      len += std::min(e, spec.lamp_moduli[i] - e);
    } else {
      len += std::llabs(a.exponents[i]);
    }
  }
  return len;
}

Word lamp_geodesic_word(const AElement& a, const GroupSpec& spec) {
  Word w;
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    std::int64_t count;
    int sign;
    if (i < spec.lamp_moduli.size()) {
      const std::int64_t e = a.exponents[i];
      const std::int64_t m = spec.lamp_moduli[i];
      if (e <= m - e) {
        count = e;
        sign = 1;
      } else {
        count = m - e;
        sign = -1;
      }
    } else {
      count = std::llabs(a.exponents[i]);
      sign = a.exponents[i] >= 0 ? 1 : -1;
    }
    for (std::int64_t c = 0; c < count; ++c) {
      w.letters.push_back(Letter{Generator{GenKind::lamp, static_cast<int>(i + 1)}, sign});
    }
  }
  w.reduced = true;
  return w;
}

WreathElement wreath_identity(const GroupSpec& spec) {
  return WreathElement{{}, LatticePoint(static_cast<std::size_t>(spec.base_rank), 0)};
}

namespace {

void check_letter(const Letter& l, const GroupSpec& spec) {
  if (l.gen.kind == GenKind::metabelian) {
    throw std::invalid_argument("wreath: metabelian letter in a wreath word");
  }
  const int rank = l.gen.kind == GenKind::lamp ? spec.lamp_rank() : spec.base_rank;
  if (l.gen.index < 1 || l.gen.index > rank) {
    throw std::invalid_argument("wreath: generator " + std::string(1, kind_name(l.gen.kind)) +
                                std::to_string(l.gen.index) + " out of range for " +
                                spec.to_string());
  }
}

}  // namespace

WreathElement evaluate(const Word& w, const GroupSpec& spec) {
  WreathElement g = wreath_identity(spec);
  for (const Letter& l : w.letters) {
    check_letter(l, spec);
    if (l.gen.kind == GenKind::translation) {
      g.cursor[static_cast<std::size_t>(l.gen.index - 1)] += l.sign;
    } else {
      auto it = g.support.find(g.cursor);
      if (it == g.support.end()) it = g.support.emplace(g.cursor, lamp_identity(spec)).first;
      lamp_apply(it->second, l.gen.index, l.sign, spec);
      if (lamp_is_identity(it->second)) g.support.erase(it);
    }
  }
  return g;
}

WreathElement normal_form(const Word& w, const GroupSpec& spec) {
  // Phase 1: block decomposition into conjugate (position, lamp letter)
  // pairs; the position of each lamp block is the prefix sum of the
  // translation blocks before it.
  LatticePoint prefix(static_cast<std::size_t>(spec.base_rank), 0);
  std::vector<std::pair<LatticePoint, Letter>> conjugates;
  for (const Letter& l : w.letters) {
    check_letter(l, spec);
    if (l.gen.kind == GenKind::translation) {
      prefix[static_cast<std::size_t>(l.gen.index - 1)] += l.sign;
    } else {
      conjugates.emplace_back(prefix, l);
    }
  }

  // Phase 2: flip colliding positions together and multiply their lamp
  // values; drop entries that merge to the identity.
  WreathElement g = wreath_identity(spec);
  g.cursor = prefix;
  for (const auto& [pos, letter] : conjugates) {
    auto it = g.support.find(pos);
    if (it == g.support.end()) it = g.support.emplace(pos, lamp_identity(spec)).first;
    lamp_apply(it->second, letter.gen.index, letter.sign, spec);
  }
  for (auto it = g.support.begin(); it != g.support.end();) {
    it = lamp_is_identity(it->second) ? g.support.erase(it) : std::next(it);
  }
  return g;
}

WreathElement compose(const WreathElement& g, const WreathElement& h, const GroupSpec& spec) {
  WreathElement r = g;
  for (const auto& [pos, val] : h.support) {
    const LatticePoint shifted = point_add(pos, g.cursor);
    auto it = r.support.find(shifted);
    if (it == r.support.end()) {
      r.support.emplace(shifted, val);
    } else {
      it->second = lamp_mul(it->second, val, spec);
      if (lamp_is_identity(it->second)) r.support.erase(it);
    }
  }
  r.cursor = point_add(g.cursor, h.cursor);
  return r;
}

WalkInstance walk_instance_of(const WreathElement& g, const GroupSpec& spec) {
  WalkInstance inst;
  inst.start = LatticePoint(static_cast<std::size_t>(spec.base_rank), 0);
  inst.end = g.cursor;
  for (const auto& [pos, _] : g.support) inst.targets.push_back(pos);
  return inst;
}

namespace {

WalkSolution solve_walk(const WalkInstance& inst, WalkSolver solver, const GroupSpec& spec,
                        const SolverCaps& caps) {
  switch (solver) {
    case WalkSolver::exact:
      return exact_walk_held_karp(inst, caps);
    case WalkSolver::line_exact:
      if (spec.base_rank != 1) {
        throw std::invalid_argument("line-exact walk solver requires base rank 1");
      }
      return exact_walk_line(inst);
    case WalkSolver::heuristic:
      return approx_walk(inst);
  }
  throw std::logic_error("unknown walk solver");
}

}  // namespace

std::int64_t geodesic_length_wreath(const WreathElement& g, const GroupSpec& spec,
                                    WalkSolver solver, const SolverCaps& caps) {
  std::int64_t lamps = 0;
  for (const auto& [_, val] : g.support) lamps += lamp_geodesic_length(val, spec);
  const WalkSolution walk = solve_walk(walk_instance_of(g, spec), solver, spec, caps);
  return lamps + walk.length;
}

Word geodesic_word_wreath(const WreathElement& g, const GroupSpec& spec, WalkSolver solver,
                          const SolverCaps& caps) {
  const WalkInstance inst = walk_instance_of(g, spec);
  const WalkSolution walk = solve_walk(inst, solver, spec, caps);

  Word out;
  out.reduced = true;
  LatticePoint cur = inst.start;
  auto move_to = [&](const LatticePoint& dst) {
    for (std::size_t ax = 0; ax < cur.size(); ++ax) {
      const Coord delta = dst[ax] - cur[ax];
      const int sign = delta >= 0 ? 1 : -1;
      for (Coord c = 0; c < std::llabs(delta); ++c) {
        out.letters.push_back(
            Letter{Generator{GenKind::translation, static_cast<int>(ax + 1)}, sign});
      }
    }
    cur = dst;
  };

  for (int idx : walk.order) {
    const LatticePoint& stop = inst.targets[static_cast<std::size_t>(idx)];
    move_to(stop);
    const Word lamp = lamp_geodesic_word(g.support.at(stop), spec);
    out.letters.insert(out.letters.end(), lamp.letters.begin(), lamp.letters.end());
  }
  move_to(g.cursor);
  return out;
}

std::vector<std::int64_t> encode_wreath(const WreathElement& g) {
  std::vector<std::int64_t> enc;
  enc.reserve(g.cursor.size() + g.support.size() * 4);
  enc.insert(enc.end(), g.cursor.begin(), g.cursor.end());
  for (const auto& [pos, val] : g.support) {
    enc.insert(enc.end(), pos.begin(), pos.end());
    enc.insert(enc.end(), val.exponents.begin(), val.exponents.end());
  }
  return enc;
}

WreathBall::WreathBall(const GroupSpec& spec, int radius, const SolverCaps& caps)
    : spec_(spec), radius_(radius) {
  std::vector<Letter> moves;
  for (int i = 1; i <= spec.lamp_rank(); ++i) {
    moves.push_back(Letter{Generator{GenKind::lamp, i}, 1});
    moves.push_back(Letter{Generator{GenKind::lamp, i}, -1});
  }
  for (int i = 1; i <= spec.base_rank; ++i) {
    moves.push_back(Letter{Generator{GenKind::translation, i}, 1});
    moves.push_back(Letter{Generator{GenKind::translation, i}, -1});
  }

  std::deque<std::pair<WreathElement, int>> frontier{{wreath_identity(spec), 0}};
  dist_.emplace(encode_wreath(frontier.front().first), 0);
  while (!frontier.empty()) {
    const auto [g, d] = frontier.front();
    frontier.pop_front();
    if (d == radius_) continue;
    for (const Letter& l : moves) {
      WreathElement h = g;
      if (l.gen.kind == GenKind::translation) {
        h.cursor[static_cast<std::size_t>(l.gen.index - 1)] += l.sign;
      } else {
        auto it = h.support.find(h.cursor);
        if (it == h.support.end()) it = h.support.emplace(h.cursor, lamp_identity(spec)).first;
        lamp_apply(it->second, l.gen.index, l.sign, spec);
        if (lamp_is_identity(it->second)) h.support.erase(it);
      }
      auto [slot, inserted] = dist_.emplace(encode_wreath(h), d + 1);
      if (inserted) {
        if (static_cast<long long>(dist_.size()) > caps.bfs_max_states) {
          throw CapExceeded("wreath BFS oracle exceeded the state cap of " +
                            std::to_string(caps.bfs_max_states));
        }
        frontier.emplace_back(std::move(h), d + 1);
      }
    }
  }
}

std::optional<int> WreathBall::distance(const WreathElement& g) const {
  auto it = dist_.find(encode_wreath(g));
  if (it == dist_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> bfs_geodesic_oracle_wreath(const WreathElement& g, const GroupSpec& spec,
                                              int radius, const SolverCaps& caps) {
  return WreathBall(spec, radius, caps).distance(g);
}

}  // namespace metageo
