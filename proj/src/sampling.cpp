#include "metageo/sampling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace metageo {

std::vector<Letter> all_letters(const Alphabet& alphabet) {
  std::vector<Letter> letters;
  auto add = [&](GenKind kind, int rank) {
    for (int i = 1; i <= rank; ++i) {
      letters.push_back(Letter{Generator{kind, i}, +1});
      letters.push_back(Letter{Generator{kind, i}, -1});
    }
  };
  add(GenKind::lamp, alphabet.lamp_rank);
  add(GenKind::translation, alphabet.translation_rank);
  add(GenKind::metabelian, alphabet.metabelian_rank);
  return letters;
}

Word random_reduced_word(std::mt19937_64& rng, const Alphabet& alphabet, int length) {
  const std::vector<Letter> letters = all_letters(alphabet);
  if (letters.empty()) throw std::invalid_argument("random_reduced_word: empty alphabet");
  Word w;
  w.reduced = true;
  for (int i = 0; i < length; ++i) {
    Letter pick;
    do {
      pick = letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)];
    } while (!w.letters.empty() && pick == letter_inverse(w.letters.back()));
    w.letters.push_back(pick);
  }
  return w;
}

Word random_zero_endpoint_word(std::mt19937_64& rng, int rank, int max_pairs_per_axis) {
  Word w;
  for (int axis = 1; axis <= rank; ++axis) {
    const int pairs = std::uniform_int_distribution<int>(0, max_pairs_per_axis)(rng);
    for (int p = 0; p < pairs; ++p) {
      w.letters.push_back(Letter{Generator{GenKind::metabelian, axis}, +1});
      w.letters.push_back(Letter{Generator{GenKind::metabelian, axis}, -1});
    }
  }
  std::shuffle(w.letters.begin(), w.letters.end(), rng);
  return free_reduce(w);
}

namespace {

void enumerate_rec(const std::vector<Letter>& letters, int remaining, Word& w,
                   const std::function<void(const Word&)>& fn) {
  fn(w);
  if (remaining == 0) return;
  for (const Letter& l : letters) {
    if (!w.letters.empty() && l == letter_inverse(w.letters.back())) continue;
    w.letters.push_back(l);
    enumerate_rec(letters, remaining - 1, w, fn);
    w.letters.pop_back();
  }
}

}  // namespace

void enumerate_reduced_words(const Alphabet& alphabet, int max_length,
                             const std::function<void(const Word&)>& fn) {
  const std::vector<Letter> letters = all_letters(alphabet);
  Word w;
  w.reduced = true;
  enumerate_rec(letters, max_length, w, fn);
}

namespace {

LatticePoint random_point(std::mt19937_64& rng, int dim, Coord lo, Coord hi) {
  LatticePoint p(static_cast<std::size_t>(dim));
  for (auto& c : p) c = std::uniform_int_distribution<Coord>(lo, hi)(rng);
  return p;
}

}  // namespace

WalkInstance random_walk_instance(std::mt19937_64& rng, int dim, int n_targets, Coord lo,
                                  Coord hi) {
  WalkInstance inst;
  inst.start = random_point(rng, dim, lo, hi);
  inst.end = random_point(rng, dim, lo, hi);
  std::set<LatticePoint> targets;
  while (static_cast<int>(targets.size()) < n_targets) {
    targets.insert(random_point(rng, dim, lo, hi));
  }
  inst.targets.assign(targets.begin(), targets.end());
  return inst;
}

SteinerInstance random_steiner_instance(std::mt19937_64& rng, int dim, int n_terminals, Coord lo,
                                        Coord hi) {
  std::set<LatticePoint> terminals;
  while (static_cast<int>(terminals.size()) < n_terminals) {
    terminals.insert(random_point(rng, dim, lo, hi));
  }
  SteinerInstance inst;
  inst.terminals.assign(terminals.begin(), terminals.end());
  return inst;
}

GroupSteinerInstance random_group_instance(std::mt19937_64& rng, int dim, int n_groups,
                                           int group_size, Coord lo, Coord hi) {
  GroupSteinerInstance inst;
  std::set<LatticePoint> taken;
  int attempts = 0;
  while (static_cast<int>(inst.groups.size()) < n_groups) {
    if (++attempts > 1000) {
      throw std::runtime_error("random_group_instance: box too small for the requested groups");
    }
    // Grow a connected cluster by random adjacent extension.
    LatticePoint seed = random_point(rng, dim, lo, hi);
    if (taken.count(seed)) continue;
    std::set<LatticePoint> cluster{seed};
    bool blocked = false;
    while (static_cast<int>(cluster.size()) < group_size && !blocked) {
      std::vector<LatticePoint> candidates;
      for (const LatticePoint& v : cluster) {
        for (int ax = 0; ax < dim; ++ax) {
          for (int d : {-1, 1}) {
            LatticePoint u = v;
            u[static_cast<std::size_t>(ax)] += d;
            if (u[static_cast<std::size_t>(ax)] < lo || u[static_cast<std::size_t>(ax)] > hi)
              continue;
            if (taken.count(u) || cluster.count(u)) continue;
            candidates.push_back(u);
          }
        }
      }
      if (candidates.empty()) {
        blocked = true;
        break;
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      cluster.insert(
          candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]);
    }
    if (blocked) continue;
    // Keep a one-cell moat so groups stay disjoint and non-adjacent merges
    // remain meaningful instances.
    bool touches = false;
    for (const LatticePoint& v : cluster) {
      for (int ax = 0; ax < dim && !touches; ++ax) {
        for (int d : {-1, 1}) {
          LatticePoint u = v;
          u[static_cast<std::size_t>(ax)] += d;
          if (taken.count(u)) touches = true;
        }
      }
    }
    if (touches) continue;
    inst.groups.emplace_back(cluster.begin(), cluster.end());
    taken.insert(cluster.begin(), cluster.end());
  }
  return inst;
}

}  // namespace metageo
