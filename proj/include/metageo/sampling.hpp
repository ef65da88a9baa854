#pragma once

#include <functional>
#include <random>
#include <vector>

#include "metageo/lattice.hpp"
#include "metageo/lattice_tsp.hpp"
#include "metageo/steiner.hpp"
#include "metageo/words.hpp"

namespace metageo {

/// All signed letters of an alphabet, in a fixed deterministic order.
std::vector<Letter> all_letters(const Alphabet& alphabet);

/// Uniform freely reduced word of exactly `length` letters.
Word random_reduced_word(std::mt19937_64& rng, const Alphabet& alphabet, int length);

/// Random metabelian word whose image in Z^rank is the origin (balanced
/// letter multiset, shuffled, then freely reduced).
Word random_zero_endpoint_word(std::mt19937_64& rng, int rank, int max_pairs_per_axis);

/// Calls `fn` for every freely reduced word of length <= max_length,
/// including the empty word, in length-lexicographic order.
void enumerate_reduced_words(const Alphabet& alphabet, int max_length,
                             const std::function<void(const Word&)>& fn);

/// Walk instance with distinct targets drawn from [lo, hi]^dim.
WalkInstance random_walk_instance(std::mt19937_64& rng, int dim, int n_targets, Coord lo,
                                  Coord hi);

/// Distinct terminals drawn from [lo, hi]^dim.
SteinerInstance random_steiner_instance(std::mt19937_64& rng, int dim, int n_terminals, Coord lo,
                                        Coord hi);

/// Pairwise-disjoint connected vertex groups grown inside [lo, hi]^dim.
GroupSteinerInstance random_group_instance(std::mt19937_64& rng, int dim, int n_groups,
                                           int group_size, Coord lo, Coord hi);

}  // namespace metageo
