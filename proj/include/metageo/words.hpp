#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace metageo {

/// Which family a generator belongs to. The text names are fixed:
/// `x` for metabelian generators, `a` for lamp generators, `b` for
/// translation generators.
enum class GenKind { lamp, translation, metabelian };

char kind_name(GenKind k);

struct Generator {
  GenKind kind = GenKind::metabelian;
  int index = 1;  // 1-based

  auto operator<=>(const Generator&) const = default;
};

struct Letter {
  Generator gen;
  int sign = 1;  // +1 or -1

  auto operator<=>(const Letter&) const = default;
};

Letter letter_inverse(const Letter& l);

/// A word over the signed generator alphabet. `reduced` records whether the
/// sequence is known to be freely reduced; equality ignores the flag.
struct Word {
  std::vector<Letter> letters;
  bool reduced = false;

  bool operator==(const Word& o) const { return letters == o.letters; }
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

/// Valid generator names and their ranks. Rank 0 disables a kind.
struct Alphabet {
  int lamp_rank = 0;
  int translation_rank = 0;
  int metabelian_rank = 0;

  static Alphabet metabelian(int rank);
  int rank_of(GenKind k) const;
};

/// Parses whitespace-separated tokens of the form NAMEINDEX or NAMEINDEX^-1,
/// e.g. "x1 b2^-1". Throws ParseError with the offending 1-based token
/// position on unknown names, index 0, index beyond the alphabet's rank, or
/// malformed exponents. The result keeps the input letter order, unreduced.
Word parse_word(const std::string& text, const Alphabet& alphabet);

/// The unique freely reduced word equal to `w` in the free group.
Word free_reduce(const Word& w);

/// Reversed sequence with flipped signs; concat(w, invert(w)) reduces to the
/// empty word.
Word invert(const Word& w);

/// Juxtaposition followed by free reduction. Throws std::invalid_argument if
/// one word uses metabelian letters and the other lamp/translation letters.
Word concat(const Word& u, const Word& v);

/// Inverse of parse_word: parse_word(format_word(w), alphabet) == w.
std::string format_word(const Word& w);

}  // namespace metageo
