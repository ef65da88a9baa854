#include "metageo/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "metageo/errors.hpp"

namespace metageo {

char kind_name(GenKind k) {
  switch (k) {
    case GenKind::lamp: return 'a';
    case GenKind::translation: return 'b';
    case GenKind::metabelian: return 'x';
  }
  return '?';
}

Letter letter_inverse(const Letter& l) { return Letter{l.gen, -l.sign}; }

Alphabet Alphabet::metabelian(int rank) {
  Alphabet a;
  a.metabelian_rank = rank;
  return a;
}

int Alphabet::rank_of(GenKind k) const {
  switch (k) {
    case GenKind::lamp: return lamp_rank;
    case GenKind::translation: return translation_rank;
    case GenKind::metabelian: return metabelian_rank;
  }
  return 0;
}

namespace {

GenKind kind_of_name(char c, std::size_t pos) {
  switch (c) {
    case 'a': return GenKind::lamp;
    case 'b': return GenKind::translation;
    case 'x': return GenKind::metabelian;
    default:
      throw ParseError(std::string("unknown generator name '") + c + "'", pos);
  }
}

Letter parse_token(const std::string& tok, const Alphabet& alphabet, std::size_t pos) {
  GenKind kind = kind_of_name(tok[0], pos);
  if (alphabet.rank_of(kind) == 0) {
    throw ParseError(std::string("generator name '") + tok[0] +
                         "' is not part of this alphabet",
                     pos);
  }
  std::size_t i = 1;
  std::size_t digits_begin = i;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
  if (i == digits_begin) {
    throw ParseError("missing generator index in '" + tok + "'", pos);
  }
  if (i - digits_begin > 9) {
    throw ParseError("generator index out of range in '" + tok + "'", pos);
  }
  int index = std::stoi(tok.substr(digits_begin, i - digits_begin));
  if (index == 0) {
    throw ParseError("generator index 0 is invalid in '" + tok + "'", pos);
  }
  if (index > alphabet.rank_of(kind)) {
    throw ParseError("generator index " + std::to_string(index) +
                         " exceeds rank " + std::to_string(alphabet.rank_of(kind)) +
                         " in '" + tok + "'",
                     pos);
  }
  int sign = 1;
  if (i < tok.size()) {
    if (tok.substr(i) != "^-1") {
      throw ParseError("malformed exponent in '" + tok + "' (only ^-1 is allowed)", pos);
    }
    sign = -1;
  }
  return Letter{Generator{kind, index}, sign};
}

}  // namespace

Word parse_word(const std::string& text, const Alphabet& alphabet) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  std::size_t pos = 0;
  while (in >> tok) {
    ++pos;
    w.letters.push_back(parse_token(tok, alphabet, pos));
  }
  w.reduced = false;
  return w;
}

Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == letter_inverse(l)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  out.reduced = true;
  return out;
}

Word invert(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(letter_inverse(*it));
  }
  out.reduced = w.reduced;
  return out;
}

namespace {

bool uses_metabelian(const Word& w) {
  for (const Letter& l : w.letters)
    if (l.gen.kind == GenKind::metabelian) return true;
  return false;
}

bool uses_wreath(const Word& w) {
  for (const Letter& l : w.letters)
    if (l.gen.kind != GenKind::metabelian) return true;
  return false;
}

}  // namespace

Word concat(const Word& u, const Word& v) {
  if ((uses_metabelian(u) && uses_wreath(v)) || (uses_wreath(u) && uses_metabelian(v))) {
    throw std::invalid_argument("concat: alphabet mismatch (metabelian vs wreath letters)");
  }
  Word joined;
  joined.letters.reserve(u.letters.size() + v.letters.size());
  joined.letters.insert(joined.letters.end(), u.letters.begin(), u.letters.end());
  joined.letters.insert(joined.letters.end(), v.letters.begin(), v.letters.end());
  return free_reduce(joined);
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << ' ';
    const Letter& l = w.letters[i];
    os << kind_name(l.gen.kind) << l.gen.index;
    if (l.sign < 0) os << "^-1";
  }
  return os.str();
}

}  // namespace metageo
