#include "gcert/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>

#include "gcert/error.hpp"

namespace gcert {

namespace {

void require_same_rank(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    throw Error(ErrorCode::RankMismatch,
                "rank mismatch: " + std::to_string(u.rank()) + " vs " +
                    std::to_string(v.rank()));
  }
}

void check_letter(std::size_t rank, Letter l) {
  if (l.generator >= rank) {
    throw Error(ErrorCode::UnknownGenerator,
                "generator index " + std::to_string(l.generator) +
                    " out of range for rank " + std::to_string(rank));
  }
  if (l.sign != 1 && l.sign != -1) {
    throw Error(ErrorCode::MalformedToken, "letter sign must be +1 or -1");
  }
}

}  // namespace

Word::Word(std::size_t rank, std::span<const Letter> letters) : rank_(rank) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    check_letter(rank, l);
    push_back(l);
  }
}

Word Word::generator(std::size_t rank, std::size_t index, int sign) {
  Letter l{static_cast<std::uint16_t>(index), static_cast<std::int8_t>(sign)};
  check_letter(rank, l);
  Word w(rank);
  w.letters_.push_back(l);
  return w;
}

void Word::push_back(Letter l) {
  if (!letters_.empty() && letters_.back().cancels(l)) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

void Word::append(const Word& w) {
  require_same_rank(*this, w);
  for (Letter l : w.letters_) push_back(l);
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  auto lu = u.letters();
  auto lv = v.letters();
  return std::lexicographical_compare(lu.begin(), lu.end(), lv.begin(),
                                      lv.end());
}

Word parse_word(std::string_view text, std::size_t rank) {
  Word out(rank);
  std::size_t i = 0;
  auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::MalformedToken,
                 "malformed word '" + std::string(text) + "' at offset " +
                     std::to_string(i) + ": " + why);
  };
  auto read_number = [&](std::size_t& pos) -> long long {
    std::size_t start = pos;
    long long value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > std::numeric_limits<int>::max()) throw malformed("number too large");
      ++pos;
    }
    if (pos == start) throw malformed("expected digits");
    return value;
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '1') {
      // Identity token; only valid as a standalone token.
      bool alone_before = i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1]));
      bool alone_after = i + 1 == text.size() ||
                         std::isspace(static_cast<unsigned char>(text[i + 1]));
      if (!alone_before || !alone_after) throw malformed("stray digit");
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw malformed(std::string("unexpected character '") + c + "'");
    }
    int sign = std::islower(static_cast<unsigned char>(c)) ? 1 : -1;
    std::size_t index = 0;
    std::size_t pos = i + 1;
    if ((c == 'x' || c == 'X') && pos < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos]))) {
      long long k = read_number(pos);
      if (k == 0) throw malformed("indexed generators start at x1");
      index = static_cast<std::size_t>(k - 1);
    } else {
      index = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(c)) - 'a');
    }
    long long exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool negative = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
      }
      exponent = read_number(pos);
      if (negative) exponent = -exponent;
    }
    if (index >= rank) {
      throw Error(ErrorCode::UnknownGenerator,
                  "unknown generator '" + std::string(text.substr(i, pos - i)) +
                      "' for rank " + std::to_string(rank));
    }
    if (exponent < 0) {
      sign = -sign;
      exponent = -exponent;
    }
    Letter l{static_cast<std::uint16_t>(index), static_cast<std::int8_t>(sign)};
    for (long long e = 0; e < exponent; ++e) out.push_back(l);
    i = pos;
  }
  return out;
}

std::string format_word(const Word& w, WordStyle style) {
  if (w.empty()) return "1";
  if (style == WordStyle::Auto) {
    style = w.rank() <= 26 ? WordStyle::Letters : WordStyle::Indexed;
  }
  std::string out;
  for (Letter l : w.letters()) {
    if (style == WordStyle::Letters) {
      if (l.generator >= 26) {
        throw Error(ErrorCode::UnknownGenerator,
                    "generator index beyond the letter alphabet");
      }
      char c = static_cast<char>('a' + l.generator);
      out.push_back(l.sign > 0 ? c : static_cast<char>(std::toupper(c)));
    } else {
      if (!out.empty()) out.push_back(' ');
      out.push_back(l.sign > 0 ? 'x' : 'X');
      out += std::to_string(l.generator + 1);
    }
  }
  return out;
}

Word multiply(const Word& u, const Word& v) {
  require_same_rank(u, v);
  Word out = u;
  out.append(v);
  return out;
}

Word invert(const Word& u) {
  std::vector<Letter> inv;
  inv.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) {
    inv.push_back(it->inverse());
  }
  return Word(u.rank(), inv);
}

Word conjugate(const Word& u, const Word& g) {
  require_same_rank(u, g);
  Word out = g;
  out.append(u);
  out.append(invert(g));
  return out;
}

Word commutator(const Word& u, const Word& v) {
  require_same_rank(u, v);
  Word out = u;
  out.append(v);
  out.append(invert(u));
  out.append(invert(v));
  return out;
}

Word power(const Word& u, long long exponent) {
  Word base = exponent < 0 ? invert(u) : u;
  if (exponent < 0) exponent = -exponent;
  Word out(u.rank());
  for (long long e = 0; e < exponent; ++e) out.append(base);
  return out;
}

std::pair<Word, Word> cyclic_reduction(const Word& u) {
  auto letters = u.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  Word conjugator(u.rank(), letters.subspan(0, lo));
  Word core(u.rank(), letters.subspan(lo, hi - lo));
  return {std::move(conjugator), std::move(core)};
}

RootDecomposition primitive_root(const Word& u) {
  if (u.empty()) {
    throw Error(ErrorCode::IdentityHasNoRoot,
                "the identity has no primitive root");
  }
  auto [conjugator, core] = cyclic_reduction(u);
  auto letters = core.letters();
  const std::size_t n = letters.size();
  // A cyclically reduced word is a proper power r^e iff it has a period p
  // dividing its length; the smallest such p gives the primitive root.
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) {
      periodic = letters[i] == letters[i - p];
    }
    if (periodic) {
      return RootDecomposition{Word(u.rank(), letters.subspan(0, p)),
                               static_cast<int>(n / p), std::move(conjugator)};
    }
  }
  return RootDecomposition{core, 1, std::move(conjugator)};  // unreachable
}

Word maximal_cyclic_generator(const Word& u) {
  RootDecomposition d = primitive_root(u);
  Word inv = invert(d.root);
  // Compare the two orientations as cyclic words via their least rotations.
  auto least_rotation = [](const Word& w) {
    auto l = w.letters();
    std::vector<Letter> best(l.begin(), l.end());
    for (std::size_t s = 1; s < l.size(); ++s) {
      std::vector<Letter> rot(l.begin() + static_cast<std::ptrdiff_t>(s), l.end());
      rot.insert(rot.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(s));
      if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end())) {
        best = std::move(rot);
      }
    }
    return best;
  };
  auto r1 = least_rotation(d.root);
  auto r2 = least_rotation(inv);
  const Word& chosen =
      std::lexicographical_compare(r2.begin(), r2.end(), r1.begin(), r1.end())
          ? inv
          : d.root;
  return conjugate(chosen, d.conjugator);
}

bool commutes(const Word& u, const Word& v) { return commutator(u, v).empty(); }

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Letter l : w.letters()) {
    std::uint64_t code = (static_cast<std::uint64_t>(l.generator) << 1) |
                         (l.sign < 0 ? 1U : 0U);
    h ^= code + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << format_word(w); }

}  // namespace gcert
