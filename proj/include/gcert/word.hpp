#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcert {

/// A generator of F_n or its inverse.
struct Letter {
  std::uint16_t generator = 0;
  std::int8_t sign = 1;  // +1 or -1

  constexpr Letter inverse() const noexcept {
    return Letter{generator, static_cast<std::int8_t>(-sign)};
  }
  constexpr bool cancels(Letter other) const noexcept {
    return generator == other.generator && sign == -other.sign;
  }
  friend constexpr bool operator==(Letter, Letter) = default;
  // Generator order first, then the positive letter before its inverse:
  // a < A < b < B < ...
  friend constexpr bool operator<(Letter l, Letter r) noexcept {
    if (l.generator != r.generator) return l.generator < r.generator;
    return l.sign > r.sign;
  }
};

/// Element of the free group of a given rank. Always freely reduced, so two
/// words are equal as group elements iff their letter sequences agree.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t rank) : rank_(rank) {}
  /// Reduces `letters`; throws UnknownGenerator if a letter is out of range.
  Word(std::size_t rank, std::span<const Letter> letters);
  Word(std::size_t rank, std::initializer_list<Letter> letters)
      : Word(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word generator(std::size_t rank, std::size_t index, int sign = 1);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Appends one letter with free cancellation.
  void push_back(Letter l);
  /// Appends a word with free cancellation.
  void append(const Word& w);

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Letter> letters_;
};

/// Shortlex order: shorter first, then lexicographic in the letter order.
bool shortlex_less(const Word& u, const Word& v);

struct RootDecomposition {
  Word root;       // cyclically reduced, not a proper power
  int exponent;    // >= 1
  Word conjugator;
};

Word parse_word(std::string_view text, std::size_t rank);

enum class WordStyle { Auto, Letters, Indexed };
/// Letters style uses a..z / A..Z; indexed style uses 1-based `x3` / `X3`
/// tokens. Auto picks letters when the rank fits in the alphabet. The
/// identity formats as "1".
std::string format_word(const Word& w, WordStyle style = WordStyle::Auto);
std::ostream& operator<<(std::ostream& os, const Word& w);

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// g u g^-1
Word conjugate(const Word& u, const Word& g);
/// u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);
Word power(const Word& u, long long exponent);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

/// Splits u as conjugator * core * conjugator^-1 with core cyclically reduced.
std::pair<Word, Word> cyclic_reduction(const Word& u);

RootDecomposition primitive_root(const Word& u);

/// Generator of the maximal cyclic subgroup containing u, oriented so the
/// cyclic root is the letter-order smaller of root and root^-1.
Word maximal_cyclic_generator(const Word& u);

bool commutes(const Word& u, const Word& v);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace gcert

template <>
struct std::hash<gcert::Word> {
  std::size_t operator()(const gcert::Word& w) const noexcept {
    return gcert::WordHash{}(w);
  }
};
