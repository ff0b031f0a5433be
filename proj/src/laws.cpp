#include "gcert/laws.hpp"

#include <algorithm>
#include <numeric>

namespace gcert {

namespace {

// Products of plain word runs and bracketed commutators.
class LawParser {
 public:
  LawParser(std::string_view text, std::size_t rank) : text_(text), rank_(rank) {}

  Word parse() {
    Word w = product();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::MalformedToken, "malformed law '" + std::string(text_) + "' at offset " +
                                               std::to_string(pos_) + ": " + why);
  }

  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  void expect(char c) {
    skip_spaces();
    if (pos_ == text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Word product() {
    Word out(rank_);
    for (;;) {
      skip_spaces();
      if (pos_ == text_.size() || text_[pos_] == ']' || text_[pos_] == ',') return out;
      if (text_[pos_] == '[') {
        ++pos_;
        Word u = product();
        expect(',');
        Word v = product();
        expect(']');
        out = multiply(out, power(commutator(u, v), exponent()));
        continue;
      }
      const std::size_t end = text_.find_first_of("[],", pos_);
      const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
      out = multiply(out, parse_word(text_.substr(pos_, stop - pos_), rank_));
      pos_ = stop;
    }
  }

  long long exponent() {
    if (pos_ == text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    const bool negative = pos_ < text_.size() && text_[pos_] == '-';
    if (negative) ++pos_;
    const std::size_t start = pos_;
    long long e = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 1'000'000) fail("exponent too large");
    }
    if (pos_ == start) fail("expected an exponent");
    return negative ? -e : e;
  }

  std::string_view text_;
  std::size_t rank_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupLaw parse_law(std::string_view text, std::optional<std::size_t> arity) {
  // Parse against a generous rank first to learn the highest variable.
  constexpr std::size_t kMaxArity = 1u << 15;
  Word wide = LawParser(text, kMaxArity).parse();
  std::size_t used = 0;
  for (Letter l : wide.letters()) used = std::max<std::size_t>(used, l.generator + 1u);
  std::size_t m = arity.value_or(std::max<std::size_t>(used, 1));
  if (m < used) {
    throw Error(ErrorCode::ArityMismatch,
                "law mentions x" + std::to_string(used) + " but arity is " +
                    std::to_string(m));
  }
  return GroupLaw(Word(m, wide.letters()));
}

std::string format_law(const GroupLaw& law) {
  return format_word(law.body(), WordStyle::Indexed);
}

GroupLaw commutator_law() {
  return GroupLaw(commutator(Word::generator(2, 0), Word::generator(2, 1)));
}

GroupLaw power_law(std::size_t exponent) {
  return GroupLaw(power(Word::generator(1, 0), static_cast<long long>(exponent)));
}

namespace {

// Substitutes `inner` (over `block` variables) for each letter of `outer`,
// shifting block i to variables [i*block, (i+1)*block).
Word substitute_blocks(const Word& outer, const Word& inner, std::size_t rank) {
  const std::size_t block = inner.rank();
  Word body(rank);
  Word inner_inv = invert(inner);
  for (Letter l : outer.letters()) {
    const Word& piece = l.sign > 0 ? inner : inner_inv;
    for (Letter p : piece.letters()) {
      body.push_back(Letter{static_cast<std::uint16_t>(l.generator * block + p.generator), p.sign});
    }
  }
  return body;
}

std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap, const char* what) {
  if (a != 0 && b > cap / a) {
    throw Error(ErrorCode::Overflow,
                std::string(what) + " exceeds the length cap of " + std::to_string(cap));
  }
  return a * b;
}

}  // namespace

GroupLaw compose_laws(const GroupLaw& outer, const GroupLaw& inner, std::size_t length_cap) {
  checked_mul(outer.length(), inner.length(), length_cap, "composed law");
  const std::size_t arity = outer.arity() * inner.arity();
  if (arity > (1u << 16)) throw Error(ErrorCode::Overflow, "composed law arity too large");
  return GroupLaw(substitute_blocks(outer.body(), inner.body(), arity));
}

GroupLaw finite_index_law(const GroupLaw& w, std::size_t index, std::size_t length_cap) {
  if (index == 0) throw Error(ErrorCode::ArityMismatch, "index must be at least 1");
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= index; ++i) {
    factorial = checked_mul(factorial, i, length_cap, "n!");
  }
  checked_mul(factorial, std::max<std::size_t>(w.length(), 1), length_cap, "finite-index law");
  return compose_laws(w, power_law(factorial), length_cap);
}

GroupLaw commutator_of_laws(const GroupLaw& w) {
  const std::size_t m = w.arity();
  Word left(2 * m, w.body().letters());
  std::vector<Letter> shifted;
  for (Letter l : w.body().letters()) {
    shifted.push_back(Letter{static_cast<std::uint16_t>(l.generator + m), l.sign});
  }
  Word right(2 * m, shifted);
  return GroupLaw(commutator(left, right));
}

GroupLaw nested_commutator_law(std::size_t c, std::size_t length_cap) {
  if (c == 0) throw Error(ErrorCode::ArityMismatch, "derived length must be at least 1");
  GroupLaw law = commutator_law();
  for (std::size_t i = 1; i < c; ++i) {
    checked_mul(law.length(), 4, length_cap, "nested commutator law");
    law = commutator_of_laws(law);
  }
  return law;
}

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || hit[x]) {
      throw Error(ErrorCode::MalformedToken, "not a permutation");
    }
    hit[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint8_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<std::uint8_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  for (const auto& cycle : cycles) {
    std::vector<int> c(cycle);
    for (std::size_t i = 0; i < c.size(); ++i) {
      images.at(static_cast<std::size_t>(c[i])) = static_cast<std::uint8_t>(c[(i + 1) % c.size()]);
    }
  }
  return Permutation(std::move(images));
}

PermutationRealization::PermutationRealization(std::size_t degree) : degree(degree) {
  if (degree > kMaxPermutationDegree) {
    throw Error(ErrorCode::Overflow, "permutation realization supports at most 8 points");
  }
}

Permutation PermutationRealization::multiply(const Permutation& p, const Permutation& q) const {
  std::vector<std::uint8_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = p(q(i));
  return Permutation(std::move(images));
}

Permutation PermutationRealization::invert(const Permutation& p) const {
  std::vector<std::uint8_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[p(i)] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(images));
}

std::vector<Permutation> symmetric_group(std::size_t degree) {
  std::vector<std::uint8_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  std::vector<Permutation> all;
  do {
    all.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return all;
}

namespace detail {

std::optional<CommutatorSplit> split_commutator(const GroupLaw& law) {
  const Word& body = law.body();
  const std::size_t n = body.size();
  if (n < 4 || n % 2 != 0) return std::nullopt;
  auto letters = body.letters();
  for (std::size_t lu = 1; lu < n / 2; ++lu) {
    const std::size_t lv = n / 2 - lu;
    std::size_t k = 0;
    for (std::size_t i = 0; i < lu; ++i) k = std::max<std::size_t>(k, letters[i].generator + 1u);
    bool ok = k < law.arity();
    for (std::size_t i = lu; ok && i < lu + lv; ++i) ok = letters[i].generator >= k;
    if (!ok) continue;
    // Remaining half must be U^-1 V^-1.
    for (std::size_t i = 0; ok && i < lu; ++i) {
      ok = letters[lu + lv + i] == letters[lu - 1 - i].inverse();
    }
    for (std::size_t i = 0; ok && i < lv; ++i) {
      ok = letters[2 * lu + lv + i] == letters[lu + lv - 1 - i].inverse();
    }
    if (!ok) continue;
    Word left(k, letters.subspan(0, lu));
    std::vector<Letter> shifted;
    for (std::size_t i = lu; i < lu + lv; ++i) {
      shifted.push_back(Letter{static_cast<std::uint16_t>(letters[i].generator - k), letters[i].sign});
    }
    Word right(law.arity() - k, shifted);
    return CommutatorSplit{k, std::move(left), std::move(right)};
  }
  return std::nullopt;
}

}  // namespace detail

}  // namespace gcert
