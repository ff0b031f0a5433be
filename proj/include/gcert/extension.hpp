#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gcert/word.hpp"

namespace gcert {

using Shift = std::vector<std::int64_t>;

inline constexpr std::int64_t kDefaultExponentCap = 64;
/// Substitution refuses to build kernel words longer than this (Overflow).
inline constexpr std::size_t kKernelWordLengthCap = std::size_t{1} << 24;

/// Automorphism of F_n given by generator images, with a verified inverse.
class FreeAutomorphism {
 public:
  /// Throws NotInverse unless both compositions fix every generator.
  static FreeAutomorphism make(std::vector<Word> images, std::vector<Word> inverse_images);
  static FreeAutomorphism identity(std::size_t rank);

  std::size_t rank() const noexcept { return images_.size(); }
  const std::vector<Word>& images() const noexcept { return images_; }
  const std::vector<Word>& inverse_images() const noexcept { return inverse_images_; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  FreeAutomorphism inverse() const;
  /// this o other (apply `other` first).
  FreeAutomorphism compose(const FreeAutomorphism& other) const;

  friend bool operator==(const FreeAutomorphism&, const FreeAutomorphism&) = default;

 private:
  FreeAutomorphism(std::vector<Word> images, std::vector<Word> inverse_images)
      : images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

inline FreeAutomorphism make_automorphism(std::vector<Word> images,
                                          std::vector<Word> inverse_images) {
  return FreeAutomorphism::make(std::move(images), std::move(inverse_images));
}

/// Applies the endomorphism defined by generator images to w.
Word substitute(std::span<const Word> images, const Word& w);

/// Element (w, k) of F_n x|_Phi Z^d.
struct ExtElement {
  Word kernel_word;
  Shift shift;

  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

/// Prints `(word, [k1, ..., kd])`.
std::ostream& operator<<(std::ostream& os, const ExtElement& x);

/// Split extension F_n x|_Phi Z^d for pairwise commuting automorphisms.
class ExtensionGroup {
 public:
  /// Throws NotCommuting if two automorphisms disagree on a generator, or
  /// RankMismatch if an automorphism has the wrong rank.
  ExtensionGroup(std::size_t kernel_rank, std::vector<FreeAutomorphism> auts,
                 std::int64_t exponent_cap = kDefaultExponentCap);

  std::size_t kernel_rank() const noexcept { return kernel_rank_; }
  std::size_t dimension() const noexcept { return auts_.size(); }
  const std::vector<FreeAutomorphism>& automorphisms() const noexcept { return auts_; }
  std::int64_t exponent_cap() const noexcept { return exponent_cap_; }

  /// Phi^k(w) = prod phi_i^{k_i}(w).
  Word apply_power(const Shift& k, const Word& w) const;

  ExtElement identity() const;
  ExtElement kernel_element(Word w) const;
  ExtElement multiply(const ExtElement& x, const ExtElement& y) const;
  ExtElement invert(const ExtElement& x) const;
  ExtElement commutator(const ExtElement& x, const ExtElement& y) const;
  /// g x g^-1
  ExtElement conjugate(const ExtElement& x, const ExtElement& g) const;

  void check_element(const ExtElement& x) const;
  void check_shift(const Shift& k) const;

 private:
  std::size_t kernel_rank_;
  std::vector<FreeAutomorphism> auts_;
  std::int64_t exponent_cap_;
};

Shift project(const ExtElement& x);
bool in_kernel(const ExtElement& x);

/// Memoised generator images of Phi^k. Not thread-safe; one per worker.
class PowerCache {
 public:
  explicit PowerCache(const ExtensionGroup& group) : group_(&group) {}

  const std::vector<Word>& images(const Shift& k);
  Word apply(const Shift& k, const Word& w);

  ExtElement multiply(const ExtElement& x, const ExtElement& y);
  ExtElement invert(const ExtElement& x);

 private:
  const ExtensionGroup* group_;
  std::map<Shift, std::vector<Word>> cache_;
};

struct NamedElement {
  std::string name;
  ExtElement element;

  friend bool operator==(const NamedElement&, const NamedElement&) = default;
};

/// Finite named list of extension elements; names are unique, list nonempty.
class GeneratingSet {
 public:
  explicit GeneratingSet(std::vector<NamedElement> generators);

  std::size_t size() const noexcept { return generators_.size(); }
  const NamedElement& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<NamedElement>& generators() const noexcept { return generators_; }
  std::vector<ExtElement> elements() const;
  /// Indices sorted by name, the deterministic iteration order.
  std::vector<std::size_t> name_order() const;
  /// Index of `name`, or size() when absent.
  std::size_t find(std::string_view name) const;

  friend bool operator==(const GeneratingSet&, const GeneratingSet&) = default;

 private:
  std::vector<NamedElement> generators_;
};

/// Expression over the generators of T: a word in the free group F(T).
/// Formats as space-separated names with `^-1` for inverses.
std::string format_expression(const Word& expr, const GeneratingSet& t);
Word parse_expression(std::string_view text, const GeneratingSet& t);
/// Evaluates an expression in the extension group.
ExtElement evaluate_expression(const ExtensionGroup& group, const GeneratingSet& t,
                               const Word& expr);

/// Realization of F_n x|_Phi Z^d for law evaluation.
class ExtensionRealization {
 public:
  using Element = ExtElement;
  explicit ExtensionRealization(const ExtensionGroup& group) : group_(&group), cache_(group) {}

  ExtElement identity() const { return group_->identity(); }
  ExtElement multiply(const ExtElement& x, const ExtElement& y) const { return cache_.multiply(x, y); }
  ExtElement invert(const ExtElement& x) const { return cache_.invert(x); }

 private:
  const ExtensionGroup* group_;
  mutable PowerCache cache_;
};

}  // namespace gcert

template <>
struct std::hash<gcert::ExtElement> {
  std::size_t operator()(const gcert::ExtElement& x) const noexcept {
    std::size_t h = gcert::WordHash{}(x.kernel_word);
    for (auto k : x.shift) h = h * 1000003u ^ std::hash<std::int64_t>{}(k);
    return h;
  }
};
