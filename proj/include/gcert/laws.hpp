#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gcert/error.hpp"
#include "gcert/word.hpp"

namespace gcert {

inline constexpr std::size_t kDefaultLawLengthCap = 1'000'000;
inline constexpr std::size_t kDefaultElementCap = 10'000'000;

/// A word in abstract variables x1..xm. The body is a reduced word of rank
/// `arity`, so letter generator i stands for variable x_{i+1}.
class GroupLaw {
 public:
  GroupLaw() : GroupLaw(Word(1)) {}
  explicit GroupLaw(Word body) : body_(std::move(body)) {}

  std::size_t arity() const noexcept { return body_.rank(); }
  const Word& body() const noexcept { return body_; }
  std::size_t length() const noexcept { return body_.size(); }
  /// A body that reduced to the identity is satisfied by every group, so it
  /// certifies nothing.
  bool is_degenerate() const noexcept { return body_.empty(); }

  friend bool operator==(const GroupLaw&, const GroupLaw&) = default;

 private:
  Word body_;
};

/// Parses `x1 x2 X1 X2`-style text, optionally with commutator brackets
/// `[u, v]` (= u v u^-1 v^-1), which nest and take a `^k` suffix. The arity
/// is the largest variable index used unless `arity` is given (it must
/// cover every variable).
GroupLaw parse_law(std::string_view text, std::optional<std::size_t> arity = std::nullopt);
std::string format_law(const GroupLaw& law);

GroupLaw commutator_law();
/// x1^k
GroupLaw power_law(std::size_t exponent);

/// w_K o w_Q: variable j of block i (both 0-based) is x_{i*m + j + 1}.
GroupLaw compose_laws(const GroupLaw& outer, const GroupLaw& inner,
                      std::size_t length_cap = kDefaultLawLengthCap);
/// w o x1^{n!}
GroupLaw finite_index_law(const GroupLaw& w, std::size_t index,
                          std::size_t length_cap = kDefaultLawLengthCap);
/// [w(x1..xm), w(x_{m+1}..x_{2m})]
GroupLaw commutator_of_laws(const GroupLaw& w);
/// The derived-length-c law on 2^c variables.
GroupLaw nested_commutator_law(std::size_t c,
                               std::size_t length_cap = kDefaultLawLengthCap);

/// Group operations needed to evaluate laws. Elements must be hashable so
/// balls can be deduplicated.
template <typename R>
concept GroupRealization = requires(const R& r, const typename R::Element& e) {
  typename R::Element;
  { r.identity() } -> std::convertible_to<typename R::Element>;
  { r.multiply(e, e) } -> std::convertible_to<typename R::Element>;
  { r.invert(e) } -> std::convertible_to<typename R::Element>;
  { e == e } -> std::convertible_to<bool>;
  { std::hash<typename R::Element>{}(e) } -> std::convertible_to<std::size_t>;
};

template <GroupRealization R>
typename R::Element eval_law(const GroupLaw& law,
                             std::span<const typename R::Element> tuple,
                             const R& realization) {
  if (tuple.size() != law.arity()) {
    throw Error(ErrorCode::ArityMismatch,
                "law of arity " + std::to_string(law.arity()) + " applied to " +
                    std::to_string(tuple.size()) + " elements");
  }
  using Element = typename R::Element;
  std::vector<std::optional<Element>> inverses(tuple.size());
  Element acc = realization.identity();
  for (Letter l : law.body().letters()) {
    if (l.sign > 0) {
      acc = realization.multiply(acc, tuple[l.generator]);
    } else {
      auto& inv = inverses[l.generator];
      if (!inv) inv = realization.invert(tuple[l.generator]);
      acc = realization.multiply(acc, *inv);
    }
  }
  return acc;
}

/// Free group F_n on words.
struct FreeGroupRealization {
  using Element = Word;
  std::size_t rank;
  Word identity() const { return Word(rank); }
  Word multiply(const Word& u, const Word& v) const { return gcert::multiply(u, v); }
  Word invert(const Word& u) const { return gcert::invert(u); }
};

/// Permutation of {0, .., degree-1}; composition applies the right factor
/// first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> images);
  static Permutation identity(std::size_t degree);
  /// Cycle notation over 0-based points, e.g. {{0, 1, 2}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<int>> cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint8_t operator()(std::size_t point) const { return images_[point]; }
  std::span<const std::uint8_t> images() const noexcept { return images_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> images_;
};

inline constexpr std::size_t kMaxPermutationDegree = 8;

struct PermutationRealization {
  using Element = Permutation;
  std::size_t degree;
  explicit PermutationRealization(std::size_t degree);
  Permutation identity() const { return Permutation::identity(degree); }
  Permutation multiply(const Permutation& p, const Permutation& q) const;
  Permutation invert(const Permutation& p) const;
};

std::vector<Permutation> symmetric_group(std::size_t degree);

/// Breadth-first ball of radius `radius` in the subgroup generated by
/// `generators`, in deterministic discovery order (identity first).
template <GroupRealization R>
std::vector<typename R::Element> enumerate_elements(
    const R& realization, std::span<const typename R::Element> generators,
    std::size_t radius, std::size_t element_cap = kDefaultElementCap) {
  using Element = typename R::Element;
  std::vector<Element> steps;
  for (const Element& g : generators) {
    steps.push_back(g);
    steps.push_back(realization.invert(g));
  }
  std::vector<Element> ball{realization.identity()};
  std::unordered_map<Element, std::size_t> seen{{ball.front(), 0}};
  std::size_t shell_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    std::size_t shell_end = ball.size();
    for (std::size_t i = shell_begin; i < shell_end; ++i) {
      for (const Element& s : steps) {
        Element next = realization.multiply(ball[i], s);
        if (seen.contains(next)) continue;
        if (ball.size() >= element_cap) {
          throw Error(ErrorCode::ElementCapExceeded,
                      "ball exceeds " + std::to_string(element_cap) +
                          " elements at radius " + std::to_string(r + 1));
        }
        seen.emplace(next, ball.size());
        ball.push_back(std::move(next));
      }
    }
    if (shell_end == ball.size()) break;
    shell_begin = shell_end;
  }
  return ball;
}

struct Holds {
  friend bool operator==(const Holds&, const Holds&) = default;
};
template <typename Element>
struct Counterexample {
  std::vector<Element> tuple;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};
template <typename Element>
using LawCheck = std::variant<Holds, Counterexample<Element>>;

namespace detail {

// Positions of a law body of the form U V U^-1 V^-1 where U mentions exactly
// the variables [0, k) and V only variables in [k, arity).
struct CommutatorSplit {
  std::size_t split_variable;
  Word left;   // over variables [0, k), rank k
  Word right;  // over variables [k, arity), shifted to rank arity - k
};
std::optional<CommutatorSplit> split_commutator(const GroupLaw& law);

// Law values over all tuples from `ball`, deduplicated, each tagged with the
// lexicographically first tuple (as ball indices) attaining it.
template <GroupRealization R>
struct ValueTable {
  std::vector<typename R::Element> values;
  std::vector<std::vector<std::size_t>> first_tuple;
};

template <GroupRealization R>
ValueTable<R> law_values(const GroupLaw& law, std::span<const typename R::Element> ball,
                         const R& realization) {
  using Element = typename R::Element;
  ValueTable<R> table;
  if (law.arity() == 0 || ball.empty()) return table;
  if (auto split = split_commutator(law)) {
    auto left = law_values(GroupLaw(split->left), ball, realization);
    auto right = law_values(GroupLaw(split->right), ball, realization);
    std::unordered_map<Element, std::size_t> index;
    for (std::size_t i = 0; i < left.values.size(); ++i) {
      Element li = realization.invert(left.values[i]);
      for (std::size_t j = 0; j < right.values.size(); ++j) {
        Element v = realization.multiply(
            realization.multiply(left.values[i], right.values[j]),
            realization.multiply(li, realization.invert(right.values[j])));
        if (index.contains(v)) continue;
        // Values are visited in order of their first tuple: the first tuple
        // of (i, j) is left.first_tuple[i] ++ right.first_tuple[j], and the
        // lexicographic minimum over equal values is reached by the smallest
        // (i, j) pair in this loop order.
        std::vector<std::size_t> tuple = left.first_tuple[i];
        tuple.insert(tuple.end(), right.first_tuple[j].begin(), right.first_tuple[j].end());
        index.emplace(v, table.values.size());
        table.values.push_back(std::move(v));
        table.first_tuple.push_back(std::move(tuple));
      }
    }
    return table;
  }
  std::unordered_map<Element, std::size_t> index;
  std::vector<std::size_t> odometer(law.arity(), 0);
  std::vector<Element> tuple(law.arity(), ball.front());
  while (true) {
    for (std::size_t k = 0; k < odometer.size(); ++k) tuple[k] = ball[odometer[k]];
    Element v = eval_law(law, std::span<const Element>(tuple), realization);
    if (!index.contains(v)) {
      index.emplace(v, table.values.size());
      table.values.push_back(std::move(v));
      table.first_tuple.push_back(odometer);
    }
    std::size_t k = odometer.size();
    while (k > 0) {
      --k;
      if (++odometer[k] < ball.size()) break;
      odometer[k] = 0;
      if (k == 0) return table;
    }
    if (odometer.empty()) return table;
  }
}

}  // namespace detail

/// Evaluates `law` on every tuple drawn from the ball of the given radius
/// and reports the lexicographically first violating tuple.
///
/// Commutator-shaped laws [U, V] with U and V on disjoint variable blocks are
/// checked through the value sets of U and V, which is equivalent to the
/// exhaustive tuple scan but costs |values(U)| * |values(V)| evaluations.
template <GroupRealization R>
LawCheck<typename R::Element> check_law_on_ball(
    const R& realization, std::span<const typename R::Element> generators,
    const GroupLaw& law, std::size_t radius,
    std::size_t element_cap = kDefaultElementCap) {
  using Element = typename R::Element;
  if (law.is_degenerate()) return Holds{};
  std::vector<Element> ball = enumerate_elements(realization, generators, radius, element_cap);
  const Element id = realization.identity();
  auto to_elements = [&](const std::vector<std::size_t>& idx) {
    std::vector<Element> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(ball[i]);
    return out;
  };
  if (auto split = detail::split_commutator(law)) {
    auto left = detail::law_values(GroupLaw(split->left), std::span<const Element>(ball), realization);
    auto right = detail::law_values(GroupLaw(split->right), std::span<const Element>(ball), realization);
    for (std::size_t i = 0; i < left.values.size(); ++i) {
      for (std::size_t j = 0; j < right.values.size(); ++j) {
        const Element& u = left.values[i];
        const Element& v = right.values[j];
        if (realization.multiply(u, v) == realization.multiply(v, u)) continue;
        std::vector<std::size_t> tuple = left.first_tuple[i];
        tuple.insert(tuple.end(), right.first_tuple[j].begin(), right.first_tuple[j].end());
        return Counterexample<Element>{to_elements(tuple)};
      }
    }
    return Holds{};
  }
  auto table = detail::law_values(law, std::span<const Element>(ball), realization);
  // The first non-identity value in first-tuple order carries the minimal
  // violating tuple.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    if (table.values[i] == id) continue;
    if (!best || table.first_tuple[i] < table.first_tuple[*best]) best = i;
  }
  if (!best) return Holds{};
  return Counterexample<Element>{to_elements(table.first_tuple[*best])};
}

}  // namespace gcert

template <>
struct std::hash<gcert::Permutation> {
  std::size_t operator()(const gcert::Permutation& p) const noexcept {
    std::size_t h = 0;
    for (auto x : p.images()) h = h * 131 + x;
    return h;
  }
};
