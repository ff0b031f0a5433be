#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcert/certify.hpp"
#include "gcert/extension.hpp"

namespace gcert {

/// Exact ball sizes B_0..B_R of <T> in the word metric of T.
struct BallCensus {
  std::size_t radius = 0;  // requested radius
  std::vector<std::uint64_t> counts;  // B_0 .. B_{reached}
  /// Set when the element cap stopped enumeration; counts then cover only
  /// the fully completed radii.
  bool truncated = false;

  std::size_t reached_radius() const { return counts.empty() ? 0 : counts.size() - 1; }
  friend bool operator==(const BallCensus&, const BallCensus&) = default;
};

struct GrowthEstimate {
  std::vector<double> upper_sequence;  // ln(B_n)/n, n = 1..R
  std::optional<double> lower_bound;   // ln(3)/N from a free basis
};

/// Breadth-first closure under right multiplication by T and T^-1, keyed by
/// the normal form (kernel word, shift). Never throws on the cap: a truncated
/// census is returned instead.
BallCensus enumerate_ball(const ExtensionGroup& group, const GeneratingSet& t,
                          std::size_t radius, std::size_t element_cap = kDefaultElementCap);

/// Throws ElementCapExceeded when the census is truncated.
GrowthEstimate entropy_bounds(const ExtensionGroup& group, const GeneratingSet& t,
                              std::size_t radius, const std::optional<Verdict>& verdict,
                              std::size_t element_cap = kDefaultElementCap);
GrowthEstimate entropy_bounds(const BallCensus& census, const std::optional<Verdict>& verdict);

struct Violation {
  std::size_t m;
  std::size_t n;
  friend bool operator==(const Violation&, const Violation&) = default;
};
using SubadditivityResult = std::variant<Holds, Violation>;

/// Checks B_{m+n} <= B_m * B_n for all m, n >= 1 with m + n within range.
SubadditivityResult subadditivity_check(const BallCensus& census);

/// `n,B_n,ln(B_n)/n` rows; the n = 0 row leaves the last field empty.
std::string census_csv(const BallCensus& census);

}  // namespace gcert
