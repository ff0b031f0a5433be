#pragma once

// Property runs shared by the unit tests and the acceptance binary.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "gcert/stallings.hpp"

namespace gcert::testing {

/// Permutation action of F_rank in which <g> fixes point 0 and w's path from
/// 0 is fully defined; used as a non-membership witness.
std::vector<std::vector<std::size_t>> completed_action(const SubgroupGraph& g, const Word& w);

struct MembershipStats {
  std::size_t queries = 0;
  std::size_t agreements = 0;
  std::size_t deep_members = 0;  // members needing the Nielsen-shortened search
  std::vector<std::string> disagreements;
};

/// contains() on every word of length <= 5 in F_2 against witnessed answers,
/// for `subgroups` random 2-generator subgroups with generators of length
/// <= 4.
MembershipStats membership_agreement(std::uint64_t seed, std::size_t subgroups);

struct FixedPowerStats {
  std::size_t trials = 0;
  std::size_t premise_hits = 0;
  std::vector<std::string> violations;
};

/// Trials of: phi(w^k) = w^l implies phi(w) = w^{+-1}, for phi a product of
/// at most 10 Nielsen moves, |w| <= 6 and 1 <= |k|, |l| <= 3.
FixedPowerStats fixed_power_trials(std::uint64_t seed, std::size_t trials);

struct CensusComparison {
  std::string label;
  std::vector<std::uint64_t> library;
  std::vector<std::uint64_t> oracle;
};

/// enumerate_ball against the naive string oracle on `count` instances with
/// kernel rank <= 2, d <= 1, |T| <= 3.
std::vector<CensusComparison> census_oracle_comparisons(std::uint64_t seed, std::size_t count,
                                                        std::size_t radius);

}  // namespace gcert::testing
