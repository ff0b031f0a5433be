#include "gcert/growth.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "gcert/error.hpp"

namespace gcert {

BallCensus enumerate_ball(const ExtensionGroup& group, const GeneratingSet& t,
                          std::size_t radius, std::size_t element_cap) {
  PowerCache cache(group);
  std::vector<ExtElement> steps;
  for (const auto& g : t.generators()) {
    group.check_element(g.element);
    steps.push_back(g.element);
    steps.push_back(cache.invert(g.element));
  }

  BallCensus census;
  census.radius = radius;
  census.counts.push_back(1);
  std::unordered_set<ExtElement> seen{group.identity()};
  std::vector<ExtElement> shell{group.identity()};
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<ExtElement> next;
    for (const ExtElement& x : shell) {
      for (const ExtElement& s : steps) {
        ExtElement y = cache.multiply(x, s);
        if (seen.contains(y)) continue;
        if (seen.size() >= element_cap) {
          census.truncated = true;
          return census;
        }
        seen.insert(y);
        next.push_back(std::move(y));
      }
    }
    census.counts.push_back(census.counts.back() + next.size());
    shell = std::move(next);
  }
  return census;
}

GrowthEstimate entropy_bounds(const BallCensus& census, const std::optional<Verdict>& verdict) {
  if (census.truncated) {
    throw Error(ErrorCode::ElementCapExceeded,
                "census truncated after radius " + std::to_string(census.reached_radius()));
  }
  GrowthEstimate estimate;
  for (std::size_t n = 1; n < census.counts.size(); ++n) {
    estimate.upper_sequence.push_back(std::log(static_cast<double>(census.counts[n])) /
                                      static_cast<double>(n));
  }
  if (verdict) {
    if (const auto* fb = std::get_if<FreeBasis>(&*verdict)) {
      estimate.lower_bound = entropy_lower_bound(fb->max_t_length());
    }
  }
  return estimate;
}

GrowthEstimate entropy_bounds(const ExtensionGroup& group, const GeneratingSet& t,
                              std::size_t radius, const std::optional<Verdict>& verdict,
                              std::size_t element_cap) {
  return entropy_bounds(enumerate_ball(group, t, radius, element_cap), verdict);
}

SubadditivityResult subadditivity_check(const BallCensus& census) {
  const auto& b = census.counts;
  for (std::size_t total = 2; total < b.size(); ++total) {
    for (std::size_t m = 1; m < total; ++m) {
      const std::size_t n = total - m;
      unsigned __int128 product = static_cast<unsigned __int128>(b[m]) * b[n];
      if (static_cast<unsigned __int128>(b[total]) > product) return Violation{m, n};
    }
  }
  return Holds{};
}

std::string census_csv(const BallCensus& census) {
  std::ostringstream os;
  os << "n,B_n,ln(B_n)/n\n";
  for (std::size_t n = 0; n < census.counts.size(); ++n) {
    os << n << ',' << census.counts[n] << ',';
    if (n > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g",
                    std::log(static_cast<double>(census.counts[n])) / static_cast<double>(n));
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gcert
