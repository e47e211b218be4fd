#pragma once

// Outlier-handling capability from an m-height profile. With LME bound
// delta and UME threshold Delta, tau outliers can be located and tau + sigma
// detected iff Delta / delta >= 2 (h_{2 tau + sigma} + 1).

#include <cstddef>
#include <utility>
#include <vector>

#include "geoecc/error.hpp"
#include "geoecc/height.hpp"

namespace geoecc {

struct CapabilitySpec {
  int tau = 0;
  int sigma = 0;
  double delta = 1.0;
  double Delta = 2.0;
};

using CapabilityPair = std::pair<int, int>;  // (tau, sigma)

inline double required_ratio(const ExtendedHeight& h) {
  if (h.is_infinite()) fail(ErrorKind::NoFiniteRatio, "infinite m-height admits no finite Delta/delta");
  return 2.0 * (h.value + 1.0);
}

inline double required_ratio(double h) { return required_ratio(ExtendedHeight::finite(h)); }

/// Every nontrivial (tau, sigma) supported at `ratio`, sorted by tau then
/// sigma, both descending.
inline std::vector<CapabilityPair> feasible_pairs(const MHeightProfile& profile, double ratio) {
  std::vector<CapabilityPair> pairs;
  const auto max_m = static_cast<int>(profile.max_m());
  for (int tau = max_m / 2; tau >= 0; --tau) {
    for (int sigma = max_m - 2 * tau; sigma >= 0; --sigma) {
      if (tau == 0 && sigma == 0) continue;
      const auto& h = profile.at(static_cast<std::size_t>(2 * tau + sigma));
      if (!h.is_infinite() && required_ratio(h) <= ratio) pairs.emplace_back(tau, sigma);
    }
  }
  return pairs;
}

inline void validate(const CapabilitySpec& spec) {
  require(spec.tau >= 0 && spec.sigma >= 0, "tau and sigma must be nonnegative");
  require(spec.tau + spec.sigma > 0, "(tau, sigma) = (0, 0) makes no capability claim");
  require(spec.delta > 0.0 && spec.Delta > spec.delta, "thresholds need Delta > delta > 0");
}

/// Boundary equality counts as feasible.
inline bool check_spec(const MHeightProfile& profile, const CapabilitySpec& spec) {
  validate(spec);
  const int m = 2 * spec.tau + spec.sigma;
  require(m <= static_cast<int>(profile.max_m()), "2 tau + sigma exceeds n - 1");
  const auto& h = profile.at(static_cast<std::size_t>(m));
  if (h.is_infinite()) return false;
  return spec.Delta / spec.delta >= required_ratio(h);
}

}  // namespace geoecc
