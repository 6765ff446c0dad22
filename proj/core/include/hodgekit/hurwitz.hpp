#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "hodgekit/series.hpp"

namespace hodgekit {

/// Genus and the ramification profile over infinity.
struct RamificationProfile {
  int genus = 0;
  std::vector<int> parts;

  int degree() const;
  /// Number of simple branch points: 2g - 2 + n + sum(parts).
  int m() const;
  bool admissible() const;
  /// Parts sorted in non-increasing order.
  RamificationProfile normalized() const;
};

/// Caps used for Hurwitz series: p-weight, beta order and optional factor count.
Caps hurwitz_caps(int beta_cap, int weight_cap, int max_factors = kUnbounded);

/// e^{beta M0} e^{p1}, truncated. Weight blocks are computed independently.
Series hurwitz_tau(int beta_cap, int weight_cap);
/// log of hurwitz_tau, optionally keeping only terms with at most `max_factors` p-factors.
Series hurwitz_connected(int beta_cap, int weight_cap, int max_factors = kUnbounded);

/// The unstable parts: genus 0 with one and two points.
Series h01(int beta_cap, int weight_cap);
Series h02(int beta_cap, int weight_cap);

/// Extracts h_{g;b} = m! * prod(mult_j!) * [beta^m prod p_{b_i}] H from a
/// connected series. CapError if the series does not cover the profile.
Rational hurwitz_number(const RamificationProfile& profile, const Series& connected);
/// Builds a sufficient truncation and extracts.
Rational hurwitz_number(const RamificationProfile& profile);

/// Counts transitive factorizations of a fixed permutation of the given cycle
/// type into m transpositions, divided by the product of the parts.
/// Degree at most 8.
Rational oracle_hurwitz_number(const RamificationProfile& profile);

/// Connected Hurwitz series built once per cap triple and reused.
class HurwitzTable {
 public:
  HurwitzTable() = default;
  /// Ensures the table covers the given caps, rebuilding if needed.
  void require(int beta_cap, int weight_cap, int max_factors);
  Rational number(const RamificationProfile& profile);
  const Series& series() const { return series_; }

 private:
  int beta_cap_ = -1;
  int weight_cap_ = -1;
  int max_factors_ = -1;
  Series series_;
  std::mutex mutex_;
};

}  // namespace hodgekit
