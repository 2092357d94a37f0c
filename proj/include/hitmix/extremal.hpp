#pragma once

#include <cstdint>
#include <vector>

#include "hitmix/chain.hpp"

namespace hitmix {

// Subset enumeration is 2^n; past this it is not a desk-scale computation.
inline constexpr int kEnumerationCap = 24;

// Slack for measure comparisons: constructed chains place pi(A) exactly at
// alpha, and roundoff must not exclude the witness set.
inline constexpr double kMeasureSlack = 1e-12;

struct ExtremalWitness {
  double alpha;
  StateSet set;
  int start;
  double value;  // E_start[tau_set]
};

// The step function alpha -> T(alpha) as sorted breakpoints.
// T(alpha) = max{ value_j : measure_j >= alpha - 1e-12 }.
class HittingProfile {
 public:
  struct Breakpoint {
    double measure;
    double value;
  };

  explicit HittingProfile(std::vector<Breakpoint> bps) : bps_(std::move(bps)) {}

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  double operator()(double alpha) const;

 private:
  std::vector<Breakpoint> bps_;  // measure ascending, value nonincreasing
};

// Largest expected hitting time of a set of stationary measure >= alpha,
// by exhaustive enumeration restricted to inclusion-minimal admissible sets.
ExtremalWitness t_alpha(const Chain& c, double alpha);

// Full profile: one pass over all subsets, suffix maxima over measure.
// Evaluating the profile reproduces t_alpha at every alpha.
HittingProfile t_profile(const Chain& c);

// max over nonempty proper A and starts x of pi(A) * E_x[tau_A].
double t_prod(const Chain& c);

}  // namespace hitmix
