#pragma once

#include <vector>

#include "hitmix/chain.hpp"

namespace hitmix {

// Expected steps to enter `target` from every start state; zero inside.
struct HittingVector {
  StateSet target;
  Vector h;
};

// Entry distribution: rows[x][j] is the probability that the first state of
// `target` visited from x is columns[j]. Target rows are indicators.
struct HittingDistribution {
  StateSet target;
  std::vector<int> columns;  // target states, ascending
  Matrix rows;               // n x |target|
};

// Dense solves only; beyond this the per-target factorization does not fit
// desk-scale memory.
inline constexpr int kDenseStateCap = 2000;

// One LU factorization of (I - P) restricted to the complement of a blocked
// set, reused for hitting times, entry distributions and occupation weights.
class AbsorptionSystem {
 public:
  AbsorptionSystem(const Chain& chain, const StateSet& blocked);

  const StateSet& blocked() const { return blocked_; }

  // E_x[tau_blocked] for every x; zero on blocked states.
  Vector hitting_times() const;

  // n x |blocked| matrix of first-entry probabilities.
  Matrix entry_distribution() const;

  // Expected visits to `count` strictly before absorption, per start state.
  Vector count_weights(const StateSet& count) const;

 private:
  Matrix refined_solve(const Matrix& rhs) const;

  const Chain* chain_;
  StateSet blocked_;
  std::vector<int> free_states_;
  std::vector<int> blocked_states_;
  Matrix a_;                        // I - P[free,free]
  Eigen::PartialPivLU<Matrix> lu_;  // of a_
};

HittingVector expected_hitting_times(const Chain& c, const StateSet& target);

// max / min over x in `from` of E_x[tau_to].
double d_plus(const Chain& c, const StateSet& from, const StateSet& to);
double d_minus(const Chain& c, const StateSet& from, const StateSet& to);

// Same on a precomputed hitting vector for `to`.
double d_plus(const Vector& h_to, const StateSet& from);
double d_minus(const Vector& h_to, const StateSet& from);

HittingDistribution hitting_distribution(const Chain& c, const StateSet& target);

// Expected number of steps t < tau_avoid with X_t in `count`, starting from
// the distribution `start`.
double expected_occupation(const Chain& c, const StateSet& avoid, const StateSet& count,
                           const Vector& start);

}  // namespace hitmix
