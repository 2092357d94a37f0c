#include "hitmix/hitting.hpp"

#include <cmath>
#include <limits>

#include "hitmix/error.hpp"

namespace hitmix {

AbsorptionSystem::AbsorptionSystem(const Chain& chain, const StateSet& blocked)
    : chain_(&chain), blocked_(blocked) {
  if (blocked.n() != chain.n())
    fail(errc::length_mismatch, "target universe does not match chain");
  if (blocked.empty()) fail(errc::empty_target, "target set is empty");
  if (chain.n() > kDenseStateCap)
    fail(errc::state_count_cap, "dense per-target solves are capped at 2000 states");

  blocked_states_ = blocked.indices();
  free_states_ = blocked.complement().indices();
  const int m = static_cast<int>(free_states_.size());
  a_ = Matrix::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a_(i, j) -= chain.p()(free_states_[i], free_states_[j]);
  lu_.compute(a_);
}

// one step of iterative refinement: near-absorbing targets make I - P[free]
// ill-conditioned enough that a plain solve misses the 1e-10 invariants
Matrix AbsorptionSystem::refined_solve(const Matrix& rhs) const {
  Matrix x = lu_.solve(rhs);
  x += lu_.solve(rhs - a_ * x);
  return x;
}

Vector AbsorptionSystem::hitting_times() const {
  const int n = chain_->n();
  const int m = static_cast<int>(free_states_.size());
  Vector h = Vector::Zero(n);
  if (m == 0) return h;
  Vector sol = refined_solve(Vector::Ones(m));
  for (int i = 0; i < m; ++i) h(free_states_[i]) = sol(i);
  if (!h.allFinite()) fail(errc::convergence_failure, "hitting-time solve produced non-finite values");
  return h;
}

Matrix AbsorptionSystem::entry_distribution() const {
  const int n = chain_->n();
  const int m = static_cast<int>(free_states_.size());
  const int t = static_cast<int>(blocked_states_.size());
  Matrix rows = Matrix::Zero(n, t);
  for (int j = 0; j < t; ++j) rows(blocked_states_[j], j) = 1.0;
  if (m == 0) return rows;
  Matrix r(m, t);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < t; ++j) r(i, j) = chain_->p()(free_states_[i], blocked_states_[j]);
  Matrix sol = refined_solve(r);
  for (int i = 0; i < m; ++i) rows.row(free_states_[i]) = sol.row(i);
  return rows;
}

Vector AbsorptionSystem::count_weights(const StateSet& count) const {
  if (count.n() != chain_->n()) fail(errc::length_mismatch, "count universe does not match chain");
  const int n = chain_->n();
  const int m = static_cast<int>(free_states_.size());
  Vector w = Vector::Zero(n);
  if (m == 0) return w;
  Vector ind(m);
  for (int i = 0; i < m; ++i) ind(i) = count.contains(free_states_[i]) ? 1.0 : 0.0;
  Vector sol = refined_solve(ind);
  for (int i = 0; i < m; ++i) w(free_states_[i]) = sol(i);
  return w;
}

HittingVector expected_hitting_times(const Chain& c, const StateSet& target) {
  AbsorptionSystem sys(c, target);
  return HittingVector{target, sys.hitting_times()};
}

double d_plus(const Vector& h_to, const StateSet& from) {
  if (from.empty()) fail(errc::empty_target, "d+ from an empty set");
  double best = -std::numeric_limits<double>::infinity();
  for (int x : from.indices()) best = std::max(best, h_to(x));
  return best;
}

double d_minus(const Vector& h_to, const StateSet& from) {
  if (from.empty()) fail(errc::empty_target, "d- from an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (int x : from.indices()) best = std::min(best, h_to(x));
  return best;
}

double d_plus(const Chain& c, const StateSet& from, const StateSet& to) {
  if (from.empty()) fail(errc::empty_target, "d+ from an empty set");
  return d_plus(expected_hitting_times(c, to).h, from);
}

double d_minus(const Chain& c, const StateSet& from, const StateSet& to) {
  if (from.empty()) fail(errc::empty_target, "d- from an empty set");
  return d_minus(expected_hitting_times(c, to).h, from);
}

HittingDistribution hitting_distribution(const Chain& c, const StateSet& target) {
  AbsorptionSystem sys(c, target);
  return HittingDistribution{target, target.indices(), sys.entry_distribution()};
}

double expected_occupation(const Chain& c, const StateSet& avoid, const StateSet& count,
                           const Vector& start) {
  if (start.size() != c.n()) fail(errc::length_mismatch, "start distribution length mismatch");
  if (start.minCoeff() < -1e-12 || std::abs(start.sum() - 1.0) > 1e-9)
    fail(errc::bad_input, "start is not a probability vector");
  AbsorptionSystem sys(c, avoid);
  Vector w = sys.count_weights(count);
  return start.dot(w);
}

}  // namespace hitmix
