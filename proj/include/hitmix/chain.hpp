#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hitmix/rng.hpp"
#include "hitmix/state_set.hpp"

namespace hitmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Row-stochastic validation. A row whose sum is within 1e-9 of 1 is
// renormalized to sum exactly 1; a larger deviation is rejected.
Matrix validate_stochastic(const Matrix& raw);

// Strong connectivity of the positive-entry digraph. Exact > 0 test, no
// epsilon: constructed chains carry exact zeros and tiny entries are real.
bool check_irreducible(const Matrix& p);

// Unique stationary distribution of a validated irreducible matrix.
// Direct solve of (P^T - I) pi = 0 with the first equation replaced by the
// normalization constraint; power-iteration fallback (tol 1e-13, at most 1e7
// iterations) when the direct solve comes back singular to working precision.
Vector stationary_distribution(const Matrix& p);

// Validated irreducible chain with its stationary distribution.
// Immutable after construction; safe to share across threads.
class Chain {
 public:
  static Chain from_matrix(Matrix p, std::vector<std::string> labels = {});

  int n() const { return static_cast<int>(p_.rows()); }
  const Matrix& p() const { return p_; }
  const Vector& pi() const { return pi_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double measure(const StateSet& s) const;

 private:
  Chain(Matrix p, Vector pi, std::vector<std::string> labels)
      : p_(std::move(p)), pi_(std::move(pi)), labels_(std::move(labels)) {}

  Matrix p_;
  Vector pi_;
  std::vector<std::string> labels_;
};

// (P + I)/2: same stationary distribution, every diagonal >= 1/2.
Chain lazify(const Chain& c);

// Dense chain whose rows are normalized positive uniforms; always irreducible.
Chain random_chain(int n, RngStream& rng);

// Probability vector of normalized positive uniforms.
Vector random_distribution(int n, RngStream& rng);

}  // namespace hitmix
