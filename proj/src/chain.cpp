#include "hitmix/chain.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "hitmix/error.hpp"

namespace hitmix {

namespace {

constexpr double kRowSumTol = 1e-9;
constexpr double kResidualTol = 1e-10;
constexpr double kPowerTol = 1e-13;
constexpr long kPowerMaxIter = 10'000'000;

double stationary_residual(const Matrix& p, const Vector& pi) {
  return ((p.transpose() * pi) - pi).cwiseAbs().maxCoeff();
}

bool acceptable_stationary(const Matrix& p, Vector& pi) {
  if (!pi.allFinite()) return false;
  double sum = pi.sum();
  if (!(sum > 0)) return false;
  pi /= sum;
  if (pi.minCoeff() <= 0) return false;
  return stationary_residual(p, pi) <= kResidualTol;
}

}  // namespace

Matrix validate_stochastic(const Matrix& raw) {
  const auto n = raw.rows();
  if (n < 2 || raw.cols() != n) fail(errc::bad_input, "transition matrix must be square, n >= 2");
  Matrix p = raw;
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      double v = p(x, y);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite entry at (" << x << "," << y << ")";
        fail(errc::bad_input, os.str());
      }
      if (v < 0) {
        std::ostringstream os;
        os << "negative entry " << v << " at (" << x << "," << y << ")";
        fail(errc::negative_entry, os.str());
      }
    }
    double sum = p.row(x).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "row " << x << " sums to " << sum;
      fail(errc::row_sum, os.str());
    }
    p.row(x) /= sum;
  }
  return p;
}

bool check_irreducible(const Matrix& p) {
  const int n = static_cast<int>(p.rows());
  // strong connectivity == everything reachable from state 0, forwards and
  // backwards, over the positive-entry digraph
  for (bool reversed : {false, true}) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y) {
        double edge = reversed ? p(y, x) : p(x, y);
        if (edge > 0 && !seen[y]) {
          seen[y] = 1;
          ++visited;
          stack.push_back(y);
        }
      }
    }
    if (visited != n) return false;
  }
  return true;
}

Vector stationary_distribution(const Matrix& p) {
  const auto n = p.rows();
  Matrix m = p.transpose() - Matrix::Identity(n, n);
  m.row(0).setOnes();
  Vector b = Vector::Zero(n);
  b(0) = 1.0;
  Vector pi = m.partialPivLu().solve(b);
  if (acceptable_stationary(p, pi)) return pi;

  // Singular to working precision: power iteration on the lazified kernel,
  // which shares the fixed point and converges for periodic chains too.
  Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (long it = 0; it < kPowerMaxIter; ++it) {
    Vector y = 0.5 * (p.transpose() * x + x);
    y /= y.sum();
    double diff = (y - x).cwiseAbs().maxCoeff();
    x = y;
    if (diff <= kPowerTol) {
      if (acceptable_stationary(p, x)) return x;
      break;
    }
  }
  fail(errc::convergence_failure, "stationary distribution did not converge");
}

Chain Chain::from_matrix(Matrix p, std::vector<std::string> labels) {
  Matrix validated = validate_stochastic(p);
  if (!check_irreducible(validated)) fail(errc::not_irreducible, "chain is not irreducible");
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(validated.rows()))
    fail(errc::bad_input, "label count does not match state count");
  Vector pi = stationary_distribution(validated);
  return Chain(std::move(validated), std::move(pi), std::move(labels));
}

double Chain::measure(const StateSet& s) const {
  if (s.n() != n()) fail(errc::length_mismatch, "state set universe does not match chain");
  double m = 0;
  for (int i : s.indices()) m += pi_(i);
  return m;
}

Chain lazify(const Chain& c) {
  Matrix p = 0.5 * (c.p() + Matrix::Identity(c.n(), c.n()));
  return Chain::from_matrix(std::move(p), c.labels());
}

Chain random_chain(int n, RngStream& rng) {
  Matrix p(n, n);
  for (int x = 0; x < n; ++x) {
    double sum = 0;
    for (int y = 0; y < n; ++y) {
      p(x, y) = rng.next_double();
      sum += p(x, y);
    }
    p.row(x) /= sum;
  }
  return Chain::from_matrix(std::move(p));
}

Vector random_distribution(int n, RngStream& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.next_double();
  v /= v.sum();
  return v;
}

}  // namespace hitmix
