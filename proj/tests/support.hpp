#pragma once

// Test-only oracles. Each one recomputes a quantity the library produces,
// through an independent route: value iteration instead of LU solves,
// explicit subset maximization instead of the L1 identity, plain matrix
// powers instead of the renormalized scan.

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hitmix/chain.hpp"
#include "hitmix/constructors.hpp"
#include "hitmix/error.hpp"
#include "hitmix/extremal.hpp"
#include "hitmix/hitting.hpp"
#include "hitmix/rng.hpp"

namespace hitmix::test {

inline Matrix make_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  int x = 0;
  for (const auto& row : rows) {
    int y = 0;
    for (double v : row) m(x, y++) = v;
    ++x;
  }
  return m;
}

inline Chain make_chain(std::initializer_list<std::initializer_list<double>> rows) {
  return Chain::from_matrix(make_matrix(rows));
}

// simple random walk on the n-cycle
inline Chain cycle_chain(int n) {
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    p(i, (i + 1) % n) = 0.5;
    p(i, (i + n - 1) % n) = 0.5;
  }
  return Chain::from_matrix(std::move(p));
}

// Hitting times by value iteration (Jacobi sweeps), no factorization involved.
inline Vector oracle_hitting(const Chain& c, const StateSet& target, double tol = 1e-13,
                             long max_iter = 50'000'000) {
  const int n = c.n();
  Vector h = Vector::Zero(n);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int i : target.indices()) in[static_cast<std::size_t>(i)] = 1;
  for (long it = 0; it < max_iter; ++it) {
    Vector next = Vector::Zero(n);
    double diff = 0;
    for (int x = 0; x < n; ++x) {
      if (in[static_cast<std::size_t>(x)]) continue;
      next(x) = 1.0 + c.p().row(x).dot(h);
      diff = std::max(diff, std::abs(next(x) - h(x)) / (1.0 + std::abs(next(x))));
    }
    h = next;
    if (diff <= tol) return h;
  }
  fail(errc::convergence_failure, "oracle hitting iteration did not converge");
}

// max over all 2^n subsets of |mu(A) - nu(A)|
inline double oracle_tv_subsets(const Vector& mu, const Vector& nu) {
  const int n = static_cast<int>(mu.size());
  double best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double d = 0;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) d += mu(i) - nu(i);
    best = std::max(best, std::abs(d));
  }
  return best;
}

// T(alpha) by unpruned enumeration over every admissible subset, reusing the
// library hitting solver; used to show the minimality pruning is lossless.
inline double unpruned_t_alpha(const Chain& c, double alpha) {
  const int n = c.n();
  double best = -1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    StateSet s = StateSet::from_mask(n, mask);
    if (c.measure(s) < alpha - 1e-12) continue;
    best = std::max(best, expected_hitting_times(c, s).h.maxCoeff());
  }
  return best < 0 ? 0.0 : best;
}

// T(alpha) through value iteration only: independent of both the pruning and
// the LU path.
inline double oracle_t_alpha(const Chain& c, double alpha) {
  const int n = c.n();
  double best = -1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    StateSet s = StateSet::from_mask(n, mask);
    if (c.measure(s) < alpha - 1e-12) continue;
    best = std::max(best, oracle_hitting(c, s).maxCoeff());
  }
  return best < 0 ? 0.0 : best;
}

inline double worst_tv(const Matrix& kernel, const Vector& pi) {
  double w = 0;
  for (Eigen::Index x = 0; x < kernel.rows(); ++x)
    w = std::max(w, 0.5 * (kernel.row(x).transpose() - pi).cwiseAbs().sum());
  return w;
}

// first t >= 0 with worst-row TV of the plain power P^t below 1/4
inline std::int64_t oracle_mixing_time(const Chain& c, std::int64_t cap) {
  Matrix power = Matrix::Identity(c.n(), c.n());
  for (std::int64_t t = 0; t <= cap; ++t) {
    if (worst_tv(power, c.pi()) <= 0.25) return t;
    power = power * c.p();
  }
  return -1;
}

// first t >= 1 for the independently accumulated Cesaro average
inline std::int64_t oracle_cesaro_time(const Chain& c, std::int64_t cap) {
  Matrix power = Matrix::Identity(c.n(), c.n());
  Matrix sum = Matrix::Zero(c.n(), c.n());
  for (std::int64_t t = 1; t <= cap; ++t) {
    sum += power;
    if (worst_tv(sum / static_cast<double>(t), c.pi()) <= 0.25) return t;
    power = power * c.p();
  }
  return -1;
}

// random digraph chain: some rows sparse, so reducibility actually occurs
inline Matrix random_digraph_matrix(int n, RngStream& rng) {
  Matrix p = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    int support = 0;
    for (int y = 0; y < n; ++y) {
      if (rng.next_double() < 0.4) {
        p(x, y) = rng.next_double();
        ++support;
      }
    }
    if (support == 0) p(x, x) = 1.0;
    p.row(x) /= p.row(x).sum();
  }
  return p;
}

// reachability closure over boolean matrix powers up to length n
inline bool oracle_strongly_connected(const Matrix& p) {
  const int n = static_cast<int>(p.rows());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) adj[x][y] = p(x, y) > 0;
  auto reach = adj;
  for (int t = 2; t <= n; ++t) {
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (int x = 0; x < n; ++x)
      for (int k = 0; k < n; ++k)
        if (reach[x][k])
          for (int y = 0; y < n; ++y)
            if (adj[k][y]) next[x][y] = 1;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) reach[x][y] = reach[x][y] || next[x][y];
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!reach[x][y]) return false;
  return true;
}

// Hittable spec with k steps, comfortable gaps, and N doubled until the
// realization's entries fit in [0,1].
inline HittableStepSpec random_hittable_spec(RngStream& rng, int k) {
  HittableStepSpec spec;
  while (true) {
    spec.alphas.clear();
    for (int i = 0; i < k; ++i) spec.alphas.push_back(rng.uniform(0.04, 0.46));
    std::sort(spec.alphas.begin(), spec.alphas.end(), std::greater<>());
    bool ok = spec.alphas.front() < 0.46;
    for (int i = 1; i < k; ++i)
      if (spec.alphas[i - 1] - spec.alphas[i] < 0.03) ok = false;
    if (ok) break;
  }
  spec.lambdas.clear();
  double cum = 0;
  for (int i = 0; i < k; ++i) {
    double room = 1.0 / spec.alphas[i] - 1.0 - cum;
    double lam = room * rng.uniform(0.15, 0.85);
    spec.lambdas.push_back(lam);
    cum += lam;
  }
  double gap = 0.5 - spec.alphas.front();
  for (int i = 1; i < k; ++i) gap = std::min(gap, spec.alphas[i - 1] - spec.alphas[i]);
  gap = std::min(gap, spec.alphas.back());
  spec.epsilon = gap * rng.uniform(0.2, 0.6);
  spec.big_n = 1e4;
  return spec;
}

inline LShapedChain build_l_shaped_with_retry(HittableStepSpec spec) {
  for (int tries = 0; tries < 64; ++tries) {
    try {
      return l_shaped_from_spec(spec);
    } catch (const Error& e) {
      if (e.code() != errc::entry_out_of_range) throw;
      spec.big_n *= 2;
    }
  }
  fail(errc::entry_out_of_range, "no admissible N found for spec");
}

}  // namespace hitmix::test
