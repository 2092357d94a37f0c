#include "hitmix/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hitmix/error.hpp"
#include "hitmix/hitting.hpp"

namespace hitmix {

namespace {

constexpr double kHittabilitySlack = 1e-12;

std::string v_label(int i) { return "v_" + std::to_string(i); }

// Entries computed from the closed-form construction can sit a few ulps
// outside [0,1] at boundary-tight specs; anything worse means N is too small.
double checked_entry(double v, int row, int col) {
  if (v >= -1e-12 && v < 0) v = 0.0;
  if (v < 0.0 || v > 1.0) {
    std::ostringstream os;
    os << "entry P[v_" << (row - 1) << "][v_" << (col - 1) << "] = " << v
       << " outside [0,1]; increase N";
    fail(errc::entry_out_of_range, os.str());
  }
  return v;
}

}  // namespace

void HittableStepSpec::validate() const {
  const int steps = k();
  if (lambdas.size() != alphas.size())
    fail(errc::spec_violation, "alphas and lambdas must have equal length");
  if (!(big_n > 0)) fail(errc::parameter_out_of_range, "N must be positive");
  for (int i = 0; i < steps; ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 0.5))
      fail(errc::parameter_out_of_range, "alphas must lie in (0, 1/2)");
    if (i > 0 && !(alphas[i] < alphas[i - 1]))
      fail(errc::parameter_out_of_range, "alphas must be strictly decreasing");
    if (!(lambdas[i] > 0.0)) fail(errc::parameter_out_of_range, "lambdas must be positive");
  }
  const double alpha_1 = steps > 0 ? alphas[0] : 0.0;
  if (!(epsilon > 0.0 && epsilon < 0.5 - alpha_1))
    fail(errc::parameter_out_of_range, "epsilon must lie in (0, 1/2 - alpha_1)");
  double cum = 0;
  for (int i = 0; i < steps; ++i) {
    cum += lambdas[i];
    if (cum > 1.0 / alphas[i] - 1.0 + kHittabilitySlack) {
      std::ostringstream os;
      os << "not hittable: cumulative jump " << cum << " exceeds 1/alpha_" << (i + 1)
         << " - 1 = " << (1.0 / alphas[i] - 1.0);
      fail(errc::spec_violation, os.str());
    }
  }
}

double HittableStepSpec::step_value(double alpha) const {
  double v = 1.0;
  for (int i = 0; i < k(); ++i)
    if (alpha <= alphas[i]) v += lambdas[i];
  return v;
}

bool ErrorSet::contains(double alpha, double margin) const {
  for (const auto& [lo, hi] : intervals)
    if (alpha >= lo - margin && alpha <= hi + margin) return true;
  return false;
}

double ErrorSet::distance(double alpha) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : intervals) {
    if (alpha >= lo && alpha <= hi) return 0.0;
    d = std::min(d, std::min(std::abs(alpha - lo), std::abs(alpha - hi)));
  }
  return d;
}

Chain three_state_tight(double alpha, double epsilon) {
  if (!(alpha > 0.0 && epsilon > 0.0 && alpha + epsilon < 0.5))
    fail(errc::parameter_out_of_range,
         "three-state chain needs alpha > 0, eps > 0, alpha + eps < 1/2");
  const double mid = 1.0 - alpha - epsilon;
  Matrix p(3, 3);
  p << 0.0, 1.0, 0.0,                                                //
      epsilon / mid, 1.0 - (alpha + epsilon) / mid, alpha / mid,     //
      0.0, 1.0, 0.0;
  return Chain::from_matrix(std::move(p), {"v_1", "v_2", "v_3"});
}

Chain two_state_counterexample(double gamma, double big_n) {
  if (!(gamma > 0.5 && gamma < 1.0))
    fail(errc::parameter_out_of_range, "gamma must lie in (1/2, 1)");
  const double up = 1.0 / (gamma * big_n);
  const double down = 1.0 / ((1.0 - gamma) * big_n);
  if (!(up <= 1.0 && down <= 1.0))
    fail(errc::parameter_out_of_range, "N too small: N >= 1/min(gamma, 1-gamma) required");
  Matrix p(2, 2);
  p << 1.0 - up, up,  //
      down, 1.0 - down;
  return Chain::from_matrix(std::move(p), {"v_1", "v_2"});
}

LShapedChain l_shaped_from_spec(const HittableStepSpec& spec) {
  spec.validate();
  const int k = spec.k();
  const int n = k + 2;  // states v_{-1}, v_0, ..., v_k; matrix index = v-index + 1
  const double big_n = spec.big_n;
  const double eps = spec.epsilon;
  const auto& a = spec.alphas;
  const auto& lam = spec.lambdas;
  const double alpha_1 = k > 0 ? a[0] : 0.0;

  // cumulative jumps s_i = lambda_1 + ... + lambda_i
  std::vector<double> s(static_cast<std::size_t>(k) + 1, 0.0);
  for (int i = 1; i <= k; ++i) s[i] = s[i - 1] + lam[i - 1];
  // alpha_{k+1} = 0 convention for the final-row formula
  auto alpha_at = [&](int i) { return i <= k ? a[i - 1] : 0.0; };

  Matrix p = Matrix::Zero(n, n);
  auto set = [&](int row, int col, double v) { p(row, col) = checked_entry(v, row, col); };

  set(0, 1, 1.0 / big_n);                                    // P_{-1,0}
  set(1, 0, eps / ((1.0 - alpha_1 - eps) * big_n));          // P_{0,-1}
  set(0, 0, 1.0 - p(0, 1));                                  // P_{-1,-1}

  if (k >= 1) {
    set(1, 2, (1.0 - a[0]) / ((1.0 - a[0] - eps) * lam[0] * big_n));  // P_{0,1}
    set(2, 1, (1.0 - a[0] - lam[0] * alpha_at(2)) /
                  ((a[0] - alpha_at(2)) * lam[0] * big_n));           // P_{1,0}
    for (int i = 2; i <= k; ++i) {
      set(i, i + 1, (1.0 - a[i - 1] * (1.0 + s[i - 1])) /
                        ((a[i - 2] - a[i - 1]) * lam[i - 1] * big_n));  // P_{i-1,i}
      set(i + 1, i, (1.0 - a[i - 1] * (1.0 + s[i])) /
                        ((a[i - 1] - alpha_at(i + 1)) * lam[i - 1] * big_n));  // P_{i,i-1}
      set(i + 1, 1, 1.0 / big_n);  // P_{i,0}
    }
    set(1, 1, 1.0 - p(1, 0) - p(1, 2));  // P_{0,0}
    set(2, 2, 1.0 - p(2, 1) - (k >= 2 ? p(2, 3) : 0.0));  // P_{1,1}
    for (int i = 2; i <= k; ++i)
      set(i + 1, i + 1, 1.0 - p(i + 1, 1) - p(i + 1, i) -
                            (i < k ? p(i + 1, i + 2) : 0.0));  // P_{i,i}
  } else {
    set(1, 1, 1.0 - p(1, 0));
  }

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = -1; i <= k; ++i) labels.push_back(v_label(i));
  return LShapedChain{Chain::from_matrix(std::move(p), std::move(labels)), spec};
}

LShapedResiduals verify_l_shaped(const LShapedChain& lc) {
  const Chain& c = lc.chain;
  const HittableStepSpec& spec = lc.spec;
  const int k = spec.k();
  const int n = c.n();
  const double big_n = spec.big_n;
  const double alpha_1 = k > 0 ? spec.alphas[0] : 0.0;

  auto rel = [](double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
  };

  LShapedResiduals r{};
  // (i) pi(v_{-1}) = eps, pi(v_0) = 1 - alpha_1 - eps, tail sums = alpha_i
  r.stationary = std::max(rel(c.pi()(0), spec.epsilon),
                          rel(c.pi()(1), 1.0 - alpha_1 - spec.epsilon));
  double tail = 0.0;
  for (int i = k; i >= 1; --i) {
    tail += c.pi()(i + 1);
    r.stationary = std::max(r.stationary, rel(tail, spec.alphas[i - 1]));
  }

  // (ii) E_{v_i}[tau_{v_0}] <= N for all i, equality at i = -1
  Vector h0 = expected_hitting_times(c, StateSet::from_indices(n, {1})).h;
  r.return_time = std::abs(h0(0) - big_n) / big_n;
  r.return_time_max = (h0.maxCoeff() - big_n) / big_n;

  // (iii) E_{v_{i-1}}[tau_{v_i}] = lambda_i N
  r.ladder = 0.0;
  for (int i = 1; i <= k; ++i) {
    Vector h = expected_hitting_times(c, StateSet::from_indices(n, {i + 1})).h;
    double want = spec.lambdas[i - 1] * big_n;
    r.ladder = std::max(r.ladder, std::abs(h(i) - want) / want);
  }
  return r;
}

double l_shaped_t_formula(const LShapedChain& lc, double alpha) {
  const Chain& c = lc.chain;
  const int k = lc.spec.k();
  const int n = c.n();

  // window rule needs E_{v_j}[tau_{v_0}] maximised at j = -1
  Vector h0 = expected_hitting_times(c, StateSet::from_indices(n, {1})).h;
  for (int j = 0; j < n; ++j)
    if (h0(j) > h0(0) * (1.0 + 1e-9))
      fail(errc::spec_violation, "return time to v_0 is not maximised at v_{-1}");

  // tails[i] = pi({v_i, ..., v_k})
  std::vector<double> tails(static_cast<std::size_t>(k) + 2, 0.0);
  for (int i = k; i >= 0; --i) tails[i] = tails[i + 1] + c.pi()(i + 1);
  const double pi_front = c.pi()(0);

  // measure slack as in the subset enumeration: alpha may sit exactly on a
  // tail boundary that floating-point pi places an ulp lower
  for (int i = 0; i <= k; ++i) {
    if (tails[i + 1] + pi_front < alpha && alpha <= tails[i] + 1e-12) {
      Vector h = expected_hitting_times(c, StateSet::from_indices(n, {i + 1})).h;
      return h(0);
    }
  }
  std::ostringstream os;
  os << "alpha = " << alpha << " falls in an error interval; no valid window";
  fail(errc::window_violation, os.str());
}

HittableStepSpec dyadic_discretize(const std::function<double(double)>& f, int n,
                                   double big_n) {
  if (n < 1) fail(errc::parameter_out_of_range, "dyadic level n must be >= 1");
  const double f_half = f(0.5);
  if (std::abs(f_half - 1.0) > 1e-12)
    fail(errc::normalization_error, "f(1/2) must equal 1");

  HittableStepSpec spec;
  spec.epsilon = std::ldexp(1.0, -2 * n);
  spec.big_n = big_n;
  const int steps = (1 << (n - 1)) - 1;
  double prev = f_half;
  for (int i = 1; i <= steps; ++i) {
    const double alpha_i = 0.5 - std::ldexp(static_cast<double>(i), -n);
    const double v = f(alpha_i);
    const double lambda = v - prev;
    if (lambda < -1e-12 * (1.0 + std::abs(prev)))
      fail(errc::not_decreasing, "f must be nonincreasing in alpha on the dyadic grid");
    if (lambda > 1e-12) {  // flat stretches give zero-lambda steps; drop them
      spec.alphas.push_back(alpha_i);
      spec.lambdas.push_back(lambda);
      prev = v;
    }
  }
  spec.validate();
  return spec;
}

ErrorSet error_set(const HittableStepSpec& spec) {
  ErrorSet es;
  es.intervals.emplace_back(0.0, spec.epsilon);
  for (int i = spec.k() - 1; i >= 0; --i)
    es.intervals.emplace_back(spec.alphas[i], spec.alphas[i] + spec.epsilon);
  return es;
}

}  // namespace hitmix
