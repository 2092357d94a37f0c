#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hitmix/chain.hpp"

namespace hitmix {

// Data of a hittable step function f(a) = 1 + sum_i lambda_i * 1{a <= alpha_i}
// together with the time scale of its realization.
struct HittableStepSpec {
  std::vector<double> alphas;   // strictly decreasing, in (0, 1/2)
  std::vector<double> lambdas;  // positive, same length
  double epsilon = 0;           // in (0, 1/2 - alpha_1)
  double big_n = 0;             // time scale N

  int k() const { return static_cast<int>(alphas.size()); }

  // Throws spec_violation / parameter_out_of_range on a bad spec.
  // Cumulative jumps must satisfy sum_{j<=i} lambda_j <= 1/alpha_i - 1,
  // checked with 1e-12 slack so boundary-tight specs are admitted.
  void validate() const;

  // 1 + sum of lambdas over steps with alpha <= alpha_i.
  double step_value(double alpha) const;
};

// Closed intervals [alpha_i, alpha_i + epsilon], i = 0..k with alpha_0 = 0,
// on which the realization is not guaranteed to match the step function.
struct ErrorSet {
  std::vector<std::pair<double, double>> intervals;  // ascending by left end

  bool contains(double alpha, double margin = 0) const;
  double distance(double alpha) const;  // 0 inside
};

// Chain on v_{-1}, v_0, ..., v_k whose transitions are nearest-neighbor along
// the sequence plus jumps to v_0. State index i maps to v_{i-1}.
struct LShapedChain {
  Chain chain;
  HittableStepSpec spec;
};

// Residuals of the construction's defining conditions, all relative.
struct LShapedResiduals {
  double stationary;       // condition (i)
  double return_time;      // condition (ii) equality at v_{-1}
  double return_time_max;  // condition (ii) bound: max_i (E_i[tau_{v0}] - N)/N
  double ladder;           // condition (iii)
};

// Three-state chain attaining equality in the hitting-time inequality chain:
// T(a) = T(b)/a for every b in (a + eps, 1/2].
Chain three_state_tight(double alpha, double epsilon);

// Two-state chain with T(b) = 0 for b > gamma and T(a) = (1-gamma)N for
// a <= gamma; shows the 1/2 threshold is sharp.
Chain two_state_counterexample(double gamma, double big_n);

// Build the L-shaped realization of a hittable step spec. Every matrix entry
// must land in [0,1]; otherwise throws entry_out_of_range and the caller
// should retry with a larger N. Convention: alpha_{k+1} = 0 and
// P_{k,k+1} = 0 in the final-row formulas.
LShapedChain l_shaped_from_spec(const HittableStepSpec& spec);

LShapedResiduals verify_l_shaped(const LShapedChain& lc);

// T(alpha) of an L-shaped chain via the window rule: find i with
// pi({v_{i+1},..,v_k}) + pi(v_{-1}) < alpha <= pi({v_i,..,v_k}) and return
// E_{v_{-1}}[tau_{v_i}]. Throws window_violation when alpha falls in an
// error interval with no valid window.
double l_shaped_t_formula(const LShapedChain& lc, double alpha);

// Dyadic discretization: alpha_i = 1/2 - i 2^{-n}, lambda_i from differences
// of f on the grid, epsilon = 2^{-2n}. Requires f(1/2) = 1 within 1e-12 and
// f nonincreasing in alpha on the grid; zero-lambda steps are dropped.
HittableStepSpec dyadic_discretize(const std::function<double(double)>& f, int n,
                                   double big_n = 1e6);

ErrorSet error_set(const HittableStepSpec& spec);

}  // namespace hitmix
