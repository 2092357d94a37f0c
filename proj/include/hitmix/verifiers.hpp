#pragma once

#include <string>
#include <vector>

#include "hitmix/chain.hpp"
#include "hitmix/extremal.hpp"

namespace hitmix {

// Relative slack below which an inequality is still reported as holding;
// exact solves carry O(1e-12) error and must not produce false violations.
inline constexpr double kIneqTol = 1e-9;

struct InequalityReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool holds = false;
  bool applicable = true;  // false when a conditional check's hypotheses fail
  std::string witness;
};

// lhs <= rhs with relative slack tolerance.
InequalityReport leq_report(const std::string& name, double lhs, double rhs,
                            const std::string& witness = "");

// Both inequalities of the chain T(a) <= T(b) + (1/a - 1) T(1-b) <= T(b)/a.
struct StarReport {
  InequalityReport additive;
  InequalityReport chained;
  bool holds() const { return additive.holds && chained.holds; }
};

StarReport check_star(const Chain& c, double alpha, double beta);
StarReport check_star(const HittingProfile& profile, double alpha, double beta);

// pi(A) <= d+(A,C) / (d+(A,C) + d-(C,A)); trivial bound pi(A) <= 1 when the
// denominator vanishes (overlapping sets).
InequalityReport check_ratio_bound(const Chain& c, const StateSet& a_set,
                                   const StateSet& c_set);

// Induced chain on A: Q_{xy} = P_x(first A-state visited after tau_C is y),
// its stationary mu, and the hitting distribution nu on C started from mu.
struct AuxiliaryDecomposition {
  StateSet a_set;
  StateSet c_set;
  std::vector<int> a_states;  // ascending
  std::vector<int> c_states;
  Matrix q;      // |A| x |A|
  Vector mu;     // over a_states
  Vector nu;     // over c_states
  double e_mu_tau_c = 0;  // E_mu[tau_C]
  double e_nu_tau_a = 0;  // E_nu[tau_A]
};

// Requires A and C nonempty and disjoint. When Q is reducible, mu is the
// stationary distribution of the closed class containing the lowest-index
// recurrent state (any stationary distribution of Q works).
AuxiliaryDecomposition auxiliary_decomposition(const Chain& c, const StateSet& a_set,
                                               const StateSet& c_set);

// pi(A) E_nu[tau_A] <= (1 - pi(A)) E_mu[tau_C].
InequalityReport check_dist_inequality(const Chain& c, const AuxiliaryDecomposition& d);

// Occupation identity over the A -> C -> A cycle: expected time in S before
// the cycle completes equals pi(S) E_mu[tau]. Reported as an equality within
// relative 1e-7 (holds means |lhs - rhs| small; slack is informational).
InequalityReport check_occupation_identity(const Chain& c, const AuxiliaryDecomposition& d,
                                           const StateSet& s_set);

// Conditional check: under d+(Omega,B) <= T, d+(Omega,A u C) <= T,
// d+(Omega,A) <= 99.9T and d-(B,A) >= 98.9T, concludes d+(B,C) < 14T.
// Reports applicable=false when a hypothesis fails.
InequalityReport check_lemma_4_2(const Chain& c, const StateSet& a_set, const StateSet& b_set,
                                 const StateSet& c_set, double t_scale);

// Conditional check: when T(0.01) = 99.9 T(0.02) within relative 1e-6,
// concludes T(0.99) >= 0.1 T(0.02); otherwise applicable=false with the
// measured ratio in the witness.
InequalityReport check_prop_4_1(const Chain& c);

}  // namespace hitmix
