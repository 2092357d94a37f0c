#include "hitmix/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hitmix/error.hpp"
#include "hitmix/hitting.hpp"

namespace hitmix {

namespace {

// Stationary distribution of a (possibly reducible) small stochastic matrix:
// restrict to the closed class containing the lowest-index recurrent state.
// Entries below the noise floor are solver residue, not edges.
Vector stationary_of_stochastic(const Matrix& q) {
  const int m = static_cast<int>(q.rows());
  constexpr double kEdgeFloor = 1e-13;

  // Tarjan-free SCC via double BFS per unvisited node is overkill here;
  // m is tiny, so use the straightforward reachability closure.
  std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
  for (int s = 0; s < m; ++s) {
    std::vector<int> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < m; ++y)
        if (q(x, y) > kEdgeFloor && !reach[s][y]) {
          reach[s][y] = 1;
          stack.push_back(y);
        }
    }
  }
  // state is recurrent iff everything it reaches reaches it back
  int root = -1;
  for (int s = 0; s < m && root < 0; ++s) {
    bool recurrent = true;
    for (int y = 0; y < m; ++y)
      if (reach[s][y] && !reach[y][s]) recurrent = false;
    if (recurrent) root = s;
  }
  if (root < 0) fail(errc::convergence_failure, "no recurrent class found");

  std::vector<int> cls;
  for (int y = 0; y < m; ++y)
    if (reach[root][y]) cls.push_back(y);
  const int mc = static_cast<int>(cls.size());
  Matrix qc(mc, mc);
  for (int i = 0; i < mc; ++i) {
    for (int j = 0; j < mc; ++j) qc(i, j) = q(cls[i], cls[j]);
    qc.row(i) /= qc.row(i).sum();
  }
  Vector pic = stationary_distribution(qc);
  Vector mu = Vector::Zero(m);
  for (int i = 0; i < mc; ++i) mu(cls[i]) = pic(i);
  return mu;
}

Vector scatter(int n, const std::vector<int>& states, const Vector& v) {
  Vector out = Vector::Zero(n);
  for (std::size_t i = 0; i < states.size(); ++i) out(states[i]) = v(static_cast<int>(i));
  return out;
}

}  // namespace

InequalityReport leq_report(const std::string& name, double lhs, double rhs,
                            const std::string& witness) {
  InequalityReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -kIneqTol * (1.0 + std::abs(rhs));
  r.witness = witness;
  return r;
}

StarReport check_star(const HittingProfile& profile, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < beta && beta <= 0.5))
    fail(errc::parameter_out_of_range, "need 0 < alpha < beta <= 1/2");
  const double t_a = profile(alpha);
  const double t_b = profile(beta);
  const double t_1mb = profile(1.0 - beta);
  std::ostringstream os;
  os << "alpha=" << alpha << " beta=" << beta;
  StarReport sr;
  sr.additive =
      leq_report("star_additive", t_a, t_b + (1.0 / alpha - 1.0) * t_1mb, os.str());
  sr.chained = leq_report("star_chained", t_a, t_b / alpha, os.str());
  return sr;
}

StarReport check_star(const Chain& c, double alpha, double beta) {
  return check_star(t_profile(c), alpha, beta);
}

InequalityReport check_ratio_bound(const Chain& c, const StateSet& a_set,
                                   const StateSet& c_set) {
  if (a_set.empty() || c_set.empty()) fail(errc::empty_target, "sets must be nonempty");
  const double dp = d_plus(c, a_set, c_set);
  const double dm = d_minus(c, c_set, a_set);
  const double denom = dp + dm;
  const double rhs = denom > 0.0 ? dp / denom : 1.0;
  std::ostringstream os;
  os << "d+(A,C)=" << dp << " d-(C,A)=" << dm;
  return leq_report("ratio_bound", c.measure(a_set), rhs, os.str());
}

AuxiliaryDecomposition auxiliary_decomposition(const Chain& c, const StateSet& a_set,
                                               const StateSet& c_set) {
  if (a_set.empty() || c_set.empty()) fail(errc::empty_target, "sets must be nonempty");
  if (a_set.intersects(c_set))
    fail(errc::sets_overlap, "auxiliary decomposition needs disjoint A and C");

  AuxiliaryDecomposition d;
  d.a_set = a_set;
  d.c_set = c_set;
  d.a_states = a_set.indices();
  d.c_states = c_set.indices();
  const int na = static_cast<int>(d.a_states.size());
  const int nc = static_cast<int>(d.c_states.size());

  AbsorptionSystem sys_c(c, c_set);
  AbsorptionSystem sys_a(c, a_set);
  Matrix hd_c = sys_c.entry_distribution();  // n x |C|
  Matrix hd_a = sys_a.entry_distribution();  // n x |A|

  // Q = (A -> C entry law) * (C -> A entry law)
  Matrix r(na, nc);
  for (int i = 0; i < na; ++i) r.row(i) = hd_c.row(d.a_states[i]);
  Matrix s(nc, na);
  for (int j = 0; j < nc; ++j) s.row(j) = hd_a.row(d.c_states[j]);
  d.q = r * s;
  for (int i = 0; i < na; ++i)
    if (std::abs(d.q.row(i).sum() - 1.0) > 1e-10)
      fail(errc::convergence_failure, "auxiliary chain row does not sum to 1");

  d.mu = stationary_of_stochastic(d.q);
  if ((d.mu.transpose() * d.q - d.mu.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    fail(errc::convergence_failure, "mu is not stationary for the auxiliary chain");

  d.nu = r.transpose() * d.mu;
  if (std::abs(d.nu.sum() - 1.0) > 1e-10)
    fail(errc::convergence_failure, "nu does not sum to 1");

  Vector h_c = sys_c.hitting_times();
  Vector h_a = sys_a.hitting_times();
  for (int i = 0; i < na; ++i) d.e_mu_tau_c += d.mu(i) * h_c(d.a_states[i]);
  for (int j = 0; j < nc; ++j) d.e_nu_tau_a += d.nu(j) * h_a(d.c_states[j]);
  return d;
}

InequalityReport check_dist_inequality(const Chain& c, const AuxiliaryDecomposition& d) {
  const double pa = c.measure(d.a_set);
  std::ostringstream os;
  os << "pi(A)=" << pa << " E_nu[tau_A]=" << d.e_nu_tau_a << " E_mu[tau_C]=" << d.e_mu_tau_c;
  return leq_report("dist_inequality", pa * d.e_nu_tau_a, (1.0 - pa) * d.e_mu_tau_c,
                    os.str());
}

InequalityReport check_occupation_identity(const Chain& c, const AuxiliaryDecomposition& d,
                                           const StateSet& s_set) {
  const int n = c.n();
  Vector mu_full = scatter(n, d.a_states, d.mu);
  Vector nu_full = scatter(n, d.c_states, d.nu);
  const double occ = expected_occupation(c, d.c_set, s_set, mu_full) +
                     expected_occupation(c, d.a_set, s_set, nu_full);
  const double e_tau = d.e_mu_tau_c + d.e_nu_tau_a;
  const double target = c.measure(s_set) * e_tau;

  InequalityReport r;
  r.name = "occupation_identity";
  r.lhs = occ;
  r.rhs = target;
  r.slack = target - occ;
  r.holds = std::abs(occ - target) <= 1e-7 * (1.0 + std::abs(target));
  std::ostringstream os;
  os << "pi(S)=" << c.measure(s_set) << " E_mu[tau]=" << e_tau;
  r.witness = os.str();
  return r;
}

InequalityReport check_lemma_4_2(const Chain& c, const StateSet& a_set, const StateSet& b_set,
                                 const StateSet& c_set, double t_scale) {
  if (a_set.empty() || b_set.empty() || c_set.empty())
    fail(errc::empty_target, "sets must be nonempty");
  const StateSet omega = StateSet::full(c.n());
  const Vector h_a = expected_hitting_times(c, a_set).h;
  const Vector h_b = expected_hitting_times(c, b_set).h;
  const Vector h_ac = expected_hitting_times(c, a_set.unite(c_set)).h;

  auto hyp_holds = [](double lhs, double rhs) {
    return rhs - lhs >= -kIneqTol * (1.0 + std::abs(rhs));
  };
  std::string failed;
  if (!hyp_holds(d_plus(h_b, omega), t_scale)) failed = "d+(Omega,B) <= T";
  else if (!hyp_holds(d_plus(h_ac, omega), t_scale)) failed = "d+(Omega,A u C) <= T";
  else if (!hyp_holds(d_plus(h_a, omega), 99.9 * t_scale)) failed = "d+(Omega,A) <= 99.9T";
  else if (!hyp_holds(98.9 * t_scale, d_minus(h_a, b_set))) failed = "d-(B,A) >= 98.9T";

  if (!failed.empty()) {
    InequalityReport r;
    r.name = "lemma_4_2";
    r.holds = true;  // vacuous
    r.applicable = false;
    r.witness = "hypothesis failed: " + failed;
    return r;
  }
  const Vector h_c = expected_hitting_times(c, c_set).h;
  return leq_report("lemma_4_2", d_plus(h_c, b_set), 14.0 * t_scale, "hypotheses hold");
}

InequalityReport check_prop_4_1(const Chain& c) {
  HittingProfile profile = t_profile(c);
  const double t001 = profile(0.01);
  const double t002 = profile(0.02);
  const double t099 = profile(0.99);

  if (std::abs(t001 - 99.9 * t002) > 1e-6 * t002) {
    InequalityReport r;
    r.name = "prop_4_1";
    r.holds = true;  // vacuous
    r.applicable = false;
    std::ostringstream os;
    os << "hypothesis T(0.01) = 99.9 T(0.02) fails: measured ratio "
       << (t002 > 0 ? t001 / t002 : std::numeric_limits<double>::quiet_NaN());
    r.witness = os.str();
    return r;
  }
  std::ostringstream os;
  os << "T(0.01)=" << t001 << " T(0.02)=" << t002;
  return leq_report("prop_4_1", 0.1 * t002, t099, os.str());
}

}  // namespace hitmix
