// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hitmix/chain.hpp"
#include "hitmix/constructors.hpp"
#include "hitmix/error.hpp"
#include "hitmix/extremal.hpp"
#include "hitmix/hitting.hpp"
#include "hitmix/mixing.hpp"
#include "hitmix/sim.hpp"
#include "hitmix/verifiers.hpp"
#include "support.hpp"

using namespace hitmix;
using namespace hitmix::test;

namespace {

struct Criterion {
  int id;
  std::string label;
  std::function<bool(std::string&)> run;
};

bool rel_eq(double got, double want, double tol) {
  return std::abs(got - want) <= tol * (1.0 + std::abs(want));
}

// 1: the three-state chain attains T(0.25) = 4, T(0.4) = 1 and equality in
// the inequality chain at (alpha, beta) = (0.25, 0.4)
bool crit_three_state(std::string& detail) {
  Chain c = three_state_tight(0.25, 0.05);
  HittingProfile p = t_profile(c);
  double t_beta = p(0.4), t_alpha_v = p(0.25), t_rest = p(0.6);
  double mid = t_beta + 3.0 * t_rest;
  double right = t_beta / 0.25;
  detail = "T(0.4)=" + std::to_string(t_beta) + " T(0.25)=" + std::to_string(t_alpha_v);
  return rel_eq(t_beta, 1.0, 1e-9) && rel_eq(t_alpha_v, 4.0, 1e-9) &&
         rel_eq(t_alpha_v, mid, 1e-9) && rel_eq(t_alpha_v, right, 1e-9);
}

// 2: the two-state counterexample has T(0.7) = 0 and T(0.5) = 400
bool crit_two_state(std::string& detail) {
  Chain c = two_state_counterexample(0.6, 1000);
  double t07 = t_alpha(c, 0.7).value;
  double t05 = t_alpha(c, 0.5).value;
  detail = "T(0.7)=" + std::to_string(t07) + " T(0.5)=" + std::to_string(t05);
  return std::abs(t07) <= 1e-9 && rel_eq(t05, 400.0, 1e-9) && t05 >= 400.0 * (1.0 - 1e-9);
}

// 3: no violation of either star inequality over 1000 chains x 10x10 grid
bool crit_star_sweep(std::string& detail) {
  long cases = 0, violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    RngStream rng(301, static_cast<std::uint64_t>(rep));
    Chain c = random_chain(2 + rep % 6, rng);
    HittingProfile profile = t_profile(c);
    for (int j = 1; j <= 10; ++j) {
      double beta = j / 20.0;
      for (int i = 1; i <= 10; ++i) {
        double alpha = beta * i / 11.0;
        StarReport sr = check_star(profile, alpha, beta);
        ++cases;
        if (!sr.holds()) ++violations;
      }
    }
  }
  detail = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations";
  return violations == 0 && cases == 100000;
}

// 4: ratio bound over every ordered pair of nonempty subsets, 500 chains
bool crit_ratio_exhaustive(std::string& detail) {
  long cases = 0, violations = 0;
  for (int rep = 0; rep < 500; ++rep) {
    RngStream rng(401, static_cast<std::uint64_t>(rep));
    int n = 2 + rep % 5;
    Chain c = random_chain(n, rng);
    const std::uint32_t all = (1u << n) - 1;
    for (std::uint32_t am = 1; am <= all; ++am) {
      StateSet a = StateSet::from_mask(n, am);
      for (std::uint32_t cm = 1; cm <= all; ++cm) {
        ++cases;
        if (!check_ratio_bound(c, a, StateSet::from_mask(n, cm)).holds) ++violations;
      }
    }
  }
  detail = std::to_string(cases) + " pairs, " + std::to_string(violations) + " violations";
  return violations == 0;
}

// 5: cycle inequality and occupation identity over all disjoint pairs
bool crit_dist_occupation(std::string& detail) {
  long cases = 0, dist_violations = 0, occ_violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    RngStream rng(501, static_cast<std::uint64_t>(rep));
    int n = 2 + rep % 5;
    Chain c = random_chain(n, rng);
    const std::uint32_t all = (1u << n) - 1;
    for (std::uint32_t am = 1; am <= all; ++am) {
      for (std::uint32_t cm = 1; cm <= all; ++cm) {
        if ((am & cm) != 0) continue;
        StateSet a = StateSet::from_mask(n, am);
        StateSet cs = StateSet::from_mask(n, cm);
        AuxiliaryDecomposition d = auxiliary_decomposition(c, a, cs);
        ++cases;
        if (!check_dist_inequality(c, d).holds) ++dist_violations;
        if (!check_occupation_identity(c, d, a).holds) ++occ_violations;
      }
    }
  }
  detail = std::to_string(cases) + " pairs, " + std::to_string(dist_violations) + "+" +
           std::to_string(occ_violations) + " violations";
  return dist_violations == 0 && occ_violations == 0;
}

// 6: L-shaped chains realize their step function off the error set, and the
// construction conditions hold to 1e-9
bool crit_l_shaped(std::string& detail) {
  long grid_checks = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(601, static_cast<std::uint64_t>(rep));
    HittableStepSpec spec = random_hittable_spec(rng, 1 + rep % 3);
    LShapedChain lc = build_l_shaped_with_retry(spec);

    LShapedResiduals res = verify_l_shaped(lc);
    if (res.stationary > 1e-9 || res.return_time > 1e-9 || res.return_time_max > 1e-9 ||
        res.ladder > 1e-9) {
      detail = "conditions failed at spec " + std::to_string(rep);
      return false;
    }

    ErrorSet err = error_set(lc.spec);
    HittingProfile profile = t_profile(lc.chain);
    double t_half = profile(0.5);
    for (int g = 1; g <= 50; ++g) {
      double alpha = 0.5 * g / 50.0;
      if (err.distance(alpha) <= 1e-6) continue;
      double want = lc.spec.step_value(alpha);
      double got = profile(alpha) / t_half;
      ++grid_checks;
      if (!(std::abs(got - want) <= 1e-6 * std::abs(want))) {
        detail = "spec " + std::to_string(rep) + " alpha " + std::to_string(alpha) +
                 ": got " + std::to_string(got) + " want " + std::to_string(want);
        return false;
      }
    }
  }
  detail = std::to_string(grid_checks) + " grid points matched";
  return grid_checks > 2000;
}

// 7: the window formula agrees with brute-force enumeration wherever valid
bool crit_window_formula(std::string& detail) {
  long checks = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(601, static_cast<std::uint64_t>(rep));  // same specs as criterion 6
    HittableStepSpec spec = random_hittable_spec(rng, 1 + rep % 3);
    LShapedChain lc = build_l_shaped_with_retry(spec);
    for (int g = 1; g <= 50; ++g) {
      double alpha = 0.5 * g / 50.0;
      double formula;
      try {
        formula = l_shaped_t_formula(lc, alpha);
      } catch (const Error& e) {
        if (e.code() == errc::window_violation) continue;
        throw;
      }
      double brute = t_alpha(lc.chain, alpha).value;
      ++checks;
      if (!(std::abs(formula - brute) <= 1e-8 * (1.0 + std::abs(brute)))) {
        detail = "spec " + std::to_string(rep) + " alpha " + std::to_string(alpha);
        return false;
      }
    }
  }
  detail = std::to_string(checks) + " window-valid points matched";
  return checks > 2000;
}

// 8: T(1/2)/2 <= t_prod <= T(1/2) on lazy chains
bool crit_sandwich(std::string& detail) {
  long violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    RngStream rng(801, static_cast<std::uint64_t>(rep));
    Chain c = lazify(random_chain(2 + rep % 6, rng));
    double half = t_alpha(c, 0.5).value;
    double prod = t_prod(c);
    bool lower = prod >= half / 2 - 1e-9 * (1.0 + half);
    bool upper = prod <= half + 1e-9 * (1.0 + half);
    if (!lower || !upper) ++violations;
  }
  detail = "200 lazy chains, " + std::to_string(violations) + " violations";
  return violations == 0;
}

// 9: mixing definitions on the symmetric two-state chain; TV against the
// subset-maximization oracle up to n = 10
bool crit_mixing(std::string& detail) {
  Chain c = make_chain({{0.5, 0.5}, {0.5, 0.5}});
  MixingScan mix = mixing_time(c, 100);
  MixingScan ces = cesaro_mixing_time(c, 100);
  if (!mix.time.has_value() || *mix.time != 1) {
    detail = "t_mix != 1";
    return false;
  }
  if (!ces.time.has_value() || *ces.time != 2) {
    detail = "t_ces != 2";
    return false;
  }
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(901, static_cast<std::uint64_t>(rep));
    int n = 2 + rep % 9;
    Vector mu = random_distribution(n, rng);
    Vector nu = random_distribution(n, rng);
    if (std::abs(tv_distance(mu, nu) - oracle_tv_subsets(mu, nu)) > 1e-12) {
      detail = "tv mismatch at rep " + std::to_string(rep);
      return false;
    }
  }
  detail = "t_mix=1 t_ces=2, 100 tv oracles matched";
  return true;
}

// 10: Monte Carlo agreement and determinism
bool crit_monte_carlo(std::string& detail) {
  int within = 0;
  const int configs = 50;
  SimEstimate first_run{}, second_run{};
  for (int rep = 0; rep < configs; ++rep) {
    RngStream rng(1001, static_cast<std::uint64_t>(rep));
    int n = 2 + static_cast<int>(rng.next_below(7));
    Chain c = random_chain(n, rng);
    std::uint32_t mask = 1 + static_cast<std::uint32_t>(rng.next_below((1u << n) - 1));
    StateSet target = StateSet::from_mask(n, mask);
    int start = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    double exact = expected_hitting_times(c, target).h(start);
    SimEstimate est = simulate_hitting(c, start, target, 100000, 7000 + rep);
    if (std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-12) ++within;
    if (rep == 0) {
      first_run = est;
      second_run = simulate_hitting(c, start, target, 100000, 7000);
    }
  }
  bool deterministic =
      first_run.mean == second_run.mean && first_run.std_error == second_run.std_error;
  detail = std::to_string(within) + "/50 within 3 SE, deterministic=" +
           (deterministic ? "yes" : "no");
  return within >= 47 && deterministic;
}

// 11: a step spec realizes T(0.01) = 99.9 T(0.02); the 0.1 T(0.02) bound on
// T(0.99) then holds
bool crit_ratio_construction(std::string& detail) {
  HittableStepSpec spec;
  spec.alphas = {0.02, 0.01};
  const double lam1 = 0.001;
  spec.lambdas = {lam1, 98.9 * (1.0 + lam1)};
  spec.epsilon = 0.005;
  spec.big_n = 1e6;
  LShapedChain lc = build_l_shaped_with_retry(spec);

  HittingProfile p = t_profile(lc.chain);
  double t001 = p(0.01), t002 = p(0.02), t099 = p(0.99);
  bool equality = std::abs(t001 - 99.9 * t002) <= 1e-6 * t002;
  bool conclusion = t099 >= 0.1 * t002 * (1.0 - 1e-9);
  InequalityReport r = check_prop_4_1(lc.chain);
  detail = "ratio=" + std::to_string(t001 / t002) + " T(0.99)/T(0.02)=" +
           std::to_string(t099 / t002);
  return equality && conclusion && r.applicable && r.holds;
}

// 12: the level-4 dyadic discretization of the clipped extremal shape is
// realized off the error set (shape normalized to value 1 at measure 1/2)
bool crit_dyadic_approximant(std::string& detail) {
  auto f_raw = [](double a) { return std::min(1.0 / a, 5.0); };
  const double scale = f_raw(0.5);
  auto g = [&](double a) { return f_raw(a) / scale; };
  const int level = 4;

  HittableStepSpec spec = dyadic_discretize(g, level, 1e4);
  LShapedChain lc = build_l_shaped_with_retry(spec);
  ErrorSet err = error_set(lc.spec);
  HittingProfile profile = t_profile(lc.chain);
  double t_half = profile(0.5);

  long checks = 0;
  for (int j = 1; j <= 100; ++j) {
    double alpha = 0.5 * j / 100.0;
    if (err.contains(alpha, 1e-9)) continue;
    double grid_point = std::ceil(std::ldexp(alpha, level)) * std::ldexp(1.0, -level);
    double want = g(grid_point);  // f_n at alpha, normalized
    double got = profile(alpha) / t_half;
    ++checks;
    if (!(std::abs(got - want) <= 1e-6 * std::abs(want))) {
      detail = "alpha " + std::to_string(alpha) + ": got " + std::to_string(got) +
               " want " + std::to_string(want);
      return false;
    }
  }
  detail = std::to_string(checks) + " grid points matched (k=" + std::to_string(spec.k()) +
           ")";
  return checks >= 80;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "three-state tightness", crit_three_state},
      {2, "two-state counterexample", crit_two_state},
      {3, "star-inequality sweep (1000 chains, 10x10 grid)", crit_star_sweep},
      {4, "ratio bound, exhaustive pairs (500 chains)", crit_ratio_exhaustive},
      {5, "cycle inequality + occupation identity (200 chains)", crit_dist_occupation},
      {6, "L-shaped realization (100 specs)", crit_l_shaped},
      {7, "window formula vs brute force (100 specs)", crit_window_formula},
      {8, "product sandwich on lazy chains (200 chains)", crit_sandwich},
      {9, "mixing definitions + TV oracle", crit_mixing},
      {10, "Monte Carlo agreement (50 configs)", crit_monte_carlo},
      {11, "ratio-99.9 construction and conclusion", crit_ratio_construction},
      {12, "dyadic approximant, level 4", crit_dyadic_approximant},
  };

  int failures = 0;
  for (auto& crit : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = crit.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", crit.id,
                crit.label.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
