#include "hitmix/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "hitmix/error.hpp"
#include "hitmix/hitting.hpp"

namespace hitmix {

namespace {

struct MaskValue {
  double value;  // max_x E_x[tau_mask]
  int start;     // smallest argmax
};

// Worst-start hitting value of one subset; small dedicated solve so subset
// sweeps do not pay the StateSet/AbsorptionSystem overhead per mask.
MaskValue mask_value(const Chain& c, std::uint32_t mask) {
  const int n = c.n();
  std::vector<int> free_states;
  free_states.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (((mask >> i) & 1u) == 0) free_states.push_back(i);
  const int m = static_cast<int>(free_states.size());
  if (m == 0) return {0.0, 0};
  Matrix a = Matrix::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) -= c.p()(free_states[i], free_states[j]);
  Vector h = a.partialPivLu().solve(Vector::Ones(m));
  int best = 0;
  for (int i = 1; i < m; ++i)
    if (h(i) > h(best)) best = i;
  // states inside the target have value 0; the max is attained outside,
  // smallest index first within the solve order (ascending state index)
  return {h(best), free_states[best]};
}

void require_enumerable(const Chain& c) {
  if (c.n() > kEnumerationCap)
    fail(errc::state_count_cap, "subset enumeration is capped at 24 states");
}

double mask_measure(const Vector& pi, std::uint32_t mask) {
  double m = 0;
  while (mask != 0) {
    std::uint32_t low = mask & (mask - 1);
    m += pi(static_cast<int>(std::countr_zero(mask ^ low)));
    mask = low;
  }
  return m;
}

double mask_min_pi(const Vector& pi, std::uint32_t mask) {
  double m = std::numeric_limits<double>::infinity();
  while (mask != 0) {
    std::uint32_t low = mask & (mask - 1);
    m = std::min(m, pi(static_cast<int>(std::countr_zero(mask ^ low))));
    mask = low;
  }
  return m;
}

}  // namespace

double HittingProfile::operator()(double alpha) const {
  const double threshold = alpha - kMeasureSlack;
  auto it = std::lower_bound(bps_.begin(), bps_.end(), threshold,
                             [](const Breakpoint& b, double t) { return b.measure < t; });
  if (it == bps_.end()) return 0.0;  // alpha beyond every measure incl. 1
  return it->value;
}

ExtremalWitness t_alpha(const Chain& c, double alpha) {
  require_enumerable(c);
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(errc::parameter_out_of_range, "alpha must lie in (0,1)");
  const int n = c.n();
  const Vector& pi = c.pi();
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;

  double best_value = -1.0;
  std::uint32_t best_mask = 0;
  int best_start = 0;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    double meas = mask_measure(pi, mask);
    if (meas < alpha - kMeasureSlack) continue;
    // inclusion-minimal only: dropping any single state must break
    // admissibility, otherwise the subset dominates this target.
    // singletons have no nonempty subset and are always minimal.
    if (std::popcount(mask) > 1 && meas - mask_min_pi(pi, mask) >= alpha - kMeasureSlack)
      continue;
    MaskValue mv = mask_value(c, mask);
    if (mv.value > best_value) {
      best_value = mv.value;
      best_mask = mask;
      best_start = mv.start;
    }
    // ties keep the earlier (smaller) mask, then the smaller start
  }
  if (best_mask == 0) {
    // only Omega qualifies and it was not minimal; T(alpha) = 0 by definition
    best_mask = all;
    best_value = 0.0;
    best_start = 0;
  }
  return ExtremalWitness{alpha, StateSet::from_mask(n, best_mask), best_start, best_value};
}

HittingProfile t_profile(const Chain& c) {
  require_enumerable(c);
  const int n = c.n();
  const Vector& pi = c.pi();
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;

  std::vector<HittingProfile::Breakpoint> pts;
  pts.reserve(all);
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    double meas = mask == all ? 1.0 : mask_measure(pi, mask);
    pts.push_back({meas, mask == all ? 0.0 : mask_value(c, mask).value});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.measure < b.measure;
  });

  // collapse equal measures, then suffix maxima so T(.) is a decreasing step
  std::vector<HittingProfile::Breakpoint> merged;
  for (const auto& p : pts) {
    if (!merged.empty() && merged.back().measure == p.measure)
      merged.back().value = std::max(merged.back().value, p.value);
    else
      merged.push_back(p);
  }
  double running = 0.0;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    running = std::max(running, it->value);
    it->value = running;
  }
  return HittingProfile(std::move(merged));
}

double t_prod(const Chain& c) {
  require_enumerable(c);
  const int n = c.n();
  const Vector& pi = c.pi();
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    double v = mask_measure(pi, mask) * mask_value(c, mask).value;
    best = std::max(best, v);
  }
  return best;
}

}  // namespace hitmix
