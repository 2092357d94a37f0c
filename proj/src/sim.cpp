#include "hitmix/sim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hitmix/error.hpp"
#include "hitmix/rng.hpp"

namespace hitmix {

namespace {

// Per-row cumulative sums for inverse-CDF sampling, closed at 1 from the last
// positive entry so a draw can never land on a zero-probability state.
struct CumulativeRows {
  explicit CumulativeRows(const Chain& c) : n(c.n()), cum(static_cast<std::size_t>(n) * n) {
    for (int x = 0; x < n; ++x) {
      double acc = 0;
      int last_pos = 0;
      for (int y = 0; y < n; ++y) {
        acc += c.p()(x, y);
        cum[static_cast<std::size_t>(x) * n + y] = acc;
        if (c.p()(x, y) > 0) last_pos = y;
      }
      for (int y = last_pos; y < n; ++y) cum[static_cast<std::size_t>(x) * n + y] = 1.0;
    }
  }

  int sample(int x, double r) const {
    const double* row = cum.data() + static_cast<std::size_t>(x) * n;
    return static_cast<int>(std::upper_bound(row, row + n, r) - row);
  }

  int n;
  std::vector<double> cum;
};

struct Accumulator {
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  SimEstimate estimate(std::uint64_t seed) const {
    SimEstimate e;
    e.n_samples = count;
    e.seed = seed;
    e.mean = sum / static_cast<double>(count);
    if (count > 1) {
      double var = (sum_sq - static_cast<double>(count) * e.mean * e.mean) /
                   static_cast<double>(count - 1);
      e.std_error = var > 0 ? std::sqrt(var / static_cast<double>(count)) : 0.0;
    }
    return e;
  }
  double sum = 0;
  double sum_sq = 0;
  std::int64_t count = 0;
};

std::vector<char> membership(const StateSet& s) {
  std::vector<char> in(static_cast<std::size_t>(s.n()), 0);
  for (int i : s.indices()) in[static_cast<std::size_t>(i)] = 1;
  return in;
}

}  // namespace

SimEstimate simulate_hitting(const Chain& c, int start, const StateSet& target,
                             std::int64_t n_samples, std::uint64_t seed,
                             std::int64_t step_cap) {
  if (target.n() != c.n()) fail(errc::length_mismatch, "target universe does not match chain");
  if (target.empty()) fail(errc::empty_target, "target set is empty");
  if (start < 0 || start >= c.n()) fail(errc::bad_input, "start state out of range");
  if (n_samples < 1) fail(errc::parameter_out_of_range, "need at least one sample");
  if (step_cap < 1) fail(errc::parameter_out_of_range, "step cap must be >= 1");

  CumulativeRows rows(c);
  std::vector<char> in_target = membership(target);
  std::int64_t budget = step_cap;
  Accumulator acc;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rs(seed, static_cast<std::uint64_t>(i));
    int state = start;
    std::int64_t steps = 0;
    while (!in_target[static_cast<std::size_t>(state)]) {
      if (budget-- <= 0)
        fail(errc::step_cap_exceeded,
             "step cap exhausted in trajectory " + std::to_string(i));
      state = rows.sample(state, rs.next_double());
      ++steps;
    }
    acc.add(static_cast<double>(steps));
  }
  return acc.estimate(seed);
}

SimEstimate simulate_occupation(const Chain& c, const Vector& start, const StateSet& avoid,
                                const StateSet& count, std::int64_t n_samples,
                                std::uint64_t seed, std::int64_t step_cap) {
  if (avoid.n() != c.n() || count.n() != c.n())
    fail(errc::length_mismatch, "set universe does not match chain");
  if (avoid.empty()) fail(errc::empty_target, "avoid set is empty");
  if (start.size() != c.n() || start.minCoeff() < -1e-12 ||
      std::abs(start.sum() - 1.0) > 1e-9)
    fail(errc::bad_input, "start is not a probability vector over the states");
  if (n_samples < 1) fail(errc::parameter_out_of_range, "need at least one sample");
  if (step_cap < 1) fail(errc::parameter_out_of_range, "step cap must be >= 1");

  CumulativeRows rows(c);
  std::vector<char> in_avoid = membership(avoid);
  std::vector<char> in_count = membership(count);

  std::vector<double> start_cum(static_cast<std::size_t>(c.n()));
  double acc_p = 0;
  for (int i = 0; i < c.n(); ++i) {
    acc_p += start(i);
    start_cum[static_cast<std::size_t>(i)] = acc_p;
  }
  start_cum.back() = 1.0;

  std::int64_t budget = step_cap;
  Accumulator acc;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rs(seed, static_cast<std::uint64_t>(i));
    int state = static_cast<int>(
        std::upper_bound(start_cum.begin(), start_cum.end(), rs.next_double()) -
        start_cum.begin());
    std::int64_t occ = 0;
    while (!in_avoid[static_cast<std::size_t>(state)]) {
      if (budget-- <= 0)
        fail(errc::step_cap_exceeded,
             "step cap exhausted in trajectory " + std::to_string(i));
      occ += in_count[static_cast<std::size_t>(state)];
      state = rows.sample(state, rs.next_double());
    }
    acc.add(static_cast<double>(occ));
  }
  return acc.estimate(seed);
}

}  // namespace hitmix
