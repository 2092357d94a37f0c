#pragma once

#include <cstdint>

#include "hitmix/chain.hpp"

namespace hitmix {

// Irreducibility makes hitting a.s. finite, but a misconfigured run must
// terminate: total step budget per run.
inline constexpr std::int64_t kDefaultStepCap = 100'000'000;

struct SimEstimate {
  double mean = 0;
  double std_error = 0;  // sample sd / sqrt(n_samples)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo mean of tau_target from `start` over n_samples trajectories.
// Trajectory i draws from the counter-based stream (seed, i), so results are
// bit-identical across runs and schedules.
SimEstimate simulate_hitting(const Chain& c, int start, const StateSet& target,
                             std::int64_t n_samples, std::uint64_t seed,
                             std::int64_t step_cap = kDefaultStepCap);

// Monte Carlo mean of the time spent in `count` strictly before tau_avoid,
// with the initial state drawn from `start`.
SimEstimate simulate_occupation(const Chain& c, const Vector& start, const StateSet& avoid,
                                const StateSet& count, std::int64_t n_samples,
                                std::uint64_t seed, std::int64_t step_cap = kDefaultStepCap);

}  // namespace hitmix
