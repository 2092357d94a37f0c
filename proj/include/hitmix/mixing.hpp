#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hitmix/chain.hpp"

namespace hitmix {

inline constexpr std::int64_t kDefaultMixingCap = 1'000'000;

// Total variation distance: half the entrywise absolute difference, which
// equals the max over subsets of |mu(A) - nu(A)|.
double tv_distance(const Vector& mu, const Vector& nu);

// Result of one threshold scan. `time` empty means the cap was reached first.
struct MixingScan {
  std::optional<std::int64_t> time;
  std::int64_t cap = 0;
  std::vector<std::pair<std::int64_t, double>> worst_tv;  // (t, max_x TV)
};

struct MixingReport {
  MixingScan standard;  // t_mix
  MixingScan cesaro;    // t_ces
};

// Smallest t >= 0 with max_x TV(P^t(x,.), pi) <= 1/4.
MixingScan mixing_time(const Chain& c, std::int64_t cap = kDefaultMixingCap);

// Smallest t >= 1 with max_x TV((1/t) sum_{s<t} P^s(x,.), pi) <= 1/4.
// Linear scan over t; the averaged-kernel distance is not assumed monotone.
MixingScan cesaro_mixing_time(const Chain& c, std::int64_t cap = kDefaultMixingCap);

MixingReport mixing_report(const Chain& c, std::int64_t cap = kDefaultMixingCap);

}  // namespace hitmix
