#include "hitmix/mixing.hpp"

#include <cmath>

#include "hitmix/error.hpp"

namespace hitmix {

namespace {

constexpr double kThreshold = 0.25;

double worst_row_tv(const Matrix& kernel, const Vector& pi) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < kernel.rows(); ++x)
    worst = std::max(worst, 0.5 * (kernel.row(x).transpose() - pi).cwiseAbs().sum());
  return worst;
}

// matrix powers drift off the stochastic simplex over long horizons; pull
// each row back to sum 1 after every multiplication
void renormalize_rows(Matrix& m) {
  for (Eigen::Index x = 0; x < m.rows(); ++x) m.row(x) /= m.row(x).sum();
}

}  // namespace

double tv_distance(const Vector& mu, const Vector& nu) {
  if (mu.size() != nu.size()) fail(errc::length_mismatch, "distributions of different length");
  double d = 0.5 * (mu - nu).cwiseAbs().sum();
  return std::min(1.0, std::max(0.0, d));
}

MixingScan mixing_time(const Chain& c, std::int64_t cap) {
  if (cap < 1) fail(errc::parameter_out_of_range, "cap must be >= 1");
  MixingScan scan;
  scan.cap = cap;
  const int n = c.n();
  Matrix power = Matrix::Identity(n, n);
  for (std::int64_t t = 0; t <= cap; ++t) {
    double tv = worst_row_tv(power, c.pi());
    scan.worst_tv.emplace_back(t, tv);
    if (tv <= kThreshold) {
      scan.time = t;
      return scan;
    }
    power = power * c.p();
    renormalize_rows(power);
  }
  return scan;
}

MixingScan cesaro_mixing_time(const Chain& c, std::int64_t cap) {
  if (cap < 1) fail(errc::parameter_out_of_range, "cap must be >= 1");
  MixingScan scan;
  scan.cap = cap;
  const int n = c.n();
  Matrix power = Matrix::Identity(n, n);
  Matrix sum = Matrix::Zero(n, n);
  for (std::int64_t t = 1; t <= cap; ++t) {
    sum += power;
    Matrix avg = sum / static_cast<double>(t);
    double tv = worst_row_tv(avg, c.pi());
    scan.worst_tv.emplace_back(t, tv);
    if (tv <= kThreshold) {
      scan.time = t;
      return scan;
    }
    power = power * c.p();
    renormalize_rows(power);
  }
  return scan;
}

MixingReport mixing_report(const Chain& c, std::int64_t cap) {
  return MixingReport{mixing_time(c, cap), cesaro_mixing_time(c, cap)};
}

}  // namespace hitmix
