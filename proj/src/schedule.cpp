#include "coverspectra/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"

namespace coverspectra {

namespace {
constexpr double kIntSafe = 4.0e18;  // endpoints below this fit uint64 exactly
}

TargetSchedule TargetSchedule::canonical(double alpha, uint64_t n_max) {
  if (!(alpha > 0.0))
    throw Error(Errc::AlphaNonPositive,
                "alpha = " + std::to_string(alpha) + " must be positive");
  if (n_max < 1) throw Error(Errc::ConfigError, "n_max must be >= 1");
  TargetSchedule s;
  s.alpha_ = alpha;
  s.n_max_ = n_max;
  return s;
}

TargetSchedule TargetSchedule::from_values(std::vector<int64_t> values,
                                           double alpha) {
  if (values.empty()) throw Error(Errc::ConfigError, "empty schedule table");
  int64_t prev = 1;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < prev)
      throw Error(Errc::ConfigError,
                  "schedule values must be monotone nondecreasing and >= 1");
    prev = values[i];
  }
  TargetSchedule s;
  s.alpha_ = alpha;
  s.n_max_ = values.size();
  s.values_ = std::move(values);
  return s;
}

int64_t TargetSchedule::ell(uint64_t n) const {
  if (n == 0) throw Error(Errc::ConfigError, "schedule index starts at 1");
  if (!values_.empty()) {
    if (n > values_.size())
      throw Error(Errc::TooLarge, "tabulated schedule ends at n = " +
                                      std::to_string(values_.size()));
    return values_[n - 1];
  }
  if (n == 1) return 1;
  double k = std::ceil(std::log(double(n)) / alpha_);
  int64_t ki = int64_t(k);
  // ceil on doubles can misplace n at a level boundary; nudge using the
  // defining inequality e^{alpha(k-1)} < n <= e^{alpha k}
  while (ki > 1 && double(n) <= std::exp(alpha_ * double(ki - 1))) --ki;
  while (double(n) > std::exp(alpha_ * double(ki))) ++ki;
  return std::max<int64_t>(1, ki);
}

bool TargetSchedule::integer_safe(int64_t k) const {
  return values_.empty() ? std::exp(alpha_ * double(k)) < kIntSafe : true;
}

std::optional<TargetSchedule::LevelSet> TargetSchedule::level_set(
    int64_t k) const {
  if (k < 1) return std::nullopt;
  if (!values_.empty()) {
    auto lo = std::lower_bound(values_.begin(), values_.end(), k);
    if (lo == values_.end() || *lo != k) return std::nullopt;
    auto hi = std::upper_bound(values_.begin(), values_.end(), k);
    return LevelSet{uint64_t(lo - values_.begin()) + 1,
                    uint64_t(hi - values_.begin())};
  }
  if (!integer_safe(k))
    throw Error(Errc::TooLarge,
                "level " + std::to_string(k) + " endpoints exceed 2^62");
  uint64_t lo;
  if (k == 1) {
    lo = 1;
  } else {
    lo = uint64_t(std::floor(std::exp(alpha_ * double(k - 1)))) + 1;
    while (lo > 1 && ell(lo - 1) >= k) --lo;
    while (ell(lo) < k) ++lo;
  }
  uint64_t hi = std::max<uint64_t>(lo, uint64_t(std::floor(std::exp(alpha_ * double(k)))));
  while (hi > lo && ell(hi) > k) --hi;
  while (ell(hi + 1) <= k) ++hi;
  if (ell(lo) != k || ell(hi) != k || lo > hi) return std::nullopt;
  return LevelSet{lo, hi};
}

uint64_t TargetSchedule::level_count(int64_t k) const {
  auto ls = level_set(k);
  return ls ? ls->count() : 0;
}

uint64_t TargetSchedule::m_exact(int64_t k) const {
  if (k < 1) return 0;
  return level_count(k) / uint64_t(k);
}

double TargetSchedule::m_real(int64_t k) const {
  if (k < 1) return 0.0;
  if (integer_safe(k)) return double(m_exact(k));
  // analytic: #l^{-1}(k) = e^{alpha k} - e^{alpha(k-1)} up to O(1)
  return std::exp(log_m(k));
}

double TargetSchedule::log_m(int64_t k) const {
  if (k < 1) return kNegInf;
  if (integer_safe(k)) {
    uint64_t m = m_exact(k);
    return m == 0 ? kNegInf : std::log(double(m));
  }
  return alpha_ * double(k) + std::log1p(-std::exp(-alpha_)) -
         std::log(double(k));
}

int64_t TargetSchedule::max_tabulated_level() const {
  return ell(n_max_);
}

}  // namespace coverspectra
