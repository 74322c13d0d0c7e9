#ifndef COVERSPECTRA_NUMERICS_HPP
#define COVERSPECTRA_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace coverspectra {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Compensated accumulator (Kahan-Neumaier). Used wherever sums exceed a few
// thousand terms so that aggregation order does not bleed into low digits.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(sum(exp(terms))) with max-shift; -inf terms are skipped.
double log_sum_exp(std::span<const double> terms);

// Streaming variant: feed log-terms one at a time.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    terms_.push_back(log_term);
    if (log_term > max_) max_ = log_term;
  }
  double value() const;
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<double> terms_;
  double max_ = kNegInf;
};

// log(1 - (1-p)^m) for p in (0,1], real m >= 0. Stable across ~30 orders of
// magnitude of p: composed from log1p/expm1 so that m*p << 1 keeps full
// precision (log(m*p) regime) and m*p >> 1 saturates cleanly to 0.
double log_one_minus_pow(double log_p, double m);

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Bisection for a strictly decreasing function f with f(lo) >= 0 >= f(hi).
// The bracket is expanded geometrically if the initial signs do not match;
// throws Errc::NoConvergence after `max_expand` doublings.
RootResult bisect_decreasing(const std::function<double(double)>& f, double lo,
                             double hi, double xtol = 1e-13,
                             int max_expand = 200);

// Golden-section minimum of a scalar function on [a, b] to width `xtol`.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double xtol = 1e-10);

}  // namespace coverspectra

#endif
