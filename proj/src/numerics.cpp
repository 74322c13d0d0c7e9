#include "coverspectra/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "coverspectra/errors.hpp"

namespace coverspectra {

double log_sum_exp(std::span<const double> terms) {
  double mx = kNegInf;
  for (double t : terms)
    if (t > mx) mx = t;
  if (mx == kNegInf) return kNegInf;
  KahanSum acc;
  for (double t : terms)
    if (t != kNegInf) acc.add(std::exp(t - mx));
  return mx + std::log(acc.value());
}

double LogSumExp::value() const {
  if (terms_.empty()) return kNegInf;
  KahanSum acc;
  for (double t : terms_) acc.add(std::exp(t - max_));
  return max_ + std::log(acc.value());
}

double log_one_minus_pow(double log_p, double m) {
  if (m <= 0.0) return kNegInf;
  if (log_p >= 0.0) return 0.0;  // p == 1: factor is exactly 1
  // log(1-p) without cancellation; below exp's denormal range log1p(-e^x) = -e^x
  double l1p = (log_p < -37.0) ? -std::exp(log_p) : std::log1p(-std::exp(log_p));
  double t = m * l1p;          // = log((1-p)^m), <= 0
  if (t < -745.0) return 0.0;  // (1-p)^m underflows entirely; factor == 1
  return std::log(-std::expm1(t));
}

RootResult bisect_decreasing(const std::function<double(double)>& f, double lo,
                             double hi, double xtol, int max_expand) {
  double flo = f(lo);
  double fhi = f(hi);
  int expand = 0;
  double width = hi - lo;
  while (flo < 0.0) {
    hi = lo;
    fhi = flo;
    lo -= width;
    width *= 2.0;
    flo = f(lo);
    if (++expand > max_expand)
      throw Error(Errc::NoConvergence,
                  "no sign change while expanding left bracket");
  }
  while (fhi > 0.0) {
    lo = hi;
    flo = fhi;
    hi += width;
    width *= 2.0;
    fhi = f(hi);
    if (++expand > max_expand)
      throw Error(Errc::NoConvergence,
                  "no sign change while expanding right bracket");
  }
  RootResult r;
  while (hi - lo > xtol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // hit double resolution
    double fm = f(mid);
    ++r.iterations;
    if (fm >= 0.0)
      lo = mid;
    else
      hi = mid;
    if (r.iterations > 2000)
      throw Error(Errc::NoConvergence, "bisection failed to contract");
  }
  r.x = 0.5 * (lo + hi);
  r.residual = f(r.x);
  return r;
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double xtol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {  // ties toward smaller argument
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace coverspectra
