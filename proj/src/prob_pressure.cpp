#include "coverspectra/prob_pressure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"
#include "coverspectra/pressure.hpp"

namespace coverspectra {

namespace {

constexpr double kClassCap = 1e8;
constexpr uint64_t kEnumCap = 20000000;  // N^n cap for brute force

double log_binomial_classes(uint64_t n, size_t N) {
  return std::lgamma(double(n + N)) - std::lgamma(double(n + 1)) -
         std::lgamma(double(N));
}

// Inner sum of L_n in log space over type classes.
double log_sum_classes(const std::vector<TypeClass>& cls,
                       double s, double m) {
  LogSumExp acc;
  for (const TypeClass& c : cls) {
    double lf = log_one_minus_pow(c.log_p, m);
    if (lf == kNegInf) continue;
    acc.add(c.log_multiplicity + s * c.log_lambda + lf);
  }
  return acc.value();
}

}  // namespace

std::vector<TypeClass> type_classes(const IfsSpec& spec, uint64_t n) {
  const size_t N = spec.alphabet_size();
  if (log_binomial_classes(n, N - 1) > std::log(kClassCap))
    throw Error(Errc::Overflow,
                "type-class table for n = " + std::to_string(n) + ", N = " +
                    std::to_string(N) + " exceeds the 1e8 class cap");
  std::vector<TypeClass> out;
  std::vector<uint32_t> counts(N, 0);
  double lg_n1 = std::lgamma(double(n + 1));
  // enumerate compositions of n into N parts
  auto emit = [&]() {
    TypeClass c;
    c.counts = counts;
    c.n = n;
    c.log_multiplicity = lg_n1;
    for (size_t i = 0; i < N; ++i) {
      c.log_multiplicity -= std::lgamma(double(counts[i] + 1));
      c.log_lambda += double(counts[i]) * spec.log_lambda(i);
      c.log_p += double(counts[i]) * spec.log_prob(i);
    }
    out.push_back(std::move(c));
  };
  // recursive composition walk, iterative for the common N = 2, 3
  std::vector<uint64_t> rem(N, 0);
  std::function<void(size_t, uint64_t)> rec = [&](size_t idx, uint64_t left) {
    if (idx == N - 1) {
      counts[idx] = uint32_t(left);
      emit();
      return;
    }
    for (uint64_t k = 0; k <= left; ++k) {
      counts[idx] = uint32_t(k);
      rec(idx + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

uint64_t multinomial_exact(const std::vector<uint32_t>& counts) {
  uint64_t n = 0;
  for (uint32_t k : counts) n += k;
  if (n > 20)
    throw Error(Errc::TooLarge, "exact multinomial limited to n <= 20");
  uint64_t result = 1;
  uint64_t seen = 0;
  for (uint32_t k : counts) {
    for (uint32_t j = 1; j <= k; ++j) {
      ++seen;
      result = result * seen / j;  // binomial prefix products stay integral
    }
  }
  return result;
}

LnEvaluation ln_aggregated(const IfsSpec& spec, double s, uint64_t n,
                           double m) {
  if (n < 1) throw Error(Errc::ConfigError, "n must be >= 1");
  if (m < 0.0) throw Error(Errc::ConfigError, "m must be >= 0");
  LnEvaluation out;
  out.n = n;
  out.s = s;
  out.m = m;
  out.method = LnMethod::Aggregated;
  if (m == 0.0) {
    out.value = kNegInf;
    out.degenerate_m = true;
    return out;
  }
  std::vector<TypeClass> cls = type_classes(spec, n);
  out.value = log_sum_classes(cls, s, m) / double(n);
  if (m >= 1.0) {
    // the s = 0 sum dominates sum p_w = 1, so L_n(0) >= 0 must hold
    double check = log_sum_classes(cls, 0.0, m);
    if (check < -1e-9)
      throw Error(Errc::NoConvergence,
                  "mass lower bound violated: sum(1-(1-p)^m) = " +
                      std::to_string(std::exp(check)));
  }
  return out;
}

LnEvaluation ln_bruteforce(const IfsSpec& spec, double s, uint64_t n,
                           double m) {
  if (n < 1) throw Error(Errc::ConfigError, "n must be >= 1");
  const size_t N = spec.alphabet_size();
  double total = std::pow(double(N), double(n));
  if (total > double(kEnumCap))
    throw Error(Errc::TooLarge, "N^n = " + std::to_string(total) +
                                    " exceeds the enumeration cap");
  LnEvaluation out;
  out.n = n;
  out.s = s;
  out.m = m;
  out.method = LnMethod::Enumerated;
  if (m == 0.0) {
    out.value = kNegInf;
    out.degenerate_m = true;
    return out;
  }
  // DFS over Sigma_n with running log-products; same per-word factor
  // computation as the aggregated path so the two agree to ~1e-13.
  KahanSum sum;
  std::vector<uint8_t> digit(n, 0);
  std::vector<double> ll(n + 1, 0.0), lp(n + 1, 0.0);
  size_t depth = 0;
  while (true) {
    if (depth == n) {
      double lf = log_one_minus_pow(lp[n], m);
      if (lf != kNegInf) sum.add(std::exp(s * ll[n] + lf));
      // backtrack
      while (depth > 0 && digit[depth - 1] == N) --depth;
      if (depth == 0) break;
      ++digit[depth - 1];
      ll[depth] = ll[depth - 1] + spec.log_lambda(digit[depth - 1] - 1);
      lp[depth] = lp[depth - 1] + spec.log_prob(digit[depth - 1] - 1);
      continue;
    }
    digit[depth] = 1;
    ll[depth + 1] = ll[depth] + spec.log_lambda(0);
    lp[depth + 1] = lp[depth] + spec.log_prob(0);
    ++depth;
  }
  out.value = std::log(sum.value()) / double(n);
  return out;
}

double probabilistic_root_m(const IfsSpec& spec, uint64_t n, double m) {
  if (m <= 0.0) throw Error(Errc::DegenerateM, "m = 0 admits no root");
  std::vector<TypeClass> cls = type_classes(spec, n);
  auto L = [&](double s) {
    return log_sum_classes(cls, s, m) / double(n);
  };
  // L is strictly decreasing; L(0) >= 0 and the root sits below
  // s0 + log(max(m,1))/(n * -log lambda_max) + 1.
  double s0 = similarity_dimension(spec);
  double hi = s0 + std::log(std::max(m, 1.0)) /
                       (double(n) * -std::log(spec.lambda_max())) +
              1.0;
  RootResult r = bisect_decreasing(L, 0.0, hi, 1e-14);
  if (std::abs(r.residual) > 1e-11)
    throw Error(Errc::NoConvergence,
                "probabilistic pressure root residual " +
                    std::to_string(r.residual));
  return r.x;
}

double probabilistic_root(const IfsSpec& spec, double alpha, uint64_t n) {
  TargetSchedule sched = TargetSchedule::canonical(alpha, std::max<uint64_t>(n, 1));
  double m = sched.m_real(int64_t(n));
  if (!(m >= 1.0))
    throw Error(Errc::DegenerateM,
                "canonical m(" + std::to_string(n) + ") = 0 at alpha = " +
                    std::to_string(alpha));
  return probabilistic_root_m(spec, n, m);
}

std::vector<ConvergenceRow> convergence_report(
    const IfsSpec& spec, double alpha, const std::vector<uint64_t>& n_list) {
  std::vector<uint64_t> ns = n_list;
  std::sort(ns.begin(), ns.end());
  TargetSchedule sched = TargetSchedule::canonical(alpha, 1);
  double s_alpha = spectrum_s(spec, alpha);
  std::vector<ConvergenceRow> rows;
  for (uint64_t n : ns) {
    double m = sched.m_real(int64_t(n));
    if (!(m >= 1.0)) continue;  // degenerate level, excluded from roots
    ConvergenceRow row;
    row.n = n;
    row.m_n = m;
    row.s_n = probabilistic_root_m(spec, n, m);
    row.s_n_exp = probabilistic_root_m(spec, n, std::exp(alpha * double(n)));
    row.s_alpha = s_alpha;
    row.gap = std::abs(row.s_n - s_alpha);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coverspectra
