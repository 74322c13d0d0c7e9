#ifndef COVERSPECTRA_PROB_PRESSURE_HPP
#define COVERSPECTRA_PROB_PRESSURE_HPP

#include <cstdint>
#include <vector>

#include "coverspectra/ifs.hpp"
#include "coverspectra/schedule.hpp"

namespace coverspectra {

/// One digit-count class of words of length n: both lambda_w and p_w depend
/// on a word only through these counts, so sums over Sigma_n collapse to
/// C(n+N-1, N-1) classes.
struct TypeClass {
  std::vector<uint32_t> counts;
  uint64_t n = 0;
  double log_multiplicity = 0.0;  // log of the multinomial coefficient
  double log_lambda = 0.0;        // sum counts[i] * log lambda_i
  double log_p = 0.0;             // sum counts[i] * log p_i
};

/// All classes for word length n over an alphabet of size N.
/// Throws Overflow when the class count would exceed 10^8.
std::vector<TypeClass> type_classes(const IfsSpec& spec, uint64_t n);

/// Exact multinomial coefficient for small n (cross-check path).
uint64_t multinomial_exact(const std::vector<uint32_t>& counts);

enum class LnMethod { Aggregated, Enumerated };

/// Finite-n probabilistic pressure
///   L_n(s) = (1/n) log sum_{|w|=n} lambda_w^s (1 - (1-p_w)^m).
/// m may be any nonnegative real (the alternative form uses m = e^{alpha n}).
/// m == 0 collapses the sum; the value is then -inf and degenerate_m is set.
struct LnEvaluation {
  uint64_t n = 0;
  double s = 0.0;
  double m = 0.0;
  double value = 0.0;
  LnMethod method = LnMethod::Aggregated;
  bool degenerate_m = false;
};

/// Type-class aggregated evaluation; polynomial in n for fixed N.
LnEvaluation ln_aggregated(const IfsSpec& spec, double s, uint64_t n,
                           double m);

/// Direct enumeration of Sigma_n with compensated summation; the oracle for
/// the aggregated path. Throws TooLarge when N^n > 2*10^7.
LnEvaluation ln_bruteforce(const IfsSpec& spec, double s, uint64_t n,
                           double m);

/// Root s_n of L_n(s_n) = 0 for a given multiplicity (L_n is strictly
/// decreasing in s). |L_n(s_n)| <= 1e-11.
double probabilistic_root_m(const IfsSpec& spec, uint64_t n, double m);

/// Root with m = m(n) drawn from the canonical schedule for this alpha.
/// Throws DegenerateM when m(n) == 0.
double probabilistic_root(const IfsSpec& spec, double alpha, uint64_t n);

struct ConvergenceRow {
  uint64_t n = 0;
  double m_n = 0.0;
  double s_n = 0.0;        // root using the schedule multiplicity m(n)
  double s_n_exp = 0.0;    // root using the alternative exponent e^{alpha n}
  double s_alpha = 0.0;    // analytic spectrum value
  double gap = 0.0;        // |s_n - s_alpha|
};

/// Finite-n roots toward s(alpha), sorted by n. Rows whose canonical m(n)
/// vanishes are excluded (flagged by the caller-facing CLI as degenerate).
std::vector<ConvergenceRow> convergence_report(
    const IfsSpec& spec, double alpha, const std::vector<uint64_t>& n_list);

}  // namespace coverspectra

#endif
