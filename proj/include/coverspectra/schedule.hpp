#ifndef COVERSPECTRA_SCHEDULE_HPP
#define COVERSPECTRA_SCHEDULE_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace coverspectra {

/// Target-length schedule l(n): monotone nondecreasing, diverging, l(n) >= 1.
///
/// The canonical rule is l(n) = max(1, ceil(ln n / alpha)), so that
/// l(n)/ln n -> 1/alpha. Level sets l^{-1}(k) are integer intervals; the
/// multiplicity m(k) = floor(#l^{-1}(k) / k) counts the disjoint length-k
/// reading frames inside level k. m(k) grows like e^{alpha k}/k, so beyond
/// the integer-safe range the exact count is unavailable, but log m(k) and a
/// double-precision m(k) remain valid (the floor correction is negligible
/// there). Custom tabulated rules are supported for experiments.
class TargetSchedule {
 public:
  struct LevelSet {
    uint64_t lo, hi;  // inclusive interval
    uint64_t count() const { return hi - lo + 1; }
  };

  /// Canonical rule for growth exponent alpha > 0; the per-level table is
  /// precomputed to cover [1, n_max]. Throws AlphaNonPositive.
  static TargetSchedule canonical(double alpha, uint64_t n_max);

  /// Explicit rule from tabulated values l(1), l(2), ...; must be monotone
  /// nondecreasing and >= 1.
  static TargetSchedule from_values(std::vector<int64_t> values, double alpha);

  int64_t ell(uint64_t n) const;
  /// l^{-1}(k) as an interval; nullopt when the level set is empty.
  std::optional<LevelSet> level_set(int64_t k) const;
  /// #l^{-1}(k); 0 when empty. Throws TooLarge beyond the integer-safe range.
  uint64_t level_count(int64_t k) const;
  /// m(k) = floor(#l^{-1}(k)/k), exact integer. Throws TooLarge when the
  /// level endpoints exceed 2^62.
  uint64_t m_exact(int64_t k) const;
  /// m(k) as a double; exact when small, analytic continuation when huge.
  double m_real(int64_t k) const;
  /// ln m(k); -inf when m(k) == 0.
  double log_m(int64_t k) const;

  double alpha() const { return alpha_; }
  uint64_t n_max() const { return n_max_; }
  bool is_canonical() const { return values_.empty(); }

  /// Levels whose table rows cover [1, n_max]; for the partition tests.
  int64_t max_tabulated_level() const;

 private:
  TargetSchedule() = default;

  bool integer_safe(int64_t k) const;

  double alpha_ = 0.0;
  uint64_t n_max_ = 0;
  std::vector<int64_t> values_;  // empty for the canonical rule
};

}  // namespace coverspectra

#endif
