#ifndef COVERSPECTRA_ORBIT_SIM_HPP
#define COVERSPECTRA_ORBIT_SIM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coverspectra/cover_trie.hpp"
#include "coverspectra/ifs.hpp"
#include "coverspectra/schedule.hpp"

namespace coverspectra {

/// Outcome of one covering run: the targets (sigma^n o)|_{l(n)} for
/// tail_start <= n <= horizon are inserted into a trie and read off at a
/// fixed counting depth.
struct CoverageReport {
  double alpha = 0.0;
  uint64_t horizon = 0;
  size_t depth = 0;
  uint64_t tail_start = 0;
  uint64_t seed = 0;
  uint64_t covered_count = 0;
  uint64_t total = 0;  // N^depth
  double coverage_fraction = 0.0;
  // named weight vectors: "P_p" (sampling measure), "Q0" (lambda_i^{s0},
  // comparable to the s0-Hausdorff measure), "uniform"
  std::map<std::string, double> covered_measure;
  std::optional<double> complement_exponent;
};

/// Simulates the covering process from a seeded orbit with the canonical
/// schedule. Deterministic per (spec, alpha, horizon, depth, tail_start,
/// seed). Throws DepthTooLarge when N^depth exceeds 2*10^7.
CoverageReport run_cover(const IfsSpec& spec, double alpha, uint64_t horizon,
                         size_t depth, uint64_t tail_start, uint64_t seed);

/// Same run against an explicit digit sequence and schedule (for handcrafted
/// experiments and tests). The orbit must extend to horizon + l(horizon).
CoverageReport run_cover_orbit(const IfsSpec& spec,
                               const std::vector<uint8_t>& orbit,
                               const TargetSchedule& schedule,
                               uint64_t horizon, size_t depth,
                               uint64_t tail_start);

/// Fills the trie from a covering run; shared by both entry points.
void cover_targets(CoverTrie& trie, const IfsSpec& spec,
                   const TargetSchedule& schedule, uint64_t tail_start,
                   uint64_t horizon, uint64_t seed);

/// Horizon policy for threshold experiments: either a fixed horizon or the
/// growth rule ceil(e^{alpha * exponent_factor}); the tail starts at
/// max(1, tail_fraction * horizon) unless fixed_tail is set.
struct HorizonRule {
  double exponent_factor = 0.0;
  uint64_t fixed_horizon = 0;
  double tail_fraction = 0.5;
  uint64_t fixed_tail = 0;

  uint64_t horizon(double alpha) const;
  uint64_t tail(uint64_t horizon) const;
};

struct ThresholdRow {
  double alpha = 0.0;
  uint64_t horizon = 0;
  double mean_fraction = 0.0;
  double min_fraction = 0.0;
  double mean_q0_measure = 0.0;
  double full_cover_freq = 0.0;
  double alpha0 = 0.0, alpha1 = 0.0, alpha2 = 0.0;
};

/// Replica sweep over an ascending alpha grid; seeds are seed0 + r.
std::vector<ThresholdRow> threshold_experiment(
    const IfsSpec& spec, const std::vector<double>& alpha_grid,
    unsigned replicas, const HorizonRule& rule, size_t depth, uint64_t seed0);

}  // namespace coverspectra

#endif
