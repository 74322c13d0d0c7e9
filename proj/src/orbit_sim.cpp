#include "coverspectra/orbit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"
#include "coverspectra/orbit.hpp"
#include "coverspectra/pressure.hpp"

namespace coverspectra {

namespace {

constexpr double kExactCountCap = 2e7;

size_t trie_cap_for(const TargetSchedule& schedule, uint64_t horizon,
                    size_t depth) {
  int64_t lmax = schedule.ell(horizon);
  size_t cap = std::max<size_t>(depth, size_t(lmax));
  return std::min<size_t>(cap, 60);
}

CoverageReport report_from_trie(const CoverTrie& trie, const IfsSpec& spec,
                                size_t depth) {
  CoverageReport rep;
  rep.depth = depth;
  rep.covered_count = trie.covered_count(depth);
  uint64_t total = 1;
  for (size_t i = 0; i < depth; ++i) total *= spec.alphabet_size();
  rep.total = total;
  rep.coverage_fraction = double(rep.covered_count) / double(total);

  double s0 = similarity_dimension(spec);
  std::vector<double> q0(spec.alphabet_size());
  std::vector<double> unif(spec.alphabet_size(),
                           1.0 / double(spec.alphabet_size()));
  for (size_t i = 0; i < q0.size(); ++i)
    q0[i] = std::exp(s0 * spec.log_lambda(i));
  rep.covered_measure["P_p"] = trie.measure(spec.probs());
  rep.covered_measure["Q0"] = trie.measure(q0);
  rep.covered_measure["uniform"] = trie.measure(unif);
  if (rep.covered_count < rep.total)
    rep.complement_exponent = complement_exponent(trie, spec, depth);
  return rep;
}

void check_run_args(const IfsSpec& spec, uint64_t horizon, size_t depth,
                    uint64_t tail_start) {
  if (depth < 1) throw Error(Errc::ConfigError, "depth must be >= 1");
  if (std::pow(double(spec.alphabet_size()), double(depth)) > kExactCountCap)
    throw Error(Errc::DepthTooLarge,
                "N^depth exceeds the exact-count cap 2e7");
  if (tail_start < 1 || tail_start > horizon)
    throw Error(Errc::ConfigError, "need 1 <= tail_start <= horizon");
}

}  // namespace

void cover_targets(CoverTrie& trie, const IfsSpec& spec,
                   const TargetSchedule& schedule, uint64_t tail_start,
                   uint64_t horizon, uint64_t seed) {
  const size_t cap = trie.depth_cap();
  OrbitView view(spec, seed, horizon + uint64_t(schedule.ell(horizon)) + 1);
  // ring buffer of the next `cap` orbit digits; one fresh digit per step
  std::vector<uint8_t> ring(cap);
  uint64_t next = tail_start;
  for (uint64_t n = tail_start; n <= horizon; ++n) {
    size_t len = std::min<size_t>(size_t(schedule.ell(n)), cap);
    while (next < n + len) {
      ring[next % cap] = view.digit_unchecked(next);
      ++next;
    }
    trie.insert_via(len, [&](size_t i) { return ring[(n + i) % cap]; });
  }
}

CoverageReport run_cover(const IfsSpec& spec, double alpha, uint64_t horizon,
                         size_t depth, uint64_t tail_start, uint64_t seed) {
  check_run_args(spec, horizon, depth, tail_start);
  TargetSchedule schedule = TargetSchedule::canonical(alpha, horizon);
  CoverTrie trie(spec.alphabet_size(),
                 trie_cap_for(schedule, horizon, depth));
  cover_targets(trie, spec, schedule, tail_start, horizon, seed);
  CoverageReport rep = report_from_trie(trie, spec, depth);
  rep.alpha = alpha;
  rep.horizon = horizon;
  rep.tail_start = tail_start;
  rep.seed = seed;
  return rep;
}

CoverageReport run_cover_orbit(const IfsSpec& spec,
                               const std::vector<uint8_t>& orbit,
                               const TargetSchedule& schedule,
                               uint64_t horizon, size_t depth,
                               uint64_t tail_start) {
  check_run_args(spec, horizon, depth, tail_start);
  CoverTrie trie(spec.alphabet_size(),
                 trie_cap_for(schedule, horizon, depth));
  for (uint64_t n = tail_start; n <= horizon; ++n) {
    size_t len = std::min<size_t>(size_t(schedule.ell(n)), trie.depth_cap());
    if (n + len > orbit.size())
      throw Error(Errc::TruncatedOrbit,
                  "orbit of " + std::to_string(orbit.size()) +
                      " digits too short for target at n = " +
                      std::to_string(n));
    trie.insert_via(len, [&](size_t i) { return orbit[n + i]; });
  }
  CoverageReport rep = report_from_trie(trie, spec, depth);
  rep.alpha = schedule.alpha();
  rep.horizon = horizon;
  rep.tail_start = tail_start;
  return rep;
}

uint64_t HorizonRule::horizon(double alpha) const {
  if (fixed_horizon > 0) return fixed_horizon;
  double h = std::ceil(std::exp(alpha * exponent_factor));
  if (h > 4e18) throw Error(Errc::TooLarge, "horizon rule overflows");
  return std::max<uint64_t>(2, uint64_t(h));
}

uint64_t HorizonRule::tail(uint64_t horizon) const {
  if (fixed_tail > 0) return std::min(fixed_tail, horizon);
  return std::max<uint64_t>(1, uint64_t(double(horizon) * tail_fraction));
}

std::vector<ThresholdRow> threshold_experiment(
    const IfsSpec& spec, const std::vector<double>& alpha_grid,
    unsigned replicas, const HorizonRule& rule, size_t depth, uint64_t seed0) {
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
    throw Error(Errc::ConfigError, "alpha grid must be ascending");
  if (replicas == 0) throw Error(Errc::ConfigError, "need replicas >= 1");
  CriticalAlphas crit = critical_alphas(spec);
  std::vector<ThresholdRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    ThresholdRow row;
    row.alpha = alpha;
    row.horizon = rule.horizon(alpha);
    uint64_t tail = rule.tail(row.horizon);
    double sum_frac = 0.0, min_frac = 1.0, sum_q0 = 0.0;
    unsigned full = 0;
    for (unsigned r = 0; r < replicas; ++r) {
      CoverageReport rep =
          run_cover(spec, alpha, row.horizon, depth, tail, seed0 + r);
      sum_frac += rep.coverage_fraction;
      min_frac = std::min(min_frac, rep.coverage_fraction);
      sum_q0 += rep.covered_measure.at("Q0");
      if (rep.covered_count == rep.total) ++full;
    }
    row.mean_fraction = sum_frac / replicas;
    row.min_fraction = min_frac;
    row.mean_q0_measure = sum_q0 / replicas;
    row.full_cover_freq = double(full) / replicas;
    row.alpha0 = crit.alpha0;
    row.alpha1 = crit.alpha1;
    row.alpha2 = crit.alpha2;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coverspectra
