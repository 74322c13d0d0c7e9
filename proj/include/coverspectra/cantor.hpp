#ifndef COVERSPECTRA_CANTOR_HPP
#define COVERSPECTRA_CANTOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "coverspectra/ifs.hpp"
#include "coverspectra/orbit.hpp"
#include "coverspectra/schedule.hpp"

namespace coverspectra {

/// Reading frames for construction level n: the arithmetic progression
/// {base, base+n, ..., base+(count-1)n} inside l^{-1}(n), where
/// base = min l^{-1}(n) and count is capped by the gamma-rate window
/// [e^{gamma n}/(2n), 2 e^{gamma n}/n].
struct LevelPositions {
  uint64_t n = 0;
  uint64_t base = 0;
  uint64_t count = 0;

  uint64_t position(uint64_t j) const { return base + j * n; }
};

/// Positions for level n, or nullopt when the level is infeasible (empty
/// level set, or the position count falls outside the rate window).
std::optional<LevelPositions> level_positions(const TargetSchedule& schedule,
                                              double gamma, uint64_t n);

struct ConstructorEntry {
  Word word;
  uint64_t n = 0;     // construction level assigned to the word
  uint64_t base = 0;  // min l^{-1}(n)
  uint64_t m = 0;     // number of reading frames at this level
  double s = 0.0;     // branch exponent
  double gap = 0.0;   // s(gamma) - s, always >= 0
};

/// Greedy level assignment over the length-lexicographic word enumeration.
/// Every entry satisfies: levels are feasible and pairwise distinct, longer
/// words get strictly larger levels, n/(p_w e^{gamma |w|}) > 2, and
/// |w|/n <= 1/n(empty) <= 1/2.
struct ConstructorTable {
  double gamma = 0.0;
  double alpha = 0.0;
  uint64_t n0 = 0;       // n(empty)
  double s_gamma = 0.0;  // P_gamma(1)
  std::vector<ConstructorEntry> entries;  // length-lex order, empty word first

  const ConstructorEntry* find(const Word& w) const;
};

/// Builds the table for the first max_words words. Throws GammaTooLarge when
/// gamma >= alpha or the small-gamma standing assumption fails; Infeasible
/// when no level within the search window fits a word.
ConstructorTable build_constructor(const IfsSpec& spec, double gamma,
                                   double alpha, uint64_t n_min,
                                   size_t max_words);

/// Branch exponent s for a word with weight p_parent at level n with m
/// frames: the root of
///   sum_{|a| = n - len} lambda_a^s (1 - (1 - p_parent p_a)^m) = 1,
/// aggregated over suffix type classes. Residual <= 1e-11.
double branch_exponent(const IfsSpec& spec, const Word& parent, uint64_t n,
                       uint64_t m);

/// Random generation sets C_1, C_2, ...: level-k words are the targets
/// (sigma^p o)|_{n(parent)} read at the parent's frames that extend the
/// parent. Words outside the prebuilt table get levels assigned lazily by
/// the same greedy rule (recorded in `extensions`).
struct GenerationSets {
  std::vector<std::vector<Word>> levels;
  uint64_t seed = 0;
  std::vector<ConstructorEntry> extensions;
};

/// Grows `levels` generations. Throws TruncatedOrbit when the orbit view is
/// too short for a required reading frame.
GenerationSets grow_generations(const IfsSpec& spec, const OrbitView& orbit,
                                const ConstructorTable& table,
                                const TargetSchedule& schedule, int levels);

/// Monte Carlo moments of the first-generation martingale increment
/// X = sum over distinct visited level-n0 words of lambda_w^{s(empty)};
/// its exact mean is 1 by the choice of the branch exponent.
struct MartingaleStats {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  uint64_t seeds = 0;
};

MartingaleStats martingale_stats(const IfsSpec& spec,
                                 const ConstructorTable& table,
                                 const TargetSchedule& schedule,
                                 uint64_t seeds, uint64_t seed0 = 1);

/// Exact E[#C_1] = sum_{|w|=n0} (1 - (1-p_w)^{m0}); the oracle for the
/// generation-size statistics.
double expected_first_generation(const IfsSpec& spec,
                                 const ConstructorTable& table);

}  // namespace coverspectra

#endif
