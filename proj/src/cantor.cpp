#include "coverspectra/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"
#include "coverspectra/pressure.hpp"
#include "coverspectra/prob_pressure.hpp"

namespace coverspectra {

namespace {

constexpr uint64_t kLevelSearchSpan = 200000;  // per-word level search window

// Next word in length-lexicographic order over {1,...,N}.
Word next_length_lex(const Word& w, size_t N) {
  std::vector<uint8_t> d = w.digits();
  size_t i = d.size();
  while (i > 0) {
    if (d[i - 1] < N) {
      ++d[i - 1];
      return Word(std::move(d));
    }
    d[i - 1] = 1;
    --i;
  }
  d.assign(d.size() + 1, 1);
  return Word(std::move(d));
}

struct GreedyState {
  const IfsSpec* spec;
  const TargetSchedule* schedule;
  double gamma;
  uint64_t n0 = 0;        // fixed after the empty word is assigned
  uint64_t last_n = 0;    // n-values are strictly increasing in assignment order
  double s_gamma = 0.0;
};

ConstructorEntry assign_word(GreedyState& st, const Word& w, uint64_t n_min) {
  WordWeights ww = word_weights(*st.spec, w);
  double c4_bound = 2.0 * std::exp(ww.log_p_w + st.gamma * double(w.size()));
  uint64_t start = std::max<uint64_t>(st.last_n + 1, n_min);
  for (uint64_t n = start; n < start + kLevelSearchSpan; ++n) {
    if (double(n) <= c4_bound) continue;                       // mass gap
    if (st.n0 > 0 && n < w.size() * st.n0) continue;           // length ratio
    if (st.n0 == 0 && n < 2) continue;
    std::optional<LevelPositions> pos;
    try {
      pos = level_positions(*st.schedule, st.gamma, n);
    } catch (const Error& e) {
      throw Error(Errc::Infeasible,
                  std::string("level search hit the schedule range: ") +
                      e.what());
    }
    if (!pos) continue;
    ConstructorEntry entry;
    entry.word = w;
    entry.n = n;
    entry.base = pos->base;
    entry.m = pos->count;
    entry.s = branch_exponent(*st.spec, w, n, pos->count);
    entry.gap = st.s_gamma - entry.s;
    st.last_n = n;
    if (st.n0 == 0) st.n0 = n;
    return entry;
  }
  throw Error(Errc::Infeasible,
              "no feasible level in [" + std::to_string(start) + ", " +
                  std::to_string(start + kLevelSearchSpan) +
                  ") for a word of length " + std::to_string(w.size()) +
                  " (rate window or frame count empty)");
}

}  // namespace

std::optional<LevelPositions> level_positions(const TargetSchedule& schedule,
                                              double gamma, uint64_t n) {
  auto ls = schedule.level_set(int64_t(n));
  if (!ls) return std::nullopt;
  double rate = std::exp(gamma * double(n)) / double(n);
  if (!std::isfinite(rate)) return std::nullopt;
  // frame budget: stay within [rate/2, 2*rate]; prefer <= rate so that the
  // branch-exponent sum obeys its two-sided bound, falling back to a single
  // frame when the rate itself has not reached 1 yet
  double cap2 = std::floor(2.0 * rate);
  double cap1 = std::floor(rate);
  double cap = cap1 >= 1.0 ? cap1 : (cap2 >= 1.0 ? 1.0 : 0.0);
  uint64_t q_pos = (ls->hi - ls->lo) / n + 1;
  uint64_t q = uint64_t(std::min<double>(cap, double(q_pos)));
  if (q < 1) return std::nullopt;
  if (double(q) + 1e-9 < rate / 2.0) return std::nullopt;
  return LevelPositions{n, ls->lo, q};
}

const ConstructorEntry* ConstructorTable::find(const Word& w) const {
  for (const ConstructorEntry& e : entries)
    if (e.word == w) return &e;
  return nullptr;
}

ConstructorTable build_constructor(const IfsSpec& spec, double gamma,
                                   double alpha, uint64_t n_min,
                                   size_t max_words) {
  if (!(gamma > 0.0) || !(gamma < alpha))
    throw Error(Errc::GammaTooLarge,
                "need 0 < gamma < alpha, got gamma = " + std::to_string(gamma) +
                    ", alpha = " + std::to_string(alpha));
  if (n_min < 2) throw Error(Errc::ConfigError, "n_min must be >= 2");
  // standing assumption: gamma below its own pressure-entropy threshold
  PressureValue pg = pressure_root(spec, gamma, 1.0);
  double drift = gamma;
  for (size_t i = 0; i < spec.alphabet_size(); ++i)
    drift += std::exp(pg.value * spec.log_lambda(i) + spec.log_prob(i) +
                      gamma) *
             spec.log_prob(i);
  if (drift >= 0.0)
    throw Error(Errc::GammaTooLarge,
                "gamma = " + std::to_string(gamma) +
                    " violates the small-rate assumption (drift " +
                    std::to_string(drift) + " >= 0)");

  TargetSchedule schedule = TargetSchedule::canonical(alpha, 2);
  ConstructorTable table;
  table.gamma = gamma;
  table.alpha = alpha;
  table.s_gamma = pg.value;

  GreedyState st{&spec, &schedule, gamma, 0, 0, pg.value};
  Word w = Word::empty();
  for (size_t k = 0; k < max_words; ++k) {
    table.entries.push_back(assign_word(st, w, n_min));
    w = next_length_lex(w, spec.alphabet_size());
  }
  table.n0 = st.n0;
  return table;
}

double branch_exponent(const IfsSpec& spec, const Word& parent, uint64_t n,
                       uint64_t m) {
  if (n <= parent.size())
    throw Error(Errc::ConfigError, "level must exceed the word length");
  if (m < 1) throw Error(Errc::DegenerateM, "needs at least one frame");
  WordWeights ww = word_weights(spec, parent);
  uint64_t suffix_len = n - parent.size();
  std::vector<TypeClass> cls = type_classes(spec, suffix_len);
  auto G = [&](double s) {
    LogSumExp acc;
    for (const TypeClass& c : cls) {
      double lf = log_one_minus_pow(ww.log_p_w + c.log_p, double(m));
      if (lf != kNegInf) acc.add(c.log_multiplicity + s * c.log_lambda + lf);
    }
    return acc.value();
  };
  double s0 = similarity_dimension(spec);
  RootResult r = bisect_decreasing(G, -2.0, s0 + 2.0, 1e-14);
  if (std::abs(std::expm1(r.residual)) > 1e-11)
    throw Error(Errc::NoConvergence, "branch exponent residual " +
                                         std::to_string(r.residual));
  return r.x;
}

GenerationSets grow_generations(const IfsSpec& spec, const OrbitView& orbit,
                                const ConstructorTable& table,
                                const TargetSchedule& schedule, int levels) {
  if (levels < 1) throw Error(Errc::ConfigError, "levels must be >= 1");
  if (table.entries.empty() || !table.entries.front().word.is_empty())
    throw Error(Errc::ConfigError, "table must start with the empty word");

  GenerationSets out;
  out.seed = orbit.seed();

  GreedyState st{&spec, &schedule, table.gamma, table.n0,
                 table.entries.back().n, table.s_gamma};
  std::map<std::vector<uint8_t>, ConstructorEntry> assigned;
  for (const ConstructorEntry& e : table.entries)
    assigned[e.word.digits()] = e;

  // Words outside the prebuilt table get levels on demand. Parents are
  // processed in length-lex order, so the strictly increasing level counter
  // keeps the longer-word/larger-level ordering across all assignments.
  auto entry_for = [&](const Word& w) -> const ConstructorEntry& {
    auto it = assigned.find(w.digits());
    if (it != assigned.end()) return it->second;
    ConstructorEntry e = assign_word(st, w, 2);
    out.extensions.push_back(e);
    return assigned.emplace(w.digits(), std::move(e)).first->second;
  };

  std::vector<Word> current{Word::empty()};
  for (int level = 1; level <= levels; ++level) {
    std::sort(current.begin(), current.end(),
              [](const Word& a, const Word& b) { return a.length_lex_less(b); });
    std::set<std::vector<uint8_t>> children;
    for (const Word& parent : current) {
      const ConstructorEntry& pe = entry_for(parent);
      for (uint64_t j = 0; j < pe.m; ++j) {
        uint64_t p = pe.base + j * pe.n;
        // the target (sigma^p o)|_n extends the parent iff the first
        // |parent| digits match; bail on the first mismatch
        bool extends = true;
        for (size_t i = 0; i < parent.size(); ++i) {
          if (orbit.digit(p + i) != parent.digit(i)) {
            extends = false;
            break;
          }
        }
        if (!extends) continue;
        std::vector<uint8_t> digits(pe.n);
        for (uint64_t i = 0; i < pe.n; ++i) digits[i] = orbit.digit(p + i);
        children.insert(std::move(digits));
      }
    }
    std::vector<Word> next;
    next.reserve(children.size());
    for (const auto& d : children) next.emplace_back(d);
    out.levels.push_back(next);
    current = std::move(next);
  }
  return out;
}

MartingaleStats martingale_stats(const IfsSpec& spec,
                                 const ConstructorTable& table,
                                 const TargetSchedule& /*schedule*/,
                                 uint64_t seeds, uint64_t seed0) {
  if (seeds < 30)
    throw Error(Errc::ConfigError, "need at least 30 seeds for the moments");
  const ConstructorEntry* root = table.find(Word::empty());
  if (!root) throw Error(Errc::ConfigError, "table lacks the empty word");
  const uint64_t n0 = root->n;
  const uint64_t m0 = root->m;
  const uint64_t need = root->base + (m0 - 1) * n0 + n0;

  KahanSum sum, sumsq;
  for (uint64_t s = 0; s < seeds; ++s) {
    OrbitView view(spec, seed0 + s, need + 1);
    std::set<std::vector<uint8_t>> visited;
    for (uint64_t j = 0; j < m0; ++j) {
      uint64_t p = root->base + j * n0;
      std::vector<uint8_t> w(n0);
      for (uint64_t i = 0; i < n0; ++i) w[i] = view.digit_unchecked(p + i);
      visited.insert(std::move(w));
    }
    double x = 0.0;
    for (const auto& w : visited) {
      double ll = 0.0;
      for (uint8_t d : w) ll += spec.log_lambda(d - 1);
      x += std::exp(root->s * ll);
    }
    sum.add(x);
    sumsq.add(x * x);
  }
  MartingaleStats stats;
  stats.seeds = seeds;
  stats.mean = sum.value() / double(seeds);
  stats.variance = (sumsq.value() - double(seeds) * stats.mean * stats.mean) /
                   double(seeds - 1);
  if (stats.variance < 0.0) stats.variance = 0.0;
  stats.stderr_mean = std::sqrt(stats.variance / double(seeds));
  return stats;
}

double expected_first_generation(const IfsSpec& spec,
                                 const ConstructorTable& table) {
  const ConstructorEntry* root = table.find(Word::empty());
  if (!root) throw Error(Errc::ConfigError, "table lacks the empty word");
  LnEvaluation ev = ln_aggregated(spec, 0.0, root->n, double(root->m));
  return std::exp(double(root->n) * ev.value);
}

}  // namespace coverspectra
