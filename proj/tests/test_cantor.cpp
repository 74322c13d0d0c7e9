#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "coverspectra/cantor.hpp"
#include "coverspectra/errors.hpp"
#include "coverspectra/ifs.hpp"
#include "coverspectra/numerics.hpp"
#include "coverspectra/orbit.hpp"
#include "coverspectra/pressure.hpp"

using namespace coverspectra;

namespace {

IfsSpec halves() {
  return IfsSpec::validate(std::vector<double>{0.5, 0.5},
                           std::vector<double>{0.5, 0.5});
}

// the table conditions, checked verbatim against a built table
void check_table_conditions(const IfsSpec& spec, const ConstructorTable& t,
                            const TargetSchedule& sched) {
  REQUIRE(!t.entries.empty());
  REQUIRE(t.entries.front().word.is_empty());
  REQUIRE(t.n0 >= 2);
  std::set<uint64_t> levels;
  uint64_t prev_n = 0;
  size_t prev_len = 0;
  for (const ConstructorEntry& e : t.entries) {
    // injectivity and monotone growth along the enumeration
    REQUIRE(!levels.count(e.n));
    levels.insert(e.n);
    REQUIRE(e.n > prev_n);
    REQUIRE(e.word.size() >= prev_len);
    prev_n = e.n;
    prev_len = e.word.size();
    // mass gap: n / (p_w e^{gamma |w|}) > 2
    WordWeights ww = word_weights(spec, e.word);
    REQUIRE(double(e.n) >
            2.0 * std::exp(ww.log_p_w + t.gamma * double(e.word.size())));
    // length ratio: |w|/n <= 1/n0 <= 1/2
    REQUIRE(double(e.word.size()) / double(e.n) <= 1.0 / double(t.n0) + 1e-15);
    // frame count inside the rate window
    double rate = std::exp(t.gamma * double(e.n)) / double(e.n);
    REQUIRE(double(e.m) + 1e-9 >= rate / 2.0);
    REQUIRE(double(e.m) <= 2.0 * rate + 1e-9);
    REQUIRE(e.m >= 1);
    // frames stay inside the level set
    auto ls = sched.level_set(int64_t(e.n));
    REQUIRE(ls.has_value());
    REQUIRE(e.base == ls->lo);
    REQUIRE(e.base + (e.m - 1) * e.n <= ls->hi);
    // branch exponent below the gamma-pressure value
    REQUIRE(e.gap >= -1e-9);
    REQUIRE(e.s <= t.s_gamma + 1e-9);
  }
}

}  // namespace

TEST_CASE("documented greedy start: n(empty) = 3") {
  ConstructorTable t = build_constructor(halves(), 0.3, 0.5, 2, 7);
  CHECK(t.n0 == 3);
  CHECK(t.entries.front().n == 3);
  CHECK(t.entries.front().m == 1);
  // length-2 words must sit at level >= 2 * n0 = 6
  for (const ConstructorEntry& e : t.entries)
    if (e.word.size() == 2) CHECK(e.n >= 6);
  TargetSchedule sched = TargetSchedule::canonical(0.5, 2);
  check_table_conditions(halves(), t, sched);
}

TEST_CASE("gamma guards") {
  CHECK_THROWS_AS(build_constructor(halves(), 0.5, 0.5, 2, 3), Error);
  CHECK_THROWS_AS(build_constructor(halves(), 0.9, 0.8, 2, 3), Error);
  // gamma above the small-rate threshold but below alpha: still rejected
  IfsSpec fig1 = IfsSpec::validate(std::vector<double>{0.8, 0.1},
                                   std::vector<double>{0.2, 0.8});
  // alpha0 ~ 0.7597 for this instance
  CHECK_THROWS_AS(build_constructor(fig1, 0.78, 1.2, 2, 3), Error);
}

TEST_CASE("table conditions hold across parameter draws") {
  struct Cfg {
    std::vector<double> lam, p;
    double gamma, alpha;
    uint64_t n_min;
  };
  std::vector<Cfg> cfgs = {
      {{0.5, 0.5}, {0.5, 0.5}, 0.4, 0.8, 8},
      {{0.8, 0.1}, {0.2, 0.8}, 0.3, 0.6, 10},
      {{0.4, 0.4}, {0.2, 0.8}, 0.35, 0.62, 12},
      {{0.6, 0.2, 0.1}, {0.3, 0.3, 0.4}, 0.45, 0.9, 9},
  };
  for (const Cfg& c : cfgs) {
    IfsSpec spec = IfsSpec::validate(c.lam, c.p);
    ConstructorTable t =
        build_constructor(spec, c.gamma, c.alpha, c.n_min, 10);
    TargetSchedule sched = TargetSchedule::canonical(c.alpha, 2);
    check_table_conditions(spec, t, sched);
  }
}

TEST_CASE("two-sided frame-sum bound when the rate cap is active") {
  // with m <= e^{gamma n}/n the linearized root obeys
  // (n/(p e^{g|w|}))^{1/L} <= sum lambda^{s} p e^{gamma} <= (5n/...)^{1/L}
  struct Cfg {
    std::vector<double> lam, p;
    double gamma, alpha;
    uint64_t n_min;
  };
  std::vector<Cfg> cfgs = {
      {{0.5, 0.5}, {0.5, 0.5}, 0.4, 0.8, 10},
      {{0.8, 0.1}, {0.2, 0.8}, 0.3, 0.6, 12},
      {{0.45, 0.3}, {0.35, 0.65}, 0.5, 0.9, 10},
  };
  for (const Cfg& c : cfgs) {
    IfsSpec spec = IfsSpec::validate(c.lam, c.p);
    ConstructorTable t =
        build_constructor(spec, c.gamma, c.alpha, c.n_min, 10);
    for (const ConstructorEntry& e : t.entries) {
      WordWeights ww = word_weights(spec, e.word);
      double L = double(e.n - e.word.size());
      double base =
          double(e.n) / std::exp(ww.log_p_w + c.gamma * double(e.word.size()));
      double lo = std::pow(base, 1.0 / L);
      double hi = std::pow(5.0 * base, 1.0 / L);
      double sum = 0.0;
      for (size_t i = 0; i < spec.alphabet_size(); ++i)
        sum += std::pow(spec.lambda(i), e.s) * spec.prob(i) *
               std::exp(c.gamma);
      REQUIRE(sum + 1e-9 >= lo);
      REQUIRE(sum - 1e-9 <= hi);
    }
  }
}

TEST_CASE("branch exponent: hand-solved degenerate cases") {
  IfsSpec u = halves();
  // m = 1: every suffix contributes 2^{-4s} * 2^{-4}; root s = 0
  CHECK(branch_exponent(u, Word::empty(), 4, 1) ==
        doctest::Approx(0.0).epsilon(1e-11));
  // huge m saturates the factor and the root climbs to s0 = 1
  CHECK(branch_exponent(u, Word::empty(), 4, 16000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(branch_exponent(u, Word({1, 1}), 2, 1), Error);
  CHECK_THROWS_AS(branch_exponent(u, Word::empty(), 4, 0), Error);
}

TEST_CASE("branch exponent: uniform closed form across random draws") {
  IfsSpec u = halves();
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    uint64_t L = 2 + mix64(seed) % 10;
    uint64_t plen = mix64(seed * 3) % 6;
    uint64_t m = 1 + mix64(seed * 7) % 50;
    Word parent;
    for (uint64_t i = 0; i < plen; ++i)
      parent.push_back(uint8_t(1 + mix64(seed + i) % 2));
    double p_par = std::pow(0.5, double(plen));
    double factor = -std::expm1(double(m) *
                                std::log1p(-p_par * std::pow(2.0, -double(L))));
    double expect = 1.0 + std::log(factor) / (double(L) * std::log(2.0));
    double s = branch_exponent(u, parent, plen + L, m);
    REQUIRE(s == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("branch exponent gap shrinks as n_min grows") {
  IfsSpec spec = IfsSpec::validate(std::vector<double>{0.5, 0.5},
                                   std::vector<double>{0.3, 0.7});
  double prev = 1e9;
  for (uint64_t n_min : {8u, 16u, 32u}) {
    ConstructorTable t = build_constructor(spec, 0.25, 0.55, n_min, 4);
    double worst = 0.0;
    for (const ConstructorEntry& e : t.entries)
      worst = std::max(worst, e.gap);
    REQUIRE(worst >= -1e-9);
    REQUIRE(worst < prev);
    prev = worst;
  }
}

TEST_CASE("first generation reads the documented single frame") {
  IfsSpec u = halves();
  ConstructorTable t = build_constructor(u, 0.3, 0.5, 2, 15);
  REQUIRE(t.n0 == 3);
  REQUIRE(t.entries.front().m == 1);
  TargetSchedule sched = TargetSchedule::canonical(0.5, 2);
  OrbitView view(u, 99, 50);
  GenerationSets g = grow_generations(u, view, t, sched, 1);
  REQUIRE(g.levels.size() == 1);
  REQUIRE(g.levels[0].size() == 1);
  // the single child is the orbit window at the root frame
  Word expect;
  for (uint64_t i = 0; i < 3; ++i)
    expect.push_back(view.digit(t.entries.front().base + i));
  CHECK(g.levels[0][0] == expect);
}

TEST_CASE("second generation words extend their parents") {
  IfsSpec u = halves();
  ConstructorTable t = build_constructor(u, 0.3, 0.5, 2, 15);
  TargetSchedule sched = TargetSchedule::canonical(0.5, 2);
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    OrbitView view(u, seed, 10000);
    GenerationSets g = grow_generations(u, view, t, sched, 2);
    REQUIRE(g.levels.size() == 2);
    for (const Word& w : g.levels[1]) {
      bool extends_some = false;
      for (const Word& p : g.levels[0])
        if (p.is_prefix_of(w)) {
          extends_some = true;
          // child length equals the parent's assigned level
          break;
        }
      REQUIRE(extends_some);
    }
  }
}

TEST_CASE("orbit exhaustion is reported") {
  IfsSpec u = halves();
  ConstructorTable t = build_constructor(u, 0.3, 0.5, 2, 15);
  TargetSchedule sched = TargetSchedule::canonical(0.5, 2);
  OrbitView view(u, 99, 4);  // far too short for the level-3 frame
  CHECK_THROWS_AS(grow_generations(u, view, t, sched, 1), Error);
}

TEST_CASE("first-generation count matches its analytic expectation") {
  IfsSpec u = halves();
  ConstructorTable t = build_constructor(u, 0.5, 0.9, 8, 1);
  REQUIRE(t.entries.front().m >= 3);
  double expect = expected_first_generation(u, t);
  TargetSchedule sched = TargetSchedule::canonical(0.9, 2);
  const int seeds = 500;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    OrbitView view(u, uint64_t(s), 45000);
    GenerationSets g = grow_generations(u, view, t, sched, 1);
    double x = double(g.levels[0].size());
    sum += x;
    sumsq += x * x;
  }
  double mean = sum / seeds;
  double var = (sumsq - seeds * mean * mean) / (seeds - 1);
  double se = std::sqrt(var / seeds);
  CHECK(std::abs(mean - expect) <= 3.0 * se + 1e-9);
}

TEST_CASE("martingale increment: unit mean across benchmark configs") {
  struct Cfg {
    std::vector<double> lam, p;
    double gamma, alpha;
    uint64_t n_min;
  };
  std::vector<Cfg> cfgs = {
      {{0.5, 0.5}, {0.5, 0.5}, 0.4, 0.8, 8},
      {{0.8, 0.1}, {0.2, 0.8}, 0.3, 0.6, 10},
      {{0.4, 0.4}, {0.2, 0.8}, 0.35, 0.62, 12},
  };
  for (const Cfg& c : cfgs) {
    IfsSpec spec = IfsSpec::validate(c.lam, c.p);
    ConstructorTable t = build_constructor(spec, c.gamma, c.alpha, c.n_min, 1);
    TargetSchedule sched = TargetSchedule::canonical(c.alpha, 2);
    MartingaleStats st = martingale_stats(spec, t, sched, 400, 17);
    REQUIRE(std::abs(st.mean - 1.0) <= 3.0 * st.stderr_mean + 1e-12);
    REQUIRE(st.variance >= 0.0);
  }
}

TEST_CASE("martingale increment: single-frame degenerate case is exact") {
  // m = 1 and s = 0: X is the count of distinct visited words, always 1
  IfsSpec u = halves();
  ConstructorTable t = build_constructor(u, 0.3, 0.5, 2, 1);
  REQUIRE(t.entries.front().m == 1);
  REQUIRE(t.entries.front().s == doctest::Approx(0.0).epsilon(1e-10));
  TargetSchedule sched = TargetSchedule::canonical(0.5, 2);
  MartingaleStats st = martingale_stats(u, t, sched, 50, 3);
  CHECK(st.mean == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(st.variance <= 1e-12);
}

TEST_CASE("martingale variance is stable under doubling the seed count") {
  IfsSpec spec = IfsSpec::validate(std::vector<double>{0.5, 0.5},
                                   std::vector<double>{0.3, 0.7});
  ConstructorTable t = build_constructor(spec, 0.4, 0.75, 10, 1);
  TargetSchedule sched = TargetSchedule::canonical(0.75, 2);
  MartingaleStats a = martingale_stats(spec, t, sched, 250, 5);
  MartingaleStats b = martingale_stats(spec, t, sched, 500, 5);
  REQUIRE(b.variance > 0.0);
  double ratio = a.variance / b.variance;
  CHECK(ratio >= 0.5);
  CHECK(ratio <= 2.0);
  CHECK_THROWS_AS(martingale_stats(spec, t, sched, 10, 5), Error);
}
