#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "coverspectra/errors.hpp"
#include "coverspectra/ifs.hpp"
#include "coverspectra/numerics.hpp"
#include "coverspectra/orbit.hpp"
#include "coverspectra/pressure.hpp"
#include "coverspectra/prob_pressure.hpp"

using namespace coverspectra;

namespace {

IfsSpec symmetric() {
  return IfsSpec::validate(std::vector<double>{0.5, 0.5},
                           std::vector<double>{0.5, 0.5});
}

IfsSpec random_spec(uint64_t seed, size_t n) {
  std::vector<double> lambdas(n), probs(n);
  double psum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    lambdas[i] = 0.1 + 0.5 * uniform01(seed, 2 * i);
    probs[i] = 0.05 + uniform01(seed, 2 * i + 1);
    psum += probs[i];
  }
  for (double& p : probs) p /= psum;
  return IfsSpec::validate(lambdas, probs);
}

}  // namespace

TEST_CASE("type classes: multiplicities sum to N^n and match exact integers") {
  for (uint64_t seed : {3u, 4u}) {
    for (size_t N : {2u, 3u}) {
      IfsSpec spec = random_spec(seed, N);
      for (uint64_t n : {1u, 5u, 12u, 20u}) {
        std::vector<TypeClass> cls = type_classes(spec, n);
        LogSumExp lse;
        for (const TypeClass& c : cls) {
          lse.add(c.log_multiplicity);
          uint64_t exact = multinomial_exact(c.counts);
          REQUIRE(c.log_multiplicity ==
                  doctest::Approx(std::log(double(exact))).epsilon(1e-12));
        }
        REQUIRE(lse.value() ==
                doctest::Approx(double(n) * std::log(double(N)))
                    .epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("documented small evaluations") {
  IfsSpec s = symmetric();
  // eight words, each contributing (1/8)(1-(7/8)^2) at s = 1
  LnEvaluation v = ln_aggregated(s, 1.0, 3, 2.0);
  CHECK(v.value ==
        doctest::Approx(std::log(15.0 / 64.0) / 3.0).epsilon(1e-13));
  LnEvaluation b = ln_bruteforce(s, 1.0, 3, 2.0);
  CHECK(b.value == doctest::Approx(v.value).epsilon(1e-14));

  // m = 1, s = 0: sum of p over words is 1
  LnEvaluation z = ln_aggregated(s, 0.0, 1, 1.0);
  CHECK(z.value == doctest::Approx(0.0).epsilon(1e-14));

  // m = 0 collapses the sum
  LnEvaluation d = ln_aggregated(s, 1.0, 4, 0.0);
  CHECK(d.degenerate_m);
  CHECK(d.value == kNegInf);

  CHECK_THROWS_AS(ln_bruteforce(s, 1.0, 40, 1.0), Error);
}

TEST_CASE("aggregated equals brute force across random draws") {
  int cases = 0;
  for (uint64_t seed = 1; cases < 50; ++seed) {
    size_t N = 2 + seed % 2;
    IfsSpec spec = random_spec(seed, N);
    uint64_t n = 1 + mix64(seed) % 12;
    if (std::pow(double(N), double(n)) > 2e7) continue;
    double s = -0.5 + 2.0 * uniform01(seed, 40);
    double m = std::floor(1.0 + 50.0 * uniform01(seed, 41));
    LnEvaluation a = ln_aggregated(spec, s, n, m);
    LnEvaluation b = ln_bruteforce(spec, s, n, m);
    REQUIRE(std::abs(a.value - b.value) <= 1e-12);
    ++cases;
  }
}

TEST_CASE("L_n is strictly decreasing in s and increasing in m") {
  IfsSpec spec = random_spec(11, 2);
  for (uint64_t n : {4u, 9u}) {
    double prev = 1e300;
    for (int i = 0; i <= 10; ++i) {
      double s = -0.5 + i * 0.2;
      double v = ln_aggregated(spec, s, n, 3.0).value;
      REQUIRE(v < prev);
      prev = v;
    }
    double vm = -1e300;
    for (double m : {1.0, 2.0, 5.0, 20.0, 1000.0}) {
      double v = ln_aggregated(spec, 0.7, n, m).value;
      REQUIRE(v > vm);
      vm = v;
    }
  }
}

TEST_CASE("symmetric closed-form root") {
  // L_3(s) = (1-s) log 2 + (1/3) log(15/64) for lambda = p = (1/2,1/2), m = 2
  double s3 = probabilistic_root_m(symmetric(), 3, 2.0);
  double expect = 1.0 + std::log(15.0 / 64.0) / (3.0 * std::log(2.0));
  CHECK(s3 == doctest::Approx(expect).epsilon(1e-11));
  double check = ln_aggregated(symmetric(), s3, 3, 2.0).value;
  CHECK(std::abs(check) <= 1e-11);
}

TEST_CASE("huge multiplicities saturate the root at s0") {
  for (uint64_t seed : {5u, 9u}) {
    IfsSpec spec = random_spec(seed, 2);
    double s0 = similarity_dimension(spec);
    // once m * p_w >= ~40 for every word the factor is indistinguishable
    // from 1 and the equation collapses to Hutchinson at depth n
    uint64_t n = 6;
    double pmin_n = std::pow(spec.p_min(), double(n));
    double m = 50.0 / pmin_n;
    double s = probabilistic_root_m(spec, n, m);
    REQUIRE(std::abs(s - s0) <= 1e-6);
  }
}

TEST_CASE("root sandwich bound") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    IfsSpec spec = random_spec(seed, 2 + seed % 2);
    uint64_t n = 3 + mix64(seed) % 10;
    double m = std::floor(1.0 + 100.0 * uniform01(seed, 50));
    double s = probabilistic_root_m(spec, n, m);
    double hi = similarity_dimension(spec) +
                std::log(double(n) * m) /
                    (double(n) * -std::log(spec.lambda_max())) +
                1.0;
    REQUIRE(s > 0.0 - 1e-12);
    REQUIRE(s < hi);
  }
}

TEST_CASE("schedule-driven root converges toward the spectrum value") {
  IfsSpec homog = IfsSpec::validate(std::vector<double>{0.4, 0.4},
                                    std::vector<double>{0.2, 0.8});
  double target = spectrum_s(homog, 0.3);
  double s300 = probabilistic_root(homog, 0.3, 300);
  // the canonical m(n) carries a log(n)/n bias, so the finite-n gap at
  // n = 300 sits near 0.026
  CHECK(std::abs(s300 - target) <= 0.03);
  double s1200 = probabilistic_root(homog, 0.3, 1200);
  CHECK(std::abs(s1200 - target) < std::abs(s300 - target));
  CHECK_THROWS_AS(probabilistic_root(homog, 0.3, 2), Error);
}

TEST_CASE("convergence report: gaps eventually shrink, rows sorted") {
  IfsSpec spec = IfsSpec::validate(std::vector<double>{0.5, 0.3},
                                   std::vector<double>{0.4, 0.6});
  auto rows = convergence_report(spec, 0.25, {400, 50, 100, 200});
  REQUIRE(rows.size() == 4);
  for (size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i].n > rows[i - 1].n);
  REQUIRE(rows.back().gap < rows.front().gap);
  for (const auto& r : rows) {
    REQUIRE(std::isfinite(r.s_n));
    REQUIRE(std::isfinite(r.s_n_exp));
    REQUIRE(r.gap == std::abs(r.s_n - r.s_alpha));
  }
}

TEST_CASE("degenerate uniform profile at moderate depth") {
  IfsSpec u = IfsSpec::validate(std::vector<double>{0.45, 0.45},
                                std::vector<double>{0.5, 0.5});
  double a = 0.55;
  double s400 = probabilistic_root(u, a, 400);
  double profile = std::min(a / -std::log(0.45), similarity_dimension(u));
  CHECK(std::abs(s400 - profile) <= 0.05);
}

TEST_CASE("n = 1 row is present and finite whenever m(1) >= 1") {
  IfsSpec spec = symmetric();
  // alpha large enough that level 1 holds at least one index
  auto rows = convergence_report(spec, 1.0, {1, 8});
  REQUIRE(!rows.empty());
  CHECK(rows.front().n == 1);
  CHECK(std::isfinite(rows.front().s_n));
}
