#include "coverspectra/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"

namespace coverspectra {

namespace {
constexpr size_t kWordLengthCap = 1000000;
constexpr double kProbSumTol = 1e-12;
}  // namespace

Word Word::concat(const Word& other) const {
  std::vector<uint8_t> d = digits_;
  d.insert(d.end(), other.digits_.begin(), other.digits_.end());
  return Word(std::move(d));
}

Word Word::prefix(size_t n) const {
  return Word(std::vector<uint8_t>(digits_.begin(), digits_.begin() + n));
}

Word Word::shift(size_t n) const {
  if (n >= digits_.size()) return Word();
  return Word(std::vector<uint8_t>(digits_.begin() + n, digits_.end()));
}

bool Word::is_prefix_of(const Word& w) const {
  if (digits_.size() > w.digits_.size()) return false;
  return std::equal(digits_.begin(), digits_.end(), w.digits_.begin());
}

bool Word::length_lex_less(const Word& w) const {
  if (digits_.size() != w.digits_.size())
    return digits_.size() < w.digits_.size();
  return digits_ < w.digits_;
}

IfsSpec::IfsSpec(std::vector<double> lambdas, std::vector<double> probs)
    : lambdas_(std::move(lambdas)), probs_(std::move(probs)) {
  const size_t n = lambdas_.size();
  log_lambdas_.resize(n);
  log_probs_.resize(n);
  cum_probs_.resize(n);
  double c = 0.0;
  for (size_t i = 0; i < n; ++i) {
    log_lambdas_[i] = std::log(lambdas_[i]);
    log_probs_[i] = std::log(probs_[i]);
    c += probs_[i];
    cum_probs_[i] = c;
  }
  cum_probs_.back() = 1.0;  // guard the final CDF bucket against rounding
  lambda_max_ = *std::max_element(lambdas_.begin(), lambdas_.end());
  lambda_min_ = *std::min_element(lambdas_.begin(), lambdas_.end());
  p_max_ = *std::max_element(probs_.begin(), probs_.end());
  p_min_ = *std::min_element(probs_.begin(), probs_.end());
}

IfsSpec IfsSpec::validate(std::span<const double> lambdas,
                          std::span<const double> probs) {
  if (lambdas.size() != probs.size())
    throw Error(Errc::LengthMismatch,
                "lambdas has " + std::to_string(lambdas.size()) +
                    " entries, probs has " + std::to_string(probs.size()));
  if (lambdas.size() < 2)
    throw Error(Errc::LengthMismatch, "need at least 2 maps");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !(lambdas[i] < 1.0))
      throw Error(Errc::RatioOutOfRange,
                  "lambda[" + std::to_string(i) + "] = " +
                      std::to_string(lambdas[i]) + " not in (0,1)");
    if (!(probs[i] > 0.0) || !(probs[i] < 1.0))
      throw Error(Errc::ProbOutOfRange,
                  "p[" + std::to_string(i) + "] = " + std::to_string(probs[i]) +
                      " not in (0,1)");
  }
  KahanSum s;
  for (double p : probs) s.add(p);
  if (std::abs(s.value() - 1.0) > kProbSumTol)
    throw Error(Errc::ProbSumError,
                "probabilities sum to " + std::to_string(s.value()));
  return IfsSpec(std::vector<double>(lambdas.begin(), lambdas.end()),
                 std::vector<double>(probs.begin(), probs.end()));
}

bool IfsSpec::probs_all_equal() const {
  for (size_t i = 1; i < probs_.size(); ++i)
    if (probs_[i] != probs_[0]) return false;
  return true;
}

void IfsSpec::check_word(const Word& w) const {
  const size_t n = alphabet_size();
  for (size_t i = 0; i < w.size(); ++i) {
    uint8_t d = w.digit(i);
    if (d < 1 || d > n)
      throw Error(Errc::DigitOutOfRange,
                  "digit " + std::to_string(int(d)) + " at position " +
                      std::to_string(i) + " outside {1,...," +
                      std::to_string(n) + "}");
  }
}

double similarity_dimension(const IfsSpec& spec) {
  auto f = [&](double s) {
    KahanSum acc;
    for (size_t i = 0; i < spec.alphabet_size(); ++i)
      acc.add(std::exp(s * spec.log_lambda(i)));
    return acc.value() - 1.0;
  };
  // f is strictly decreasing in s; f(0) = N-1 > 0.
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  RootResult r = bisect_decreasing(f, 0.0, hi, 1e-15);
  // Newton polish: f'(s) = sum lambda^s log lambda
  double s = r.x;
  for (int it = 0; it < 3; ++it) {
    double val = 0.0, der = 0.0;
    for (size_t i = 0; i < spec.alphabet_size(); ++i) {
      double t = std::exp(s * spec.log_lambda(i));
      val += t;
      der += t * spec.log_lambda(i);
    }
    s -= (val - 1.0) / der;
  }
  return s;
}

WordWeights word_weights(const IfsSpec& spec, const Word& w) {
  if (w.size() > kWordLengthCap)
    throw Error(Errc::WordTooLong,
                "word of length " + std::to_string(w.size()) +
                    " exceeds cap " + std::to_string(kWordLengthCap));
  spec.check_word(w);
  KahanSum ll, lp;
  for (size_t i = 0; i < w.size(); ++i) {
    ll.add(spec.log_lambda(w.digit(i) - 1));
    lp.add(spec.log_prob(w.digit(i) - 1));
  }
  WordWeights out;
  out.log_lambda_w = ll.value();
  out.log_p_w = lp.value();
  out.lambda_w = std::exp(out.log_lambda_w);
  out.p_w = std::exp(out.log_p_w);
  return out;
}

}  // namespace coverspectra
