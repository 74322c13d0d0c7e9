#ifndef COVERSPECTRA_IFS_HPP
#define COVERSPECTRA_IFS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace coverspectra {

/// Finite word over the alphabet {1,...,N}. The empty word is allowed.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<uint8_t> digits) : digits_(std::move(digits)) {}

  static Word empty() { return Word(); }

  size_t size() const { return digits_.size(); }
  bool is_empty() const { return digits_.empty(); }
  uint8_t digit(size_t i) const { return digits_[i]; }
  const std::vector<uint8_t>& digits() const { return digits_; }

  void push_back(uint8_t d) { digits_.push_back(d); }

  Word concat(const Word& other) const;
  /// First n digits (n <= size).
  Word prefix(size_t n) const;
  /// Drops the first n digits (the shift applied n times to a finite window).
  Word shift(size_t n) const;
  /// true iff *this is an initial segment of w.
  bool is_prefix_of(const Word& w) const;

  bool operator==(const Word&) const = default;
  /// length-lexicographic order: shorter first, same length alphabetic
  bool length_lex_less(const Word& w) const;

 private:
  std::vector<uint8_t> digits_;
};

/// Validated symbolic IFS instance: contraction ratios and Bernoulli
/// probabilities over a common alphabet of size N >= 2. Immutable.
class IfsSpec {
 public:
  /// Validates and constructs; never renormalizes silently.
  /// Throws LengthMismatch / RatioOutOfRange / ProbOutOfRange / ProbSumError.
  static IfsSpec validate(std::span<const double> lambdas,
                          std::span<const double> probs);

  size_t alphabet_size() const { return lambdas_.size(); }
  double lambda(size_t i) const { return lambdas_[i]; }
  double prob(size_t i) const { return probs_[i]; }
  double log_lambda(size_t i) const { return log_lambdas_[i]; }
  double log_prob(size_t i) const { return log_probs_[i]; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::vector<double>& probs() const { return probs_; }
  /// cumulative probabilities, cum[k] = p_1 + ... + p_{k+1}
  const std::vector<double>& cum_probs() const { return cum_probs_; }

  double lambda_max() const { return lambda_max_; }
  double lambda_min() const { return lambda_min_; }
  double p_max() const { return p_max_; }
  double p_min() const { return p_min_; }

  bool probs_all_equal() const;

  /// Throws DigitOutOfRange unless every digit of w is in {1,...,N}.
  void check_word(const Word& w) const;

 private:
  IfsSpec(std::vector<double> lambdas, std::vector<double> probs);

  std::vector<double> lambdas_, probs_;
  std::vector<double> log_lambdas_, log_probs_, cum_probs_;
  double lambda_max_, lambda_min_, p_max_, p_min_;
};

/// Hausdorff dimension of the attractor: the root s0 of sum lambda_i^s = 1.
/// Residual |sum lambda_i^{s0} - 1| <= 1e-12.
double similarity_dimension(const IfsSpec& spec);

struct WordWeights {
  double lambda_w;  // product of ratios along the word
  double p_w;       // product of probabilities along the word
  double log_lambda_w;
  double log_p_w;
};

/// Multiplicative weights of a word; the empty word yields (1,1).
/// Computed as sums of logs. Words longer than 10^6 digits are rejected.
WordWeights word_weights(const IfsSpec& spec, const Word& w);

}  // namespace coverspectra

#endif
