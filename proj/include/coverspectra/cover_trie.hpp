#ifndef COVERSPECTRA_COVER_TRIE_HPP
#define COVERSPECTRA_COVER_TRIE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coverspectra/ifs.hpp"

namespace coverspectra {

/// N-ary trie of covered cylinders. Inserting a target word w marks the node
/// w as fully covered and prunes everything below it; words longer than the
/// depth cap are truncated to their cap-length prefix. Marked nodes form a
/// prefix-free family, and ancestors are never marked by descendants.
///
/// Two coverage notions are exposed:
///  - covered(w): some prefix of w carries a mark (the raw insert semantics);
///  - effectively covered: a node is covered outright, or all of its child
///    subtrees are effectively covered, so its cylinder is tiled completely
///    by deeper marks. Counting at a fixed depth uses this notion.
class CoverTrie {
 public:
  CoverTrie(size_t alphabet_size, size_t depth_cap);

  size_t alphabet_size() const { return n_; }
  size_t depth_cap() const { return cap_; }
  size_t node_count() const { return marked_.size(); }

  /// Inserts a target; idempotent, order-independent (set semantics).
  void insert(const Word& w);
  void insert(std::span<const uint8_t> digits);
  /// Hot-path insert reading digits through a callable (ring buffers etc.).
  template <typename DigitAt>
  void insert_via(size_t len, DigitAt&& digit_at) {
    size_t take = len < cap_ ? len : cap_;
    uint32_t cur = 0;
    for (size_t i = 0; i < take; ++i) {
      if (marked_[cur]) return;
      uint32_t nxt = child_[size_t(cur) * n_ + (digit_at(i) - 1)];
      if (nxt == kNone) {
        nxt = alloc_node();
        child_[size_t(cur) * n_ + (digit_at(i) - 1)] = nxt;
      }
      cur = nxt;
    }
    mark(cur);
  }

  /// true iff some prefix of w is marked.
  bool covered(const Word& w) const;

  /// Number of depth-d cylinders whose closure is effectively covered.
  uint64_t covered_count(size_t depth) const;

  /// Bernoulli mass of the union of marked cylinders. The marked family is
  /// prefix-free so the masses add exactly. Throws WeightError unless
  /// `weights` is a probability vector over the alphabet.
  double measure(std::span<const double> weights) const;

  bool root_marked() const { return marked_[0] != 0; }

  /// log of sum over uncovered depth-d cylinders of lambda_w^t; -inf when
  /// everything is covered. Used by the complement exponent solver.
  double log_uncovered_sum(const IfsSpec& spec, size_t depth, double t) const;

 private:
  static constexpr uint32_t kNone = 0xFFFFFFFFu;

  uint32_t alloc_node();
  void mark(uint32_t node);
  void ensure_effective() const;

  size_t n_;
  size_t cap_;
  std::vector<uint32_t> child_;       // node*N + digit slots
  std::vector<uint8_t> marked_;
  mutable std::vector<uint8_t> eff_;  // memoized effective coverage
  mutable bool eff_valid_ = false;
};

/// Root t of sum_{uncovered depth-d words} lambda_w^t = 1, a finite-scale
/// covering-exponent proxy for the dimension of the complement. nullopt when
/// no depth-d cylinder is uncovered. Residual <= 1e-10.
std::optional<double> complement_exponent(const CoverTrie& trie,
                                          const IfsSpec& spec, size_t depth);

/// Convenience wrapper over CoverTrie::measure.
double covered_measure(const CoverTrie& trie, std::span<const double> weights);

}  // namespace coverspectra

#endif
