#include "coverspectra/cover_trie.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"

namespace coverspectra {

CoverTrie::CoverTrie(size_t alphabet_size, size_t depth_cap)
    : n_(alphabet_size), cap_(depth_cap) {
  if (alphabet_size < 2) throw Error(Errc::ConfigError, "alphabet too small");
  if (depth_cap > 60)
    throw Error(Errc::DepthTooLarge,
                "trie depth cap " + std::to_string(depth_cap) + " > 60");
  alloc_node();  // root
}

uint32_t CoverTrie::alloc_node() {
  uint32_t id = uint32_t(marked_.size());
  marked_.push_back(0);
  child_.insert(child_.end(), n_, kNone);
  eff_valid_ = false;
  return id;
}

void CoverTrie::mark(uint32_t node) {
  marked_[node] = 1;
  for (size_t i = 0; i < n_; ++i) child_[size_t(node) * n_ + i] = kNone;
  eff_valid_ = false;
}

void CoverTrie::insert(const Word& w) {
  insert(std::span<const uint8_t>(w.digits()));
}

void CoverTrie::insert(std::span<const uint8_t> digits) {
  for (uint8_t d : digits)
    if (d < 1 || size_t(d) > n_)
      throw Error(Errc::DigitOutOfRange, "digit " + std::to_string(int(d)));
  insert_via(digits.size(), [&](size_t i) { return digits[i]; });
}

bool CoverTrie::covered(const Word& w) const {
  uint32_t cur = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (marked_[cur]) return true;
    uint32_t nxt = child_[size_t(cur) * n_ + (w.digit(i) - 1)];
    if (nxt == kNone) return false;
    cur = nxt;
  }
  return marked_[cur] != 0;
}

void CoverTrie::ensure_effective() const {
  if (eff_valid_) return;
  const size_t count = marked_.size();
  eff_.assign(count, 0);
  // children always have larger ids than their parent, so a reverse sweep
  // is a valid post-order
  for (size_t v = count; v-- > 0;) {
    if (marked_[v]) {
      eff_[v] = 1;
      continue;
    }
    bool all = true;
    for (size_t i = 0; i < n_ && all; ++i) {
      uint32_t c = child_[v * n_ + i];
      all = (c != kNone) && eff_[c];
    }
    eff_[v] = all ? 1 : 0;
  }
  eff_valid_ = true;
}

uint64_t CoverTrie::covered_count(size_t depth) const {
  ensure_effective();
  // depth-limited DFS; effective nodes absorb whole subtrees
  struct Frame {
    uint32_t node;
    size_t r;
  };
  std::vector<Frame> stack{{0, depth}};
  uint64_t total = 0;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (eff_[f.node]) {
      uint64_t block = 1;
      for (size_t i = 0; i < f.r; ++i) block *= n_;
      total += block;
      continue;
    }
    if (f.r == 0) continue;
    for (size_t i = 0; i < n_; ++i) {
      uint32_t c = child_[size_t(f.node) * n_ + i];
      if (c != kNone) stack.push_back({c, f.r - 1});
    }
  }
  return total;
}

double CoverTrie::measure(std::span<const double> weights) const {
  if (weights.size() != n_)
    throw Error(Errc::WeightError, "expected " + std::to_string(n_) +
                                       " weights, got " +
                                       std::to_string(weights.size()));
  double s = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(Errc::WeightError, "negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9)
    throw Error(Errc::WeightError,
                "weights sum to " + std::to_string(s) + ", not 1");
  struct Frame {
    uint32_t node;
    double mass;
  };
  std::vector<Frame> stack{{0, 1.0}};
  KahanSum total;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (marked_[f.node]) {
      total.add(f.mass);
      continue;
    }
    for (size_t i = 0; i < n_; ++i) {
      uint32_t c = child_[size_t(f.node) * n_ + i];
      if (c != kNone) stack.push_back({c, f.mass * weights[i]});
    }
  }
  return total.value();
}

double CoverTrie::log_uncovered_sum(const IfsSpec& spec, size_t depth,
                                    double t) const {
  ensure_effective();
  // log sum over *all* length-r suffixes: r * log(sum lambda_i^t)
  double log_all_one = kNegInf;
  {
    LogSumExp lse;
    for (size_t i = 0; i < spec.alphabet_size(); ++i)
      lse.add(t * spec.log_lambda(i));
    log_all_one = lse.value();
  }
  // recursive over the touched part of the trie
  std::function<double(uint32_t, size_t)> rec = [&](uint32_t node,
                                                    size_t r) -> double {
    if (eff_[node]) return kNegInf;
    if (r == 0) return 0.0;
    LogSumExp lse;
    for (size_t i = 0; i < n_; ++i) {
      uint32_t c = child_[size_t(node) * n_ + i];
      double tail = (c == kNone) ? double(r - 1) * log_all_one : rec(c, r - 1);
      if (tail != kNegInf) lse.add(t * spec.log_lambda(i) + tail);
    }
    return lse.value();
  };
  return rec(0, depth);
}

std::optional<double> complement_exponent(const CoverTrie& trie,
                                          const IfsSpec& spec, size_t depth) {
  if (spec.alphabet_size() != trie.alphabet_size())
    throw Error(Errc::ConfigError, "spec/trie alphabet mismatch");
  double at_zero = trie.log_uncovered_sum(spec, depth, 0.0);
  if (at_zero == kNegInf) return std::nullopt;  // fully covered
  auto h = [&](double t) { return trie.log_uncovered_sum(spec, depth, t); };
  RootResult r = bisect_decreasing(h, 0.0, similarity_dimension(spec) + 1.0,
                                   1e-13);
  if (std::abs(std::expm1(r.residual)) > 1e-10)
    throw Error(Errc::NoConvergence, "complement exponent residual too large");
  return r.x;
}

double covered_measure(const CoverTrie& trie,
                       std::span<const double> weights) {
  return trie.measure(weights);
}

}  // namespace coverspectra
