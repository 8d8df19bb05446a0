#pragma once
// Neighborhood representations with a common insert/merge surface: exact
// vertex sets, KMV distinct-count sketches and minhash signatures. All three
// are insertion-order invariant and merge as a semilattice join (commutative,
// associative, idempotent), so any union schedule over the same underlying
// sets produces representation-equal stores.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "twohop/graph.hpp"
#include "twohop/hashing.hpp"
#include "twohop/rng.hpp"

namespace twohop {

template <typename S>
concept BallStore = std::copyable<S> && requires(S s, const S& cs, VertexId v) {
  s.insert(v);
  s.merge(cs);
};

// Lossless set of vertices.
class ExactBall {
 public:
  void insert(VertexId v) { members_.insert(v); }

  void merge(const ExactBall& src) { members_.insert(src.members_.begin(), src.members_.end()); }

  std::size_t size() const { return members_.size(); }
  bool contains(VertexId v) const { return members_.contains(v); }
  double estimate_size() const { return static_cast<double>(members_.size()); }
  const std::unordered_set<VertexId>& members() const { return members_; }

  double jaccard(const ExactBall& other) const {
    const ExactBall& small = size() <= other.size() ? *this : other;
    const ExactBall& large = size() <= other.size() ? other : *this;
    std::size_t common = 0;
    for (VertexId v : small.members_)
      if (large.contains(v)) ++common;
    const std::size_t unions = size() + other.size() - common;
    return unions == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unions);
  }

  friend bool operator==(const ExactBall&, const ExactBall&) = default;

  struct Factory {
    ExactBall make() const { return {}; }
  };

 private:
  std::unordered_set<VertexId> members_;
};

// Keeps the `capacity` smallest distinct 64-bit hash values of the inserted
// items. While fewer than `capacity` distinct values have been seen the
// sketch is lossless and reports the exact distinct count; past that point
// the cardinality estimate is (s-1)/v_s with v_s the s-th smallest hash
// normalized to (0,1). Two items colliding on the full 64-bit hash undercount
// by one, which is the standard trade-off at this hash width.
class KmvSketch {
 public:
  KmvSketch(std::uint32_t capacity, const TabulationHash* hash)
      : capacity_(capacity), hash_(hash) {
    if (capacity_ == 0) throw std::invalid_argument("kmv: capacity must be positive");
    values_.reserve(capacity_);
  }

  void insert(VertexId v) { push((*hash_)(v)); }

  void merge(const KmvSketch& src) {
    if (capacity_ != src.capacity_ || hash_->seed() != src.hash_->seed())
      throw std::invalid_argument("kmv merge: capacity/seed mismatch");
    // Both value lists are sorted; keep the capacity_ smallest of their
    // distinct union.
    if (src.values_.empty()) return;
    static thread_local std::vector<std::uint64_t> scratch;
    scratch.clear();
    std::size_t i = 0, j = 0;
    while (scratch.size() < capacity_ && (i < values_.size() || j < src.values_.size())) {
      if (j == src.values_.size() || (i < values_.size() && values_[i] < src.values_[j])) {
        scratch.push_back(values_[i++]);
      } else {
        if (i < values_.size() && values_[i] == src.values_[j]) ++i;
        scratch.push_back(src.values_[j++]);
      }
    }
    values_.assign(scratch.begin(), scratch.end());
  }

  // True while fewer than `capacity` distinct items have been seen; the
  // sketch then still holds every hash and the estimate is exact.
  bool exact_fill() const { return values_.size() < capacity_; }

  double estimate_size() const {
    if (exact_fill()) return static_cast<double>(values_.size());
    const double v_s = (static_cast<double>(values_.back()) + 1.0) * 0x1.0p-64;
    return static_cast<double>(capacity_ - 1) / v_s;
  }

  std::uint32_t capacity() const { return capacity_; }
  std::uint64_t seed() const { return hash_->seed(); }
  const std::vector<std::uint64_t>& values() const { return values_; }

  friend bool operator==(const KmvSketch& a, const KmvSketch& b) {
    return a.capacity_ == b.capacity_ && a.hash_->seed() == b.hash_->seed() &&
           a.values_ == b.values_;
  }

  // Shares one tabulation hash across every sketch it makes.
  class Factory {
   public:
    Factory(std::uint32_t capacity, std::uint64_t seed)
        : capacity_(capacity), hash_(std::make_shared<TabulationHash>(seed)) {}

    KmvSketch make() const { return KmvSketch(capacity_, hash_.get()); }

   private:
    std::uint32_t capacity_;
    std::shared_ptr<const TabulationHash> hash_;
  };

 private:
  void push(std::uint64_t h) {
    if (values_.size() == capacity_ && h >= values_.back()) return;
    auto it = std::lower_bound(values_.begin(), values_.end(), h);
    if (it != values_.end() && *it == h) return;
    values_.insert(it, h);
    if (values_.size() > capacity_) values_.pop_back();
  }

  std::uint32_t capacity_;
  const TabulationHash* hash_;
  std::vector<std::uint64_t> values_;
};

// Bank of `width` independent tabulation hashes derived from one seed.
class MinHashBank {
 public:
  MinHashBank(std::size_t width, std::uint64_t seed) : seed_(seed) {
    hashes_.reserve(width);
    for (std::size_t i = 0; i < width; ++i) hashes_.emplace_back(derive_seed(seed, i));
  }

  std::size_t width() const { return hashes_.size(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t hash(std::size_t i, VertexId v) const { return hashes_[i](v); }

 private:
  std::uint64_t seed_;
  std::vector<TabulationHash> hashes_;
};

// Coordinate-wise minima under the bank's hash functions; the fraction of
// matching coordinates between two signatures estimates the Jaccard
// similarity of the underlying sets.
class MinHashSignature {
 public:
  explicit MinHashSignature(const MinHashBank* bank)
      : bank_(bank), mins_(bank->width(), kEmpty) {}

  void insert(VertexId v) {
    for (std::size_t i = 0; i < mins_.size(); ++i)
      mins_[i] = std::min(mins_[i], bank_->hash(i, v));
  }

  void merge(const MinHashSignature& src) {
    check_compatible(src);
    for (std::size_t i = 0; i < mins_.size(); ++i) mins_[i] = std::min(mins_[i], src.mins_[i]);
  }

  double jaccard(const MinHashSignature& other) const {
    check_compatible(other);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < mins_.size(); ++i)
      if (mins_[i] == other.mins_[i]) ++matches;
    return static_cast<double>(matches) / static_cast<double>(mins_.size());
  }

  std::size_t width() const { return mins_.size(); }
  std::uint64_t seed() const { return bank_->seed(); }
  const std::vector<std::uint64_t>& mins() const { return mins_; }

  friend bool operator==(const MinHashSignature& a, const MinHashSignature& b) {
    return a.bank_->seed() == b.bank_->seed() && a.mins_ == b.mins_;
  }

  class Factory {
   public:
    Factory(std::size_t width, std::uint64_t seed)
        : bank_(std::make_shared<MinHashBank>(width, seed)) {}

    MinHashSignature make() const { return MinHashSignature(bank_.get()); }

   private:
    std::shared_ptr<const MinHashBank> bank_;
  };

 private:
  static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

  void check_compatible(const MinHashSignature& other) const {
    if (mins_.size() != other.mins_.size() || bank_->seed() != other.bank_->seed())
      throw std::invalid_argument("minhash: width/seed mismatch");
  }

  const MinHashBank* bank_;
  std::vector<std::uint64_t> mins_;
};

// KMV counter and minhash signature maintained side by side, for runs that
// serve both size and similarity queries off one engine.
class KmvMinHash {
 public:
  KmvMinHash(KmvSketch counter, MinHashSignature signature)
      : counter_(std::move(counter)), signature_(std::move(signature)) {}

  void insert(VertexId v) {
    counter_.insert(v);
    signature_.insert(v);
  }

  void merge(const KmvMinHash& src) {
    counter_.merge(src.counter_);
    signature_.merge(src.signature_);
  }

  double estimate_size() const { return counter_.estimate_size(); }
  double jaccard(const KmvMinHash& other) const { return signature_.jaccard(other.signature_); }

  const KmvSketch& counter() const { return counter_; }
  const MinHashSignature& signature() const { return signature_; }

  friend bool operator==(const KmvMinHash&, const KmvMinHash&) = default;

  class Factory {
   public:
    Factory(std::uint32_t capacity, std::size_t width, std::uint64_t seed)
        : kmv_(capacity, derive_seed(seed, 0)), minhash_(width, derive_seed(seed, 1)) {}

    KmvMinHash make() const { return KmvMinHash(kmv_.make(), minhash_.make()); }

   private:
    KmvSketch::Factory kmv_;
    MinHashSignature::Factory minhash_;
  };

 private:
  KmvSketch counter_;
  MinHashSignature signature_;
};

static_assert(BallStore<ExactBall>);
static_assert(BallStore<KmvSketch>);
static_assert(BallStore<MinHashSignature>);
static_assert(BallStore<KmvMinHash>);

}  // namespace twohop
