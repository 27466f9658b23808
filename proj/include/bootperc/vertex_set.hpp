#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bootperc/errors.hpp"

namespace bootperc {

using Vertex = std::size_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

// Subset of {0, ..., n-1} stored as a padded bit vector. Bits at positions
// >= n are always zero, so word-wise comparisons and popcounts are exact.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_(words_for(n), 0) {}

  VertexSet(std::size_t n, std::initializer_list<Vertex> vs) : VertexSet(n) {
    for (Vertex v : vs) insert(v);
  }

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  static VertexSet from(std::size_t n, std::span<const Vertex> vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  // Lowest `k` vertices: {0, ..., k-1}.
  static VertexSet prefix(std::size_t n, std::size_t k) {
    VertexSet s(n);
    for (Vertex v = 0; v < k && v < n; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return n_; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool contains(Vertex v) const noexcept {
    return v < n_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  void insert(Vertex v) {
    check(v);
    words_[v / kWordBits] |= Word{1} << (v % kWordBits);
  }

  void erase(Vertex v) {
    check(v);
    words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }

  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  // Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet complement() const {
    VertexSet c(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.trim();
    return c;
  }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  bool intersects(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  std::size_t intersection_count(const VertexSet& o) const {
    same_universe(o);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  bool is_full() const { return count() == n_; }

  // Smallest member >= from, or universe() if none.
  Vertex next(Vertex from) const noexcept {
    if (from >= n_) return n_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size()) return n_;
      w = words_[wi];
    }
  }

  Vertex first() const noexcept { return next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  // Lowest `k` members (fewer if the set is smaller).
  VertexSet lowest(std::size_t k) const {
    VertexSet s(n_);
    for (Vertex v = first(); v < n_ && k > 0; v = next(v + 1), --k) s.insert(v);
    return s;
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  // Colexicographic order: compare the largest element where the sets
  // differ. For sets of equal size this is the standard colex order on
  // k-subsets; in general it is the order of sum(2^v).
  friend bool colex_less(const VertexSet& a, const VertexSet& b) {
    a.same_universe(b);
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for_each([&](Vertex v) {
      if (!first_item) s += ",";
      s += std::to_string(v);
      first_item = false;
    });
    return s + "}";
  }

 private:
  void check(Vertex v) const {
    if (v >= n_)
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range for universe of size " +
                            std::to_string(n_));
  }

  void same_universe(const VertexSet& o) const {
    if (o.n_ != n_) throw InvalidArgument("vertex sets over different universes");
  }

  void trim() {
    if (n_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (n_ % kWordBits)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

}  // namespace bootperc
