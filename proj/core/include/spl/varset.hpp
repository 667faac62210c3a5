#pragma once

#include <cstdint>
#include <vector>

namespace spl {

using VarId = uint32_t;

// Fixed-width bitset over variable ids.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(uint32_t numVars) : n_(numVars), words_((numVars + 63) / 64, 0) {}

  uint32_t universe() const { return n_; }

  void set(VarId v) { words_[v >> 6] |= uint64_t(1) << (v & 63); }
  bool contains(VarId v) const { return (words_[v >> 6] >> (v & 63)) & 1; }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t w : words_) c += static_cast<uint32_t>(__builtin_popcountll(w));
    return c;
  }
  bool empty() const {
    for (uint64_t w : words_) if (w) return false;
    return true;
  }

  void unionWith(const VarSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }
  bool disjointWith(const VarSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return false;
    return true;
  }
  bool intersects(const VarSet& o) const { return !disjointWith(o); }

  bool operator==(const VarSet& o) const { return words_ == o.words_; }
  bool operator!=(const VarSet& o) const { return !(*this == o); }

  bool isSubsetOf(const VarSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  VarSet intersectionWith(const VarSet& o) const {
    VarSet r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  std::vector<VarId> toVector() const {
    std::vector<VarId> out;
    out.reserve(count());
    for (VarId v = 0; v < n_; ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }

  // Lexicographic order with var 0 most significant and 0 < 1.
  // Returns true if this set's membership pattern precedes o's.
  bool lexBefore(const VarSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t diff = words_[i] ^ o.words_[i];
      if (diff) {
        uint64_t low = diff & ~(diff - 1);
        return (words_[i] & low) == 0;
      }
    }
    return false;
  }

  size_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return static_cast<size_t>(h);
  }

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace spl
