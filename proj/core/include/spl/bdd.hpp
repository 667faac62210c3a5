#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spl/errors.hpp"

namespace spl {

enum class BddOp : uint8_t { And = 0, Or = 1 };

// Reduced ordered BDD store with a unique table and an apply cache.
// Levels are dense ranks in the global variable order; terminals sit at
// level numLevels(). Refs are indices into a grow-only node arena, so they
// stay valid for the manager's lifetime.
class BddManager {
 public:
  using Ref = uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit BddManager(uint32_t numLevels) : numLevels_(numLevels) {
    nodes_.push_back({numLevels, kFalse, kFalse});
    nodes_.push_back({numLevels, kTrue, kTrue});
  }

  uint32_t numLevels() const { return numLevels_; }
  uint32_t level(Ref f) const { return nodes_[f].level; }
  Ref lo(Ref f) const { return nodes_[f].lo; }
  Ref hi(Ref f) const { return nodes_[f].hi; }
  bool isTerminal(Ref f) const { return f <= kTrue; }

  Ref mk(uint32_t lvl, Ref lo, Ref hi);
  Ref literal(uint32_t lvl, bool positive) {
    return positive ? mk(lvl, kFalse, kTrue) : mk(lvl, kTrue, kFalse);
  }

  Ref apply(BddOp op, Ref a, Ref b);
  Ref conjoin(Ref a, Ref b) { return apply(BddOp::And, a, b); }
  Ref disjoin(Ref a, Ref b) { return apply(BddOp::Or, a, b); }

  // Fixes levels where state is 0 or 1; 2 leaves the level free.
  Ref condition(Ref f, const std::vector<uint8_t>& levelStates);

  size_t numNodes() const { return nodes_.size(); }
  size_t reachableCount(Ref f) const;

  void setApplyCacheEnabled(bool on) {
    cacheEnabled_ = on;
    applyCache_.clear();
  }
  bool applyCacheEnabled() const { return cacheEnabled_; }

 private:
  struct Node {
    uint32_t level;
    Ref lo, hi;
  };
  struct NodeKey {
    uint32_t level;
    Ref lo, hi;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
      uint64_t h = k.level;
      h = h * 0x9e3779b97f4a7c15ull + k.lo;
      h = h * 0x9e3779b97f4a7c15ull + k.hi;
      return static_cast<size_t>(h ^ (h >> 32));
    }
  };
  struct ApplyKey {
    uint8_t op;
    Ref a, b;
    bool operator==(const ApplyKey&) const = default;
  };
  struct ApplyKeyHash {
    size_t operator()(const ApplyKey& k) const {
      uint64_t h = k.op;
      h = h * 0x9e3779b97f4a7c15ull + k.a;
      h = h * 0x9e3779b97f4a7c15ull + k.b;
      return static_cast<size_t>(h ^ (h >> 32));
    }
  };

  std::vector<Node> nodes_;
  std::unordered_map<NodeKey, Ref, NodeKeyHash> unique_;
  std::unordered_map<ApplyKey, Ref, ApplyKeyHash> applyCache_;
  uint32_t numLevels_;
  bool cacheEnabled_ = true;
};

}  // namespace spl
