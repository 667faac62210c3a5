#include "spl/bdd.hpp"

#include <algorithm>

namespace spl {

BddManager::Ref BddManager::mk(uint32_t lvl, Ref lo, Ref hi) {
  if (lo == hi) return lo;
  NodeKey key{lvl, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  nodes_.push_back({lvl, lo, hi});
  Ref r = static_cast<Ref>(nodes_.size() - 1);
  unique_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::apply(BddOp op, Ref a, Ref b) {
  if (op == BddOp::And) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
  } else {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
  }
  if (a == b) return a;
  if (a > b) std::swap(a, b);

  ApplyKey key{static_cast<uint8_t>(op), a, b};
  if (cacheEnabled_) {
    auto it = applyCache_.find(key);
    if (it != applyCache_.end()) return it->second;
  }

  uint32_t m = std::min(level(a), level(b));
  Ref a0 = level(a) == m ? lo(a) : a;
  Ref a1 = level(a) == m ? hi(a) : a;
  Ref b0 = level(b) == m ? lo(b) : b;
  Ref b1 = level(b) == m ? hi(b) : b;
  Ref r = mk(m, apply(op, a0, b0), apply(op, a1, b1));
  if (cacheEnabled_) applyCache_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::condition(Ref f, const std::vector<uint8_t>& levelStates) {
  std::unordered_map<Ref, Ref> memo;
  auto rec = [&](auto&& self, Ref u) -> Ref {
    if (isTerminal(u)) return u;
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    uint32_t lvl = level(u);
    Ref r;
    uint8_t s = levelStates[lvl];
    if (s == 0)
      r = self(self, lo(u));
    else if (s == 1)
      r = self(self, hi(u));
    else
      r = mk(lvl, self(self, lo(u)), self(self, hi(u)));
    memo.emplace(u, r);
    return r;
  };
  return rec(rec, f);
}

size_t BddManager::reachableCount(Ref f) const {
  std::vector<Ref> stack{f};
  std::unordered_map<Ref, bool> seen;
  size_t count = 0;
  while (!stack.empty()) {
    Ref u = stack.back();
    stack.pop_back();
    if (isTerminal(u) || seen[u]) continue;
    seen[u] = true;
    ++count;
    stack.push_back(lo(u));
    stack.push_back(hi(u));
  }
  return count;
}

}  // namespace spl
