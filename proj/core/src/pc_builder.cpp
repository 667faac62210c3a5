#include "spl/pc_builder.hpp"

#include <functional>

namespace spl {

Circuit mixtureOfFactorized(const std::vector<VarId>& vars, uint32_t numVars, int m) {
  require(!vars.empty(), Errc::EmptyVariableSet, "no label variables");
  require(m >= 1, Errc::MalformedInput, "mixture count must be positive");
  CircuitBuilder b(numVars);
  std::vector<UnitId> components;
  for (int i = 0; i < m; ++i) {
    std::vector<UnitId> factors;
    factors.reserve(vars.size());
    for (VarId v : vars) factors.push_back(b.bernoulli(v));
    components.push_back(b.product(factors));
  }
  UnitId root = m == 1 ? components[0] : b.sumSlots(components);
  Circuit c = std::move(b).finish(root);
  c.setFlags({true, true, m == 1, true});
  return c;
}

Circuit vtreePc(const Vtree& vtree, uint32_t numVars, int k) {
  require(k >= 1, Errc::MalformedInput, "region size must be positive");
  CircuitBuilder b(numVars);
  std::function<std::vector<UnitId>(int32_t)> region = [&](int32_t n) -> std::vector<UnitId> {
    std::vector<UnitId> units;
    if (vtree.isLeaf(n)) {
      for (int i = 0; i < k; ++i) units.push_back(b.bernoulli(vtree.var(n)));
      return units;
    }
    std::vector<UnitId> left = region(vtree.left(n));
    std::vector<UnitId> right = region(vtree.right(n));
    std::vector<UnitId> cross;
    for (UnitId l : left)
      for (UnitId r : right) cross.push_back(b.product({l, r}));
    for (int i = 0; i < k; ++i)
      units.push_back(cross.size() == 1 ? cross[0] : b.sumSlots(cross));
    return units;
  };
  std::vector<UnitId> top = region(vtree.root());
  UnitId root = top.size() == 1 ? top[0] : b.sumSlots(top);
  return std::move(b).finish(root);
}

}  // namespace spl
