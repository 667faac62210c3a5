#include "spl/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace spl {

size_t Circuit::numEdges() const {
  size_t e = 0;
  for (const Unit& u : units_) e += u.children.size();
  return e;
}

uint32_t Circuit::depth() const {
  std::vector<uint32_t> d(units_.size(), 0);
  uint32_t best = 0;
  for (size_t i = 0; i < units_.size(); ++i) {
    for (UnitId c : units_[i].children) d[i] = std::max(d[i], d[c] + 1);
    best = std::max(best, d[i]);
  }
  return best;
}

void CircuitBuilder::checkChild(UnitId c) const {
  require(c < units_.size(), Errc::DanglingChild,
          "child id " + std::to_string(c) + " not yet defined");
}

UnitId CircuitBuilder::push(Unit u) {
  VarSet s(numVars_);
  if (u.kind == UnitKind::Indicator || u.kind == UnitKind::Bernoulli) {
    require(u.var < numVars_, Errc::DanglingChild,
            "variable " + std::to_string(u.var) + " out of range");
    s.set(u.var);
  } else {
    for (UnitId c : u.children) s.unionWith(scopes_[c]);
  }
  units_.push_back(std::move(u));
  scopes_.push_back(std::move(s));
  return static_cast<UnitId>(units_.size() - 1);
}

UnitId CircuitBuilder::indicator(VarId var, bool polarity) {
  Unit u;
  u.kind = UnitKind::Indicator;
  u.var = var;
  u.polarity = polarity;
  return push(std::move(u));
}

UnitId CircuitBuilder::bernoulli(VarId var) {
  Unit u;
  u.kind = UnitKind::Bernoulli;
  u.var = var;
  u.slot = static_cast<int32_t>(slots_.size());
  UnitId id = push(std::move(u));
  slots_.push_back({SlotKind::Bernoulli, id, -1});
  return id;
}

UnitId CircuitBuilder::sum(const std::vector<UnitId>& children) {
  std::vector<WeightRef> w(children.size(), WeightRef::fixedOne());
  return sumWeighted(children, w);
}

UnitId CircuitBuilder::sumSlots(const std::vector<UnitId>& children) {
  std::vector<WeightRef> w;
  std::vector<int32_t> group;
  w.reserve(children.size());
  for (size_t i = 0; i < children.size(); ++i) {
    int32_t slot = static_cast<int32_t>(slots_.size() + i);
    w.push_back(WeightRef::ofSlot(slot));
    group.push_back(slot);
  }
  UnitId id = sumWeighted(children, w);
  int32_t g = static_cast<int32_t>(groups_.size());
  for (size_t i = 0; i < children.size(); ++i)
    slots_.push_back({SlotKind::SumWeight, id, g});
  groups_.push_back(std::move(group));
  return id;
}

UnitId CircuitBuilder::sumWeighted(const std::vector<UnitId>& children,
                                   const std::vector<WeightRef>& weights) {
  require(children.size() == weights.size(), Errc::ParamShapeMismatch,
          "sum children/weights length mismatch");
  for (UnitId c : children) checkChild(c);
  Unit u;
  u.kind = UnitKind::Sum;
  u.children = children;
  u.weights = weights;
  return push(std::move(u));
}

UnitId CircuitBuilder::product(const std::vector<UnitId>& children) {
  require(!children.empty(), Errc::DanglingChild, "product needs at least one child");
  for (UnitId c : children) checkChild(c);
  if (children.size() == 1) return children[0];
  UnitId acc = children[0];
  for (size_t i = 1; i < children.size(); ++i) {
    Unit u;
    u.kind = UnitKind::Product;
    u.children = {acc, children[i]};
    acc = push(std::move(u));
  }
  return acc;
}

Circuit CircuitBuilder::finish(UnitId root) && {
  checkChild(root);
  Circuit c;
  c.numVars_ = numVars_;
  c.root_ = root;
  c.units_ = std::move(units_);
  c.scopes_ = std::move(scopes_);
  c.slots_ = std::move(slots_);
  c.groups_ = std::move(groups_);
  return c;
}

ParameterVector uniformParams(const Circuit& c) {
  ParameterVector p(c.numSlots(), 0.0);
  for (size_t i = 0; i < c.numSlots(); ++i) {
    const SlotInfo& s = c.slots()[i];
    if (s.kind == SlotKind::Bernoulli) {
      p[i] = 0.5;
    } else {
      p[i] = 1.0;  // overwritten below for grouped slots
    }
  }
  for (const auto& g : c.weightGroups()) {
    double w = 1.0 / static_cast<double>(g.size());
    for (int32_t s : g) p[static_cast<size_t>(s)] = w;
  }
  return p;
}

void checkParams(const Circuit& c, std::span<const double> params, bool requireSimplex) {
  require(params.size() == c.numSlots(), Errc::ParamShapeMismatch,
          "expected " + std::to_string(c.numSlots()) + " parameters, got " +
              std::to_string(params.size()));
  for (size_t i = 0; i < c.numSlots(); ++i) {
    const SlotInfo& s = c.slots()[i];
    double v = params[i];
    require(std::isfinite(v), Errc::ParamShapeMismatch, "non-finite parameter");
    if (s.kind == SlotKind::Bernoulli) {
      require(v >= 0.0 && v <= 1.0, Errc::ParamShapeMismatch, "Bernoulli slot outside [0,1]");
    } else {
      require(v >= 0.0, Errc::ParamShapeMismatch, "negative sum weight");
    }
  }
  if (requireSimplex) {
    for (const auto& g : c.weightGroups()) {
      double sum = 0.0;
      for (int32_t s : g) sum += params[static_cast<size_t>(s)];
      require(std::abs(sum - 1.0) <= 1e-9, Errc::ParamShapeMismatch,
              "sum-weight group not on the simplex");
    }
  }
}

Circuit parameterizeSums(const Circuit& c) {
  CircuitBuilder b(c.numVars());
  std::vector<UnitId> map(c.numUnits());
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    switch (u.kind) {
      case UnitKind::Indicator:
        map[id] = b.indicator(u.var, u.polarity);
        break;
      case UnitKind::Bernoulli:
        map[id] = b.bernoulli(u.var);
        break;
      case UnitKind::Product: {
        std::vector<UnitId> ch;
        for (UnitId x : u.children) ch.push_back(map[x]);
        map[id] = b.product(ch);
        break;
      }
      case UnitKind::Sum: {
        std::vector<UnitId> ch;
        for (UnitId x : u.children) ch.push_back(map[x]);
        map[id] = ch.size() >= 2 ? b.sumSlots(ch) : b.sum(ch);
        break;
      }
    }
  }
  return std::move(b).finish(map[c.root()]);
}

}  // namespace spl
