#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spl/errors.hpp"
#include "spl/varset.hpp"

namespace spl {

using UnitId = uint32_t;
inline constexpr UnitId kNoUnit = static_cast<UnitId>(-1);

enum class UnitKind : uint8_t { Indicator, Bernoulli, Sum, Product };

// A sum-edge weight is either the constant 1, a slot of the parameter
// vector, or one minus a slot (the negative branch of a Bernoulli factor
// absorbed into a product circuit).
enum class WeightKind : uint8_t { FixedOne, Slot, OneMinusSlot };

struct WeightRef {
  WeightKind kind = WeightKind::FixedOne;
  int32_t slot = -1;

  static WeightRef fixedOne() { return {WeightKind::FixedOne, -1}; }
  static WeightRef ofSlot(int32_t s) { return {WeightKind::Slot, s}; }
  static WeightRef oneMinusSlot(int32_t s) { return {WeightKind::OneMinusSlot, s}; }
};

struct Unit {
  UnitKind kind;
  VarId var = 0;         // Indicator / Bernoulli
  bool polarity = true;  // Indicator
  int32_t slot = -1;     // Bernoulli lambda slot
  std::vector<UnitId> children;    // Sum (any arity), Product (exactly two)
  std::vector<WeightRef> weights;  // Sum only, parallel to children
};

enum class SlotKind : uint8_t { Bernoulli, SumWeight };

struct SlotInfo {
  SlotKind kind;
  UnitId owner;
  int32_t group = -1;  // softmax group for sum weights, -1 for Bernoulli slots
};

struct StructureFlags {
  bool smooth = false;
  bool decomposable = false;
  bool deterministic = false;
  bool deterministicExact = false;  // true when the determinism verdict came from enumeration
};

// Immutable circuit DAG in topological order (children precede parents,
// root last). Parameters live outside the structure in a flat vector so a
// single structure can be re-parameterized per example.
class Circuit {
 public:
  uint32_t numVars() const { return numVars_; }
  size_t numUnits() const { return units_.size(); }
  UnitId root() const { return root_; }
  const Unit& unit(UnitId id) const { return units_[id]; }
  const std::vector<Unit>& units() const { return units_; }
  const VarSet& scope(UnitId id) const { return scopes_[id]; }
  const VarSet& scope() const { return scopes_[root_]; }

  size_t numSlots() const { return slots_.size(); }
  const std::vector<SlotInfo>& slots() const { return slots_; }
  // Softmax groups over sum-weight slots, each listed in child order.
  const std::vector<std::vector<int32_t>>& weightGroups() const { return groups_; }

  const StructureFlags& flags() const { return flags_; }
  void setFlags(const StructureFlags& f) { flags_ = f; }

  size_t numEdges() const;
  uint32_t depth() const;

 private:
  friend class CircuitBuilder;
  uint32_t numVars_ = 0;
  UnitId root_ = kNoUnit;
  std::vector<Unit> units_;
  std::vector<VarSet> scopes_;
  std::vector<SlotInfo> slots_;
  std::vector<std::vector<int32_t>> groups_;
  StructureFlags flags_;
};

// Append-only builder; children must already exist, so the unit array is
// topologically ordered by construction.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(uint32_t numVars) : numVars_(numVars) {}

  UnitId indicator(VarId var, bool polarity);
  UnitId bernoulli(VarId var);  // allocates a lambda slot

  // Sum with all weights fixed to 1 (constraint-circuit style).
  UnitId sum(const std::vector<UnitId>& children);
  // Sum with a fresh softmax group of weight slots.
  UnitId sumSlots(const std::vector<UnitId>& children);
  // Sum with explicit weight references (product construction).
  UnitId sumWeighted(const std::vector<UnitId>& children, const std::vector<WeightRef>& weights);

  // n-ary products are left-folded into binary units.
  UnitId product(const std::vector<UnitId>& children);

  size_t numUnits() const { return units_.size(); }
  const VarSet& scope(UnitId id) const { return scopes_[id]; }
  const Unit& unit(UnitId id) const { return units_[id]; }

  Circuit finish(UnitId root) &&;

 private:
  UnitId push(Unit u);
  void checkChild(UnitId c) const;

  uint32_t numVars_;
  std::vector<Unit> units_;
  std::vector<VarSet> scopes_;
  std::vector<SlotInfo> slots_;
  std::vector<std::vector<int32_t>> groups_;
};

// Parameter helpers ---------------------------------------------------------

using ParameterVector = std::vector<double>;

// Bernoullis at 0.5, softmax groups uniform, ungrouped weights 1.
ParameterVector uniformParams(const Circuit& c);

// Validates shape and ranges; simplex check covers grouped sum weights.
void checkParams(const Circuit& c, std::span<const double> params, bool requireSimplex = false);

// Structural transform: every sum with two or more children gets a fresh
// softmax group of weight slots; Bernoulli slots are renumbered in order.
Circuit parameterizeSums(const Circuit& c);

}  // namespace spl
