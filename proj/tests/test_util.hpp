#pragma once

#include <cmath>
#include <vector>

#include "spl/circuit.hpp"
#include "spl/cnf.hpp"
#include "spl/eval.hpp"
#include "spl/pc_builder.hpp"
#include "spl/rng.hpp"
#include "spl/vtree.hpp"

namespace spltest {

using namespace spl;

// Hierarchy constraint (0 => 2) and (1 => 2) over three labels, hand-built
// in decision form along the variable order 0,1,2. Five models.
inline Circuit hierarchyPairCircuit() {
  CircuitBuilder b(3);
  UnitId c1 = b.indicator(0, true), c0 = b.indicator(0, false);
  UnitId d1 = b.indicator(1, true), d0 = b.indicator(1, false);
  UnitId a1 = b.indicator(2, true), a0 = b.indicator(2, false);
  UnitId gadgetD = b.sum({d0, d1});
  UnitId gadgetA = b.sum({a0, a1});
  UnitId whenFirst = b.product({c1, b.product({gadgetD, a1})});
  UnitId inner = b.sum({b.product({d1, a1}), b.product({d0, gadgetA})});
  UnitId whenNotFirst = b.product({c0, inner});
  UnitId root = b.sum({whenFirst, whenNotFirst});
  return std::move(b).finish(root);
}

inline CnfFormula hierarchyPairCnf() {
  CnfFormula f;
  f.numVars = 3;
  f.clauses = {{neg(0), pos(2)}, {neg(1), pos(2)}};
  return f;
}

inline CnfFormula randomCnf(Rng& rng, uint32_t numVars, uint32_t numClauses, uint32_t maxLen) {
  CnfFormula f;
  f.numVars = numVars;
  for (uint32_t i = 0; i < numClauses; ++i) {
    uint32_t len = 1 + static_cast<uint32_t>(rng.below(maxLen));
    Clause cl;
    for (uint32_t j = 0; j < len; ++j)
      cl.push_back({static_cast<VarId>(rng.below(numVars)), rng.coin()});
    f.clauses.push_back(cl);
  }
  return f;
}

inline ParameterVector randomParams(const Circuit& c, Rng& rng, bool simplexSums = true) {
  ParameterVector p(c.numSlots(), 1.0);
  for (size_t i = 0; i < c.numSlots(); ++i)
    if (c.slots()[i].kind == SlotKind::Bernoulli) p[i] = rng.uniform(0.1, 0.9);
  for (const auto& g : c.weightGroups()) {
    double total = 0.0;
    for (int32_t s : g) {
      double w = rng.uniform(0.1, 1.0);
      p[static_cast<size_t>(s)] = w;
      total += w;
    }
    if (simplexSums)
      for (int32_t s : g) p[static_cast<size_t>(s)] /= total;
  }
  return p;
}

// Independent bottom-up evaluator over the linear domain; the oracle for
// the library's log-space forward pass.
inline std::vector<double> evalAllUnits(const Circuit& c, const ParameterVector& p,
                                        const std::vector<uint8_t>& bits) {
  std::vector<double> val(c.numUnits(), 0.0);
  for (UnitId u = 0; u < c.numUnits(); ++u) {
    const Unit& un = c.unit(u);
    switch (un.kind) {
      case UnitKind::Indicator:
        val[u] = (bits[un.var] != 0) == un.polarity ? 1.0 : 0.0;
        break;
      case UnitKind::Bernoulli: {
        double lambda = p[static_cast<size_t>(un.slot)];
        val[u] = bits[un.var] ? lambda : 1.0 - lambda;
        break;
      }
      case UnitKind::Product:
        val[u] = val[un.children[0]] * val[un.children[1]];
        break;
      case UnitKind::Sum: {
        double acc = 0.0;
        for (size_t i = 0; i < un.children.size(); ++i) {
          double w = 1.0;
          if (un.weights[i].kind == WeightKind::Slot)
            w = p[static_cast<size_t>(un.weights[i].slot)];
          else if (un.weights[i].kind == WeightKind::OneMinusSlot)
            w = 1.0 - p[static_cast<size_t>(un.weights[i].slot)];
          acc += w * val[un.children[i]];
        }
        val[u] = acc;
        break;
      }
    }
  }
  return val;
}

inline double evalRec(const Circuit& c, UnitId u, const ParameterVector& p,
                      const std::vector<uint8_t>& bits) {
  return evalAllUnits(c, p, bits)[u];
}

inline std::vector<uint8_t> bitsOf(uint64_t m, const std::vector<VarId>& vars, uint32_t numVars) {
  std::vector<uint8_t> bits(numVars, 0);
  for (size_t i = 0; i < vars.size(); ++i) bits[vars[i]] = static_cast<uint8_t>((m >> i) & 1);
  return bits;
}

inline double bruteTotalMass(const Circuit& c, const ParameterVector& p) {
  std::vector<VarId> vars = c.scope().toVector();
  double total = 0.0;
  for (uint64_t m = 0; m < (uint64_t(1) << vars.size()); ++m)
    total += evalRec(c, c.root(), p, bitsOf(m, vars, c.numVars()));
  return total;
}

inline double relErr(double a, double b) {
  double denom = std::max({std::abs(a), std::abs(b), 1e-12});
  return std::abs(a - b) / denom;
}

}  // namespace spltest
