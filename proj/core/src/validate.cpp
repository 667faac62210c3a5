#include "spl/validate.hpp"

#include <cmath>

#include "spl/eval.hpp"
#include "spl/logspace.hpp"

namespace spl {

bool checkSmooth(const Circuit& c) {
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    if (u.kind != UnitKind::Sum || u.children.empty()) continue;
    const VarSet& first = c.scope(u.children[0]);
    for (size_t i = 1; i < u.children.size(); ++i)
      if (c.scope(u.children[i]) != first) return false;
  }
  return true;
}

bool checkDecomposable(const Circuit& c) {
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    if (u.kind != UnitKind::Product) continue;
    if (!c.scope(u.children[0]).disjointWith(c.scope(u.children[1]))) return false;
  }
  return true;
}

namespace {

// Structural support: parameters replaced by generic positive values, so a
// unit is nonzero exactly where some parameterization makes it nonzero.
ParameterVector genericParams(const Circuit& c) {
  ParameterVector p(c.numSlots(), 0.5);
  for (size_t i = 0; i < c.numSlots(); ++i)
    if (c.slots()[i].kind == SlotKind::SumWeight) p[i] = 1.0;
  return p;
}

struct ForcedLits {
  VarSet mustTrue;
  VarSet mustFalse;
  bool emptySupport = false;
};

std::vector<ForcedLits> forcedLiterals(const Circuit& c) {
  std::vector<ForcedLits> f(c.numUnits());
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    ForcedLits& out = f[id];
    out.mustTrue = VarSet(c.numVars());
    out.mustFalse = VarSet(c.numVars());
    switch (u.kind) {
      case UnitKind::Indicator:
        (u.polarity ? out.mustTrue : out.mustFalse).set(u.var);
        break;
      case UnitKind::Bernoulli:
        break;
      case UnitKind::Product:
        for (UnitId ch : u.children) {
          out.mustTrue.unionWith(f[ch].mustTrue);
          out.mustFalse.unionWith(f[ch].mustFalse);
          out.emptySupport = out.emptySupport || f[ch].emptySupport;
        }
        if (out.mustTrue.intersects(out.mustFalse)) out.emptySupport = true;
        break;
      case UnitKind::Sum: {
        bool first = true;
        bool allEmpty = true;
        for (UnitId ch : u.children) {
          if (f[ch].emptySupport) continue;
          allEmpty = false;
          if (first) {
            out.mustTrue = f[ch].mustTrue;
            out.mustFalse = f[ch].mustFalse;
            first = false;
          } else {
            out.mustTrue = out.mustTrue.intersectionWith(f[ch].mustTrue);
            out.mustFalse = out.mustFalse.intersectionWith(f[ch].mustFalse);
          }
        }
        out.emptySupport = allEmpty;
        break;
      }
    }
  }
  return f;
}

bool forcedDisjoint(const ForcedLits& a, const ForcedLits& b) {
  if (a.emptySupport || b.emptySupport) return true;
  return a.mustTrue.intersects(b.mustFalse) || a.mustFalse.intersects(b.mustTrue);
}

// Evaluates the sub-DAG below `roots` over every assignment of `vars` and
// reports whether two roots are ever simultaneously nonzero.
bool childrenOverlap(const Circuit& c, const std::vector<UnitId>& roots,
                     const std::vector<VarId>& vars, const ParameterVector& params) {
  std::vector<uint8_t> marked(c.numUnits(), 0);
  // children precede parents, so one reverse sweep marks the sub-DAG
  for (UnitId r : roots) marked[r] = 1;
  for (UnitId id = static_cast<UnitId>(c.numUnits()); id-- > 0;) {
    if (!marked[id]) continue;
    for (UnitId ch : c.unit(id).children) marked[ch] = 1;
  }

  std::vector<double> logVal(c.numUnits(), kLogZero);
  Assignment a(c.numVars(), VarState::False);
  uint64_t total = uint64_t(1) << vars.size();
  for (uint64_t m = 0; m < total; ++m) {
    for (size_t i = 0; i < vars.size(); ++i) a.set(vars[i], (m >> i) & 1);
    for (UnitId id = 0; id < c.numUnits(); ++id) {
      if (!marked[id]) continue;
      const Unit& u = c.unit(id);
      switch (u.kind) {
        case UnitKind::Indicator:
          logVal[id] = (a.value(u.var) == u.polarity) ? 0.0 : kLogZero;
          break;
        case UnitKind::Bernoulli:
          logVal[id] = logFromLinear(0.5);
          break;
        case UnitKind::Product:
          logVal[id] = logMul(logVal[u.children[0]], logVal[u.children[1]]);
          break;
        case UnitKind::Sum: {
          double acc = kLogZero;
          for (size_t i = 0; i < u.children.size(); ++i)
            acc = logAdd(acc, logVal[u.children[i]]);
          logVal[id] = acc;
          break;
        }
      }
    }
    int nonzero = 0;
    for (UnitId r : roots)
      if (!isLogZero(logVal[r]) && ++nonzero > 1) return true;
  }
  return false;
}

}  // namespace

bool checkDeterminismExact(const Circuit& c) {
  std::vector<VarId> vars = c.scope().toVector();
  require(vars.size() <= 25, Errc::ScopeTooLarge, "exact determinism check capped at 25 vars");
  ParameterVector params = genericParams(c);
  std::vector<double> logVal(c.numUnits());
  Assignment a(c.numVars(), VarState::False);
  EvalWorkspace ws;
  uint64_t total = uint64_t(1) << vars.size();
  for (uint64_t m = 0; m < total; ++m) {
    for (size_t i = 0; i < vars.size(); ++i) a.set(vars[i], (m >> i) & 1);
    evaluateLog(c, params, a, ws);
    for (UnitId id = 0; id < c.numUnits(); ++id) {
      const Unit& u = c.unit(id);
      if (u.kind != UnitKind::Sum) continue;
      int nonzero = 0;
      for (UnitId ch : u.children)
        if (!isLogZero(ws.logVal[ch]) && ++nonzero > 1) return false;
    }
  }
  return true;
}

bool checkDeterminismSyntactic(const Circuit& c) {
  std::vector<ForcedLits> forced = forcedLiterals(c);
  ParameterVector params = genericParams(c);
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    if (u.kind != UnitKind::Sum || u.children.size() < 2) continue;
    bool allDisjoint = true;
    for (size_t i = 0; i < u.children.size() && allDisjoint; ++i)
      for (size_t j = i + 1; j < u.children.size() && allDisjoint; ++j)
        allDisjoint = forcedDisjoint(forced[u.children[i]], forced[u.children[j]]);
    if (allDisjoint) continue;
    std::vector<VarId> vars = c.scope(id).toVector();
    if (vars.size() > kExactDeterminismMaxVars) return false;
    if (childrenOverlap(c, u.children, vars, params)) return false;
  }
  return true;
}

StructureFlags validateStructure(const Circuit& c) {
  StructureFlags f;
  f.smooth = checkSmooth(c);
  f.decomposable = checkDecomposable(c);
  if (c.scope().count() <= kExactDeterminismMaxVars) {
    f.deterministic = checkDeterminismExact(c);
    f.deterministicExact = true;
  } else {
    f.deterministic = checkDeterminismSyntactic(c);
    f.deterministicExact = false;
  }
  return f;
}

void stampFlags(Circuit& c) { c.setFlags(validateStructure(c)); }

}  // namespace spl
