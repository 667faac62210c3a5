#include "spl/eval.hpp"

#include <algorithm>
#include <cmath>

namespace spl {

namespace {

double weightValue(const WeightRef& w, std::span<const double> params) {
  switch (w.kind) {
    case WeightKind::FixedOne:
      return 1.0;
    case WeightKind::Slot:
      return params[static_cast<size_t>(w.slot)];
    case WeightKind::OneMinusSlot:
      return 1.0 - params[static_cast<size_t>(w.slot)];
  }
  return 1.0;
}

double inputLog(const Unit& u, std::span<const double> params, const Assignment& a) {
  VarState s = a.get(u.var);
  if (u.kind == UnitKind::Indicator) {
    if (s == VarState::Free) return 0.0;  // total mass over both polarities is 1
    return (s == VarState::True) == u.polarity ? 0.0 : kLogZero;
  }
  double lambda = params[static_cast<size_t>(u.slot)];
  if (s == VarState::Free) return 0.0;  // lambda + (1 - lambda)
  return logFromLinear(s == VarState::True ? lambda : 1.0 - lambda);
}

void checkEvalPre(const Circuit& c, std::span<const double> params, const Assignment& a) {
  require(params.size() == c.numSlots(), Errc::ParamShapeMismatch,
          "parameter vector length " + std::to_string(params.size()) + " != slots " +
              std::to_string(c.numSlots()));
  require(a.numVars() >= c.numVars(), Errc::MissingVariable,
          "assignment covers fewer variables than the circuit");
}

void forwardPass(const Circuit& c, std::span<const double> params, const Assignment& a,
                 std::vector<double>& logVal) {
  logVal.resize(c.numUnits());
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    switch (u.kind) {
      case UnitKind::Indicator:
      case UnitKind::Bernoulli:
        logVal[id] = inputLog(u, params, a);
        break;
      case UnitKind::Product:
        logVal[id] = logMul(logVal[u.children[0]], logVal[u.children[1]]);
        break;
      case UnitKind::Sum: {
        double acc = kLogZero;
        for (size_t i = 0; i < u.children.size(); ++i) {
          double w = weightValue(u.weights[i], params);
          acc = logAdd(acc, logMul(logFromLinear(w), logVal[u.children[i]]));
        }
        logVal[id] = acc;
        break;
      }
    }
  }
}

}  // namespace

double evaluateLog(const Circuit& c, std::span<const double> params, const Assignment& a,
                   EvalWorkspace& ws) {
  checkEvalPre(c, params, a);
  forwardPass(c, params, a, ws.logVal);
  return ws.logVal[c.root()];
}

double evaluate(const Circuit& c, std::span<const double> params, const Assignment& a) {
  for (VarId v : c.scope().toVector())
    require(a.numVars() > v && a.isFixed(v), Errc::MissingVariable,
            "variable " + std::to_string(v) + " not assigned");
  EvalWorkspace ws;
  return std::exp(evaluateLog(c, params, a, ws));
}

namespace {

// Reverse pass. Unit adjoints are nonnegative, so they live in log space;
// slot gradients may carry either sign and are accumulated as a
// (positive, negative) pair of log magnitudes.
void adjointPass(const Circuit& c, std::span<const double> params, const Assignment& a,
                 EvalWorkspace& ws) {
  const size_t n = c.numUnits();
  ws.adj.assign(n, kLogZero);
  ws.gradPos.assign(c.numSlots(), kLogZero);
  ws.gradNeg.assign(c.numSlots(), kLogZero);
  ws.adj[c.root()] = 0.0;

  for (UnitId id = static_cast<UnitId>(n); id-- > 0;) {
    const Unit& u = c.unit(id);
    double au = ws.adj[id];
    if (isLogZero(au)) continue;
    switch (u.kind) {
      case UnitKind::Indicator:
        break;
      case UnitKind::Bernoulli: {
        VarState s = a.get(u.var);
        if (s == VarState::Free) break;  // d(1)/dlambda = 0
        size_t slot = static_cast<size_t>(u.slot);
        if (s == VarState::True)
          ws.gradPos[slot] = logAdd(ws.gradPos[slot], au);
        else
          ws.gradNeg[slot] = logAdd(ws.gradNeg[slot], au);
        break;
      }
      case UnitKind::Product: {
        UnitId l = u.children[0], r = u.children[1];
        ws.adj[l] = logAdd(ws.adj[l], logMul(au, ws.logVal[r]));
        ws.adj[r] = logAdd(ws.adj[r], logMul(au, ws.logVal[l]));
        break;
      }
      case UnitKind::Sum: {
        for (size_t i = 0; i < u.children.size(); ++i) {
          UnitId ch = u.children[i];
          const WeightRef& w = u.weights[i];
          double wv = weightValue(w, params);
          ws.adj[ch] = logAdd(ws.adj[ch], logMul(au, logFromLinear(wv)));
          if (w.kind == WeightKind::FixedOne) continue;
          double contrib = logMul(au, ws.logVal[ch]);
          if (isLogZero(contrib)) continue;
          size_t slot = static_cast<size_t>(w.slot);
          if (w.kind == WeightKind::Slot)
            ws.gradPos[slot] = logAdd(ws.gradPos[slot], contrib);
          else
            ws.gradNeg[slot] = logAdd(ws.gradNeg[slot], contrib);
        }
        break;
      }
    }
  }
}

}  // namespace

std::vector<double> backward(const Circuit& c, std::span<const double> params,
                             const Assignment& a, EvalWorkspace& ws) {
  evaluateLog(c, params, a, ws);
  adjointPass(c, params, a, ws);
  std::vector<double> grad(c.numSlots(), 0.0);
  for (size_t i = 0; i < grad.size(); ++i)
    grad[i] = std::exp(ws.gradPos[i]) - std::exp(ws.gradNeg[i]);
  return grad;
}

std::vector<double> backwardLog(const Circuit& c, std::span<const double> params,
                                const Assignment& a, EvalWorkspace& ws) {
  double logRoot = evaluateLog(c, params, a, ws);
  require(!isLogZero(logRoot), Errc::ZeroPartition, "log-gradient at a zero output");
  adjointPass(c, params, a, ws);
  std::vector<double> grad(c.numSlots(), 0.0);
  for (size_t i = 0; i < grad.size(); ++i)
    grad[i] = std::exp(ws.gradPos[i] - logRoot) - std::exp(ws.gradNeg[i] - logRoot);
  return grad;
}

namespace {

// Tolerance for treating two max-sum values as tied; log scale.
constexpr double kTieEps = 1e-11;

struct MaxCell {
  double logVal = kLogZero;
  VarSet best;  // chosen values of Free scope variables
};

}  // namespace

MaxResult maximize(const Circuit& c, std::span<const double> params, const Assignment& a) {
  checkEvalPre(c, params, a);
  std::vector<MaxCell> cell(c.numUnits());
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    MaxCell& out = cell[id];
    switch (u.kind) {
      case UnitKind::Indicator: {
        out.best = VarSet(c.numVars());
        if (a.get(u.var) == VarState::Free) {
          out.logVal = 0.0;
          if (u.polarity) out.best.set(u.var);
        } else {
          out.logVal = inputLog(u, params, a);
        }
        break;
      }
      case UnitKind::Bernoulli: {
        out.best = VarSet(c.numVars());
        if (a.get(u.var) == VarState::Free) {
          double lambda = params[static_cast<size_t>(u.slot)];
          // lexicographic preference for 0 on ties
          if (lambda > 1.0 - lambda + kTieEps) {
            out.logVal = logFromLinear(lambda);
            out.best.set(u.var);
          } else {
            out.logVal = logFromLinear(1.0 - lambda);
          }
        } else {
          out.logVal = inputLog(u, params, a);
        }
        break;
      }
      case UnitKind::Product: {
        const MaxCell& l = cell[u.children[0]];
        const MaxCell& r = cell[u.children[1]];
        out.logVal = logMul(l.logVal, r.logVal);
        out.best = l.best;
        out.best.unionWith(r.best);
        break;
      }
      case UnitKind::Sum: {
        out.best = VarSet(c.numVars());
        bool first = true;
        for (size_t i = 0; i < u.children.size(); ++i) {
          double w = weightValue(u.weights[i], params);
          double v = logMul(logFromLinear(w), cell[u.children[i]].logVal);
          if (isLogZero(v)) continue;
          bool better;
          if (first || isLogZero(out.logVal)) {
            better = true;
          } else if (v > out.logVal + kTieEps) {
            better = true;
          } else if (v >= out.logVal - kTieEps) {
            better = cell[u.children[i]].best.lexBefore(out.best);
          } else {
            better = false;
          }
          if (better) {
            out.logVal = v;
            out.best = cell[u.children[i]].best;
            first = false;
          }
        }
        break;
      }
    }
  }

  MaxResult res;
  res.logValue = cell[c.root()].logVal;
  res.assignment = a;
  if (!isLogZero(res.logValue)) {
    for (VarId v : c.scope().toVector())
      if (a.get(v) == VarState::Free) res.assignment.set(v, cell[c.root()].best.contains(v));
  }
  return res;
}

std::vector<std::vector<uint8_t>> enumerateSupport(const Circuit& c,
                                                   std::span<const double> params) {
  std::vector<VarId> vars = c.scope().toVector();
  require(vars.size() <= 25, Errc::ScopeTooLarge,
          "support enumeration capped at 25 variables, scope has " +
              std::to_string(vars.size()));
  std::vector<std::vector<uint8_t>> models;
  Assignment a(c.numVars(), VarState::False);
  EvalWorkspace ws;
  uint64_t total = uint64_t(1) << vars.size();
  for (uint64_t m = 0; m < total; ++m) {
    for (size_t i = 0; i < vars.size(); ++i) a.set(vars[i], (m >> i) & 1);
    if (!isLogZero(evaluateLog(c, params, a, ws))) {
      std::vector<uint8_t> row(vars.size());
      for (size_t i = 0; i < vars.size(); ++i) row[i] = static_cast<uint8_t>((m >> i) & 1);
      models.push_back(std::move(row));
    }
  }
  return models;
}

uint64_t supportCount(const Circuit& c, std::span<const double> params) {
  std::vector<VarId> vars = c.scope().toVector();
  require(vars.size() <= 25, Errc::ScopeTooLarge,
          "support enumeration capped at 25 variables, scope has " +
              std::to_string(vars.size()));
  Assignment a(c.numVars(), VarState::False);
  EvalWorkspace ws;
  uint64_t count = 0;
  uint64_t total = uint64_t(1) << vars.size();
  for (uint64_t m = 0; m < total; ++m) {
    for (size_t i = 0; i < vars.size(); ++i) a.set(vars[i], (m >> i) & 1);
    if (!isLogZero(evaluateLog(c, params, a, ws))) ++count;
  }
  return count;
}

}  // namespace spl
