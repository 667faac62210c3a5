#include "spl/compiler.hpp"

#include <algorithm>
#include <unordered_map>

#include "spl/validate.hpp"

namespace spl {

namespace detail {

struct CompilerState {
  BddManager mgr;
  Vtree vtree;
  uint32_t numVars = 0;                // universe size (max leaf var + 1)
  std::vector<uint32_t> levelOfVar;    // var -> rank in the vtree leaf order
  std::vector<VarId> varOfLevel;

  explicit CompilerState(Vtree vt)
      : mgr(static_cast<uint32_t>(vt.inOrderVars().size())), vtree(std::move(vt)) {
    varOfLevel = vtree.inOrderVars();
    for (VarId v : varOfLevel) numVars = std::max(numVars, v + 1);
    levelOfVar.assign(numVars, UINT32_MAX);
    for (uint32_t lvl = 0; lvl < varOfLevel.size(); ++lvl)
      levelOfVar[varOfLevel[lvl]] = lvl;
  }

  uint32_t levelOf(VarId v) const {
    require(v < numVars && levelOfVar[v] != UINT32_MAX, Errc::LiteralOutOfRange,
            "variable " + std::to_string(v) + " is not a vtree leaf");
    return levelOfVar[v];
  }
};

namespace {

using Ref = BddManager::Ref;

// BDD-to-circuit extraction along a vtree. At each internal vtree node the
// diagram decomposes into (prime, sub) pairs: the subs are the distinct
// diagram nodes reached after deciding every left-block variable, and each
// prime is the left-block function routing to its sub. Primes are mutually
// exclusive and exhaustive, so the sums produced here are deterministic.
// Skipped decision levels are filled in with sums over both polarities,
// keeping every unit smooth over its vtree scope.
class Extractor {
 public:
  Extractor(CompilerState& st, const Vtree& pv, CircuitBuilder& b)
      : st_(st), pv_(pv), b_(b) {
    minLevel_.assign(pv_.numNodes(), UINT32_MAX);
    initMinLevels(pv_.root());
  }

  UnitId extract(Ref f, int32_t node) {
    PairKey key{f, node};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    UnitId id = pv_.isLeaf(node) ? extractLeaf(f, node) : extractInternal(f, node);
    memo_.emplace(key, id);
    return id;
  }

 private:
  struct PairKey {
    Ref f;
    int32_t node;
    bool operator==(const PairKey&) const = default;
  };
  struct PairKeyHash {
    size_t operator()(const PairKey& k) const {
      return static_cast<size_t>((uint64_t(k.f) << 20) ^ uint64_t(uint32_t(k.node)));
    }
  };

  uint32_t initMinLevels(int32_t node) {
    uint32_t m;
    if (pv_.isLeaf(node)) {
      m = st_.levelOf(pv_.var(node));
    } else {
      m = std::min(initMinLevels(pv_.left(node)), initMinLevels(pv_.right(node)));
    }
    minLevel_[node] = m;
    return m;
  }

  UnitId indicator(VarId v, bool pol) {
    uint64_t key = (uint64_t(v) << 1) | (pol ? 1 : 0);
    auto it = indMemo_.find(key);
    if (it != indMemo_.end()) return it->second;
    UnitId id = b_.indicator(v, pol);
    indMemo_.emplace(key, id);
    return id;
  }

  UnitId extractLeaf(Ref f, int32_t node) {
    VarId v = pv_.var(node);
    if (f == BddManager::kTrue) return b_.sum({indicator(v, false), indicator(v, true)});
    // reduced diagram: exactly one terminal child is false
    require(st_.mgr.level(f) == st_.levelOf(v), Errc::InternalInvariant, "extraction misaligned");
    return st_.mgr.hi(f) == BddManager::kFalse ? indicator(v, false) : indicator(v, true);
  }

  UnitId extractInternal(Ref f, int32_t node) {
    uint32_t boundary = minLevel_[pv_.right(node)];
    std::vector<std::pair<Ref, Ref>> pairs;  // (prime over left, sub over right)
    if (f == BddManager::kTrue || st_.mgr.level(f) >= boundary) {
      pairs.push_back({BddManager::kTrue, f});
    } else {
      for (Ref sub : frontier(f, boundary))
        pairs.push_back({reachDiagram(f, sub, boundary), sub});
    }
    std::vector<UnitId> children;
    children.reserve(pairs.size());
    for (auto& [p, s] : pairs)
      children.push_back(
          b_.product({extract(p, pv_.left(node)), extract(s, pv_.right(node))}));
    return b_.sum(children);
  }

  // Distinct nodes at or past `boundary` reachable from f through left-block
  // decisions; the false terminal is dropped (its pairs contribute nothing).
  std::vector<Ref> frontier(Ref f, uint32_t boundary) {
    std::vector<Ref> out;
    std::vector<Ref> stack{f};
    std::unordered_map<Ref, bool> seen;
    while (!stack.empty()) {
      Ref u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      if (u == BddManager::kFalse) continue;
      if (u == BddManager::kTrue || st_.mgr.level(u) >= boundary) {
        out.push_back(u);
        continue;
      }
      stack.push_back(st_.mgr.lo(u));
      stack.push_back(st_.mgr.hi(u));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Left-block function "assignments that route f to target".
  Ref reachDiagram(Ref f, Ref target, uint32_t boundary) {
    std::unordered_map<Ref, Ref> memo;
    auto rec = [&](auto&& self, Ref u) -> Ref {
      if (u == target) return BddManager::kTrue;
      if (st_.mgr.isTerminal(u) || st_.mgr.level(u) >= boundary) return BddManager::kFalse;
      auto it = memo.find(u);
      if (it != memo.end()) return it->second;
      Ref r = st_.mgr.mk(st_.mgr.level(u), self(self, st_.mgr.lo(u)), self(self, st_.mgr.hi(u)));
      memo.emplace(u, r);
      return r;
    };
    return rec(rec, f);
  }

  CompilerState& st_;
  const Vtree& pv_;
  CircuitBuilder& b_;
  std::vector<uint32_t> minLevel_;
  std::unordered_map<PairKey, UnitId, PairKeyHash> memo_;
  std::unordered_map<uint64_t, UnitId> indMemo_;
};

Circuit extractCircuit(CompilerState& st, Ref root, const VarSet& scope) {
  CircuitBuilder b(st.numVars);
  if (root == BddManager::kFalse) {
    UnitId zero = b.sum({});
    Circuit c = std::move(b).finish(zero);
    c.setFlags({true, true, true, true});
    return c;
  }
  require(!scope.empty(), Errc::EmptyVariableSet, "constant-true circuit needs a non-empty scope");
  Vtree pv = st.vtree.project(scope);
  Extractor ex(st, pv, b);
  UnitId rootUnit = ex.extract(root, pv.root());
  Circuit c = std::move(b).finish(rootUnit);
  StructureFlags f;
  f.smooth = checkSmooth(c);
  f.decomposable = checkDecomposable(c);
  f.deterministic = checkDeterminismSyntactic(c);
  f.deterministicExact = false;
  c.setFlags(f);
  return c;
}

}  // namespace
}  // namespace detail

using detail::CompilerState;

const Vtree& CompiledConstraint::vtree() const { return st_->vtree; }
uint32_t CompiledConstraint::numVars() const { return st_->numVars; }
bool CompiledConstraint::isConstantFalse() const { return ref_ == BddManager::kFalse; }
bool CompiledConstraint::isConstantTrue() const { return ref_ == BddManager::kTrue; }
size_t CompiledConstraint::bddSize() const { return st_->mgr.reachableCount(ref_); }

const Circuit& CompiledConstraint::circuit() const {
  if (!circuit_)
    circuit_ = std::make_shared<const Circuit>(detail::extractCircuit(*st_, ref_, scope_));
  return *circuit_;
}

ConstraintCompiler::ConstraintCompiler(Vtree vtree)
    : st_(std::make_shared<CompilerState>(std::move(vtree))) {}

const Vtree& ConstraintCompiler::vtree() const { return st_->vtree; }
uint32_t ConstraintCompiler::numVars() const { return st_->numVars; }

CompiledConstraint ConstraintCompiler::wrap(BddManager::Ref ref, VarSet scope) const {
  CompiledConstraint c;
  c.st_ = st_;
  c.ref_ = ref;
  c.scope_ = std::move(scope);
  return c;
}

void ConstraintCompiler::checkSameState(const CompiledConstraint& a,
                                        const CompiledConstraint& b) const {
  require(a.st_ == st_ && b.st_ == st_, Errc::VtreeMismatch,
          "constraints come from different compilers (vtrees may differ)");
}

CompiledConstraint ConstraintCompiler::literal(VarId var, bool positive) {
  VarSet s(st_->numVars);
  s.set(var);
  return wrap(st_->mgr.literal(st_->levelOf(var), positive), std::move(s));
}

CompiledConstraint ConstraintCompiler::clause(const Clause& lits) {
  VarSet scope(st_->numVars);
  // drop duplicate literals; opposite polarities make the clause a tautology
  std::vector<Lit> unique;
  bool tautology = false;
  for (const Lit& l : lits) {
    bool dup = false;
    for (const Lit& u : unique)
      if (u.var == l.var) {
        dup = true;
        if (u.positive != l.positive) tautology = true;
      }
    if (!dup) unique.push_back(l);
    scope.set(l.var);
  }
  if (tautology) return wrap(BddManager::kTrue, std::move(scope));
  std::sort(unique.begin(), unique.end(), [&](const Lit& a, const Lit& b) {
    return st_->levelOf(a.var) > st_->levelOf(b.var);
  });
  BddManager::Ref acc = BddManager::kFalse;
  for (const Lit& l : unique) {
    uint32_t lvl = st_->levelOf(l.var);
    acc = l.positive ? st_->mgr.mk(lvl, acc, BddManager::kTrue)
                     : st_->mgr.mk(lvl, BddManager::kTrue, acc);
  }
  return wrap(acc, std::move(scope));
}

CompiledConstraint ConstraintCompiler::compile(const CnfFormula& f) {
  VarSet scope(st_->numVars);
  for (VarId v = 0; v < f.numVars; ++v) {
    require(v < st_->numVars && st_->levelOfVar[v] != UINT32_MAX, Errc::LiteralOutOfRange,
            "formula variable " + std::to_string(v) + " is not a vtree leaf");
    scope.set(v);
  }
  BddManager::Ref acc = BddManager::kTrue;
  for (const Clause& cl : f.clauses) {
    acc = st_->mgr.conjoin(acc, clause(cl).ref_);
    if (acc == BddManager::kFalse) break;
  }
  return wrap(acc, std::move(scope));
}

CompiledConstraint ConstraintCompiler::constantTrue(const std::vector<VarId>& scopeVars) {
  VarSet s(st_->numVars);
  for (VarId v : scopeVars) {
    st_->levelOf(v);
    s.set(v);
  }
  return wrap(BddManager::kTrue, std::move(s));
}

CompiledConstraint ConstraintCompiler::constantFalse(const std::vector<VarId>& scopeVars) {
  VarSet s(st_->numVars);
  for (VarId v : scopeVars) {
    st_->levelOf(v);
    s.set(v);
  }
  return wrap(BddManager::kFalse, std::move(s));
}

CompiledConstraint ConstraintCompiler::fromModels(const std::vector<VarId>& vars,
                                                  const std::vector<std::vector<uint8_t>>& models) {
  VarSet scope(st_->numVars);
  for (VarId v : vars) {
    st_->levelOf(v);
    scope.set(v);
  }
  if (models.empty()) return wrap(BddManager::kFalse, std::move(scope));
  require(!vars.empty(), Errc::InconsistentScope, "models over an empty variable list");

  // column order follows the vtree variable order
  std::vector<size_t> colOrder(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) colOrder[i] = i;
  std::sort(colOrder.begin(), colOrder.end(), [&](size_t a, size_t b) {
    return st_->levelOf(vars[a]) < st_->levelOf(vars[b]);
  });
  std::vector<uint32_t> levels(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) levels[i] = st_->levelOf(vars[colOrder[i]]);

  std::vector<std::vector<uint8_t>> rows(models.size());
  for (size_t r = 0; r < models.size(); ++r) {
    require(models[r].size() == vars.size(), Errc::InconsistentScope,
            "model " + std::to_string(r) + " has width " + std::to_string(models[r].size()) +
                ", expected " + std::to_string(vars.size()));
    rows[r].resize(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) rows[r][i] = models[r][colOrder[i]] ? 1 : 0;
  }
  std::sort(rows.begin(), rows.end());
  for (size_t r = 1; r < rows.size(); ++r)
    require(rows[r] != rows[r - 1], Errc::DuplicateModel, "duplicate model in input");

  // decision trie along the variable order; mk() merges isomorphic subgraphs
  auto build = [&](auto&& self, size_t col, size_t begin, size_t end) -> BddManager::Ref {
    if (col == levels.size()) return BddManager::kTrue;
    size_t mid = begin;
    while (mid < end && rows[mid][col] == 0) ++mid;
    BddManager::Ref lo =
        mid > begin ? self(self, col + 1, begin, mid) : BddManager::kFalse;
    BddManager::Ref hi = end > mid ? self(self, col + 1, mid, end) : BddManager::kFalse;
    return st_->mgr.mk(levels[col], lo, hi);
  };
  return wrap(build(build, 0, 0, rows.size()), std::move(scope));
}

CompiledConstraint ConstraintCompiler::conjoin(const CompiledConstraint& a,
                                               const CompiledConstraint& b) {
  checkSameState(a, b);
  VarSet scope = a.scope_;
  scope.unionWith(b.scope_);
  return wrap(st_->mgr.conjoin(a.ref_, b.ref_), std::move(scope));
}

CompiledConstraint ConstraintCompiler::disjoin(const CompiledConstraint& a,
                                               const CompiledConstraint& b) {
  checkSameState(a, b);
  VarSet scope = a.scope_;
  scope.unionWith(b.scope_);
  return wrap(st_->mgr.disjoin(a.ref_, b.ref_), std::move(scope));
}

CompiledConstraint ConstraintCompiler::condition(const CompiledConstraint& c,
                                                 const Assignment& partial) {
  require(c.st_ == st_, Errc::VtreeMismatch, "constraint from a different compiler");
  std::vector<uint8_t> levelStates(st_->mgr.numLevels(), 2);
  VarSet remaining(st_->numVars);
  for (VarId v : c.scope_.toVector()) {
    if (v < partial.numVars() && partial.isFixed(v))
      levelStates[st_->levelOf(v)] = partial.value(v) ? 1 : 0;
    else
      remaining.set(v);
  }
  return wrap(st_->mgr.condition(c.ref_, levelStates), std::move(remaining));
}

void ConstraintCompiler::setApplyCacheEnabled(bool on) { st_->mgr.setApplyCacheEnabled(on); }
size_t ConstraintCompiler::bddNodeCount() const { return st_->mgr.numNodes(); }

}  // namespace spl
