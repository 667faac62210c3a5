#pragma once

#include <memory>
#include <vector>

#include "spl/bdd.hpp"
#include "spl/circuit.hpp"
#include "spl/cnf.hpp"
#include "spl/eval.hpp"
#include "spl/vtree.hpp"

namespace spl {

namespace detail {
struct CompilerState;
}

// A compiled constraint: a reduced decision diagram over the compiler's
// variable order, together with its declared scope. The circuit view is a
// smooth, structured-decomposable, deterministic constraint circuit (all
// sum weights one, indicator inputs) extracted on demand.
class CompiledConstraint {
 public:
  const Vtree& vtree() const;
  const VarSet& scope() const { return scope_; }
  uint32_t numVars() const;
  bool isConstantFalse() const;
  bool isConstantTrue() const;
  size_t bddSize() const;

  // Extraction result is cached on first use. Rvalue access is disabled:
  // the reference lives only as long as this handle.
  const Circuit& circuit() const&;
  const Circuit& circuit() const&& = delete;

 private:
  friend class ConstraintCompiler;
  std::shared_ptr<detail::CompilerState> st_;
  BddManager::Ref ref_ = BddManager::kFalse;
  VarSet scope_;
  mutable std::shared_ptr<const Circuit> circuit_;
};

// Bottom-up compiler: clauses become shallow decision diagrams which are
// folded with conjoin; unique-node and apply caches keep the result reduced.
// All constraints from one compiler share a vtree and may be combined;
// mixing compilers raises VtreeMismatch.
class ConstraintCompiler {
 public:
  explicit ConstraintCompiler(Vtree vtree);

  const Vtree& vtree() const;
  uint32_t numVars() const;

  CompiledConstraint compile(const CnfFormula& f);
  CompiledConstraint clause(const Clause& lits);
  CompiledConstraint literal(VarId var, bool positive);
  CompiledConstraint constantTrue(const std::vector<VarId>& scopeVars);
  CompiledConstraint constantFalse(const std::vector<VarId>& scopeVars);

  // Decision trie over the models, reduced by the unique table. Each model
  // assigns every listed variable; the result's support is exactly the set.
  CompiledConstraint fromModels(const std::vector<VarId>& vars,
                                const std::vector<std::vector<uint8_t>>& models);

  CompiledConstraint conjoin(const CompiledConstraint& a, const CompiledConstraint& b);
  CompiledConstraint disjoin(const CompiledConstraint& a, const CompiledConstraint& b);

  // Fixes every assigned scope variable; the result's scope shrinks to the
  // remaining free variables.
  CompiledConstraint condition(const CompiledConstraint& c, const Assignment& partial);

  void setApplyCacheEnabled(bool on);
  size_t bddNodeCount() const;

 private:
  CompiledConstraint wrap(BddManager::Ref ref, VarSet scope) const;
  void checkSameState(const CompiledConstraint& a, const CompiledConstraint& b) const;

  std::shared_ptr<detail::CompilerState> st_;
};

}  // namespace spl
