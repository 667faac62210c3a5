#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spl/errors.hpp"
#include "spl/varset.hpp"

namespace spl {

// Binary tree over variables fixing the hierarchical scope partition.
// Leaves are a permutation of the variable set; internal nodes have exactly
// two children. The in-order leaf sequence doubles as the decision-variable
// order used during compilation.
class Vtree {
 public:
  enum class Strategy { RightLinear, Balanced };

  static Vtree rightLinear(const std::vector<VarId>& vars);
  static Vtree balanced(const std::vector<VarId>& vars);
  static Vtree build(const std::vector<VarId>& vars, Strategy s) {
    return s == Strategy::RightLinear ? rightLinear(vars) : balanced(vars);
  }

  // Nested parentheses of variable ids, e.g. "(0 (1 2))".
  static Vtree parse(const std::string& text);
  std::string format() const;

  int32_t root() const { return root_; }
  bool isLeaf(int32_t n) const { return nodes_[n].left < 0; }
  VarId var(int32_t n) const { return nodes_[n].var; }
  int32_t left(int32_t n) const { return nodes_[n].left; }
  int32_t right(int32_t n) const { return nodes_[n].right; }
  size_t numNodes() const { return nodes_.size(); }
  uint32_t numLeaves() const { return static_cast<uint32_t>(inOrder_.size()); }

  const std::vector<VarId>& inOrderVars() const { return inOrder_; }
  uint32_t depth() const;

  bool operator==(const Vtree& o) const;

  // Subtree restricted to `keep`; unary chains are contracted. All kept
  // variables must be leaves of this tree.
  Vtree project(const VarSet& keep) const;

 private:
  struct Node {
    int32_t left = -1, right = -1;
    VarId var = 0;
  };
  int32_t addLeaf(VarId v);
  int32_t addInternal(int32_t l, int32_t r);
  void finalize();

  std::vector<Node> nodes_;
  int32_t root_ = -1;
  std::vector<VarId> inOrder_;
};

void saveVtree(const std::string& path, const Vtree& v);
Vtree loadVtree(const std::string& path);

}  // namespace spl
