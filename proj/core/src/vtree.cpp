#include "spl/vtree.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace spl {

int32_t Vtree::addLeaf(VarId v) {
  nodes_.push_back({-1, -1, v});
  return static_cast<int32_t>(nodes_.size() - 1);
}

int32_t Vtree::addInternal(int32_t l, int32_t r) {
  nodes_.push_back({l, r, 0});
  return static_cast<int32_t>(nodes_.size() - 1);
}

void Vtree::finalize() {
  inOrder_.clear();
  std::function<void(int32_t)> walk = [&](int32_t n) {
    if (isLeaf(n)) {
      inOrder_.push_back(var(n));
      return;
    }
    walk(left(n));
    walk(right(n));
  };
  walk(root_);
  std::vector<VarId> sorted = inOrder_;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    require(sorted[i] != sorted[i - 1], Errc::MalformedInput,
            "duplicate leaf variable " + std::to_string(sorted[i]));
}

Vtree Vtree::rightLinear(const std::vector<VarId>& vars) {
  require(!vars.empty(), Errc::EmptyVariableSet, "vtree over empty variable set");
  Vtree t;
  int32_t acc = t.addLeaf(vars.back());
  for (size_t i = vars.size() - 1; i-- > 0;) acc = t.addInternal(t.addLeaf(vars[i]), acc);
  t.root_ = acc;
  t.finalize();
  return t;
}

Vtree Vtree::balanced(const std::vector<VarId>& vars) {
  require(!vars.empty(), Errc::EmptyVariableSet, "vtree over empty variable set");
  Vtree t;
  std::function<int32_t(size_t, size_t)> build = [&](size_t lo, size_t hi) -> int32_t {
    if (hi - lo == 1) return t.addLeaf(vars[lo]);
    size_t mid = lo + (hi - lo + 1) / 2;
    int32_t l = build(lo, mid);
    int32_t r = build(mid, hi);
    return t.addInternal(l, r);
  };
  t.root_ = build(0, vars.size());
  t.finalize();
  return t;
}

uint32_t Vtree::depth() const {
  std::function<uint32_t(int32_t)> d = [&](int32_t n) -> uint32_t {
    if (isLeaf(n)) return 0;
    return 1 + std::max(d(left(n)), d(right(n)));
  };
  return d(root_);
}

bool Vtree::operator==(const Vtree& o) const {
  std::function<bool(int32_t, int32_t)> eq = [&](int32_t a, int32_t b) -> bool {
    if (isLeaf(a) != o.isLeaf(b)) return false;
    if (isLeaf(a)) return var(a) == o.var(b);
    return eq(left(a), o.left(b)) && eq(right(a), o.right(b));
  };
  return eq(root_, o.root_);
}

Vtree Vtree::project(const VarSet& keep) const {
  Vtree t;
  std::function<int32_t(int32_t)> walk = [&](int32_t n) -> int32_t {
    if (isLeaf(n)) return keep.contains(var(n)) ? t.addLeaf(var(n)) : -1;
    int32_t l = walk(left(n));
    int32_t r = walk(right(n));
    if (l >= 0 && r >= 0) return t.addInternal(l, r);
    return l >= 0 ? l : r;
  };
  t.root_ = walk(root_);
  require(t.root_ >= 0, Errc::EmptyVariableSet, "projection removes every leaf");
  t.finalize();
  return t;
}

std::string Vtree::format() const {
  std::ostringstream os;
  std::function<void(int32_t)> walk = [&](int32_t n) {
    if (isLeaf(n)) {
      os << var(n);
      return;
    }
    os << '(';
    walk(left(n));
    os << ' ';
    walk(right(n));
    os << ')';
  };
  walk(root_);
  return os.str();
}

Vtree Vtree::parse(const std::string& text) {
  Vtree t;
  size_t pos = 0;
  auto skipWs = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<int32_t()> parseNode = [&]() -> int32_t {
    skipWs();
    require(pos < text.size(), Errc::MalformedInput, "unexpected end of vtree text");
    if (text[pos] == '(') {
      ++pos;
      int32_t l = parseNode();
      int32_t r = parseNode();
      skipWs();
      require(pos < text.size() && text[pos] == ')', Errc::MalformedInput,
              "expected ')' in vtree text");
      ++pos;
      return t.addInternal(l, r);
    }
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    require(pos > start, Errc::MalformedInput, "expected variable id in vtree text");
    return t.addLeaf(static_cast<VarId>(std::stoul(text.substr(start, pos - start))));
  };
  t.root_ = parseNode();
  skipWs();
  require(pos == text.size(), Errc::MalformedInput, "trailing characters in vtree text");
  t.finalize();
  return t;
}

void saveVtree(const std::string& path, const Vtree& v) {
  std::ofstream os(path);
  require(os.good(), Errc::IoFailure, "cannot open " + path + " for writing");
  os << v.format() << '\n';
  require(os.good(), Errc::IoFailure, "write failed for " + path);
}

Vtree loadVtree(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), Errc::IoFailure, "cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return Vtree::parse(text);
}

}  // namespace spl
