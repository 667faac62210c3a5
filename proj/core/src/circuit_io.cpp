#include "spl/circuit_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace spl {

void writeCircuit(std::ostream& os, const Circuit& c) {
  os << "spl-circuit v1 " << c.numVars() << ' ' << c.numUnits() << '\n';
  for (UnitId id = 0; id < c.numUnits(); ++id) {
    const Unit& u = c.unit(id);
    switch (u.kind) {
      case UnitKind::Indicator:
        os << "I " << id << ' ' << u.var << ' ' << (u.polarity ? 1 : 0) << '\n';
        break;
      case UnitKind::Bernoulli:
        os << "B " << id << ' ' << u.var << '\n';
        break;
      case UnitKind::Sum:
        os << "S " << id << ' ' << u.children.size();
        for (UnitId ch : u.children) os << ' ' << ch;
        os << '\n';
        break;
      case UnitKind::Product:
        os << "P " << id << ' ' << u.children[0] << ' ' << u.children[1] << '\n';
        break;
    }
  }
  os << "R " << c.root() << '\n';
}

std::string circuitToString(const Circuit& c) {
  std::ostringstream os;
  writeCircuit(os, c);
  return os.str();
}

void saveCircuit(const std::string& path, const Circuit& c) {
  std::ofstream os(path);
  require(os.good(), Errc::IoFailure, "cannot open " + path + " for writing");
  writeCircuit(os, c);
  require(os.good(), Errc::IoFailure, "write failed for " + path);
}

namespace {

struct RawUnit {
  char kind = 0;
  uint32_t var = 0;
  bool polarity = true;
  std::vector<uint32_t> children;
  bool defined = false;
};

}  // namespace

Circuit readCircuit(std::istream& is) {
  std::string tag, version;
  uint32_t numVars = 0;
  size_t numUnits = 0;
  if (!(is >> tag >> version >> numVars >> numUnits) || tag != "spl-circuit" || version != "v1")
    fail(Errc::MalformedHeader, "expected 'spl-circuit v1 <numVars> <numUnits>'");

  std::vector<RawUnit> raw(numUnits);
  bool haveRoot = false;
  uint32_t root = 0;
  std::string kind;
  while (is >> kind) {
    if (kind == "R") {
      require(!haveRoot, Errc::MalformedInput, "duplicate R line");
      require(static_cast<bool>(is >> root), Errc::MalformedInput, "truncated R line");
      haveRoot = true;
      continue;
    }
    uint32_t id;
    require(static_cast<bool>(is >> id), Errc::MalformedInput, "truncated unit line");
    require(id < numUnits, Errc::MalformedInput, "unit id " + std::to_string(id) + " out of range");
    RawUnit& u = raw[id];
    require(!u.defined, Errc::MalformedInput, "duplicate unit id " + std::to_string(id));
    u.defined = true;
    u.kind = kind.size() == 1 ? kind[0] : 0;
    switch (u.kind) {
      case 'I': {
        uint32_t pol;
        require(static_cast<bool>(is >> u.var >> pol), Errc::MalformedInput, "truncated I line");
        u.polarity = pol != 0;
        break;
      }
      case 'B':
        require(static_cast<bool>(is >> u.var), Errc::MalformedInput, "truncated B line");
        break;
      case 'S': {
        size_t k;
        require(static_cast<bool>(is >> k), Errc::MalformedInput, "truncated S line");
        u.children.resize(k);
        for (size_t i = 0; i < k; ++i)
          require(static_cast<bool>(is >> u.children[i]), Errc::MalformedInput, "truncated S line");
        break;
      }
      case 'P': {
        u.children.resize(2);
        require(static_cast<bool>(is >> u.children[0] >> u.children[1]), Errc::MalformedInput,
                "truncated P line");
        break;
      }
      default:
        fail(Errc::MalformedInput, "unknown unit kind '" + kind + "'");
    }
  }
  require(haveRoot, Errc::MalformedInput, "missing R line");
  require(root < numUnits, Errc::DanglingChild, "root id out of range");
  for (size_t i = 0; i < numUnits; ++i)
    require(raw[i].defined, Errc::DanglingChild, "unit " + std::to_string(i) + " never defined");

  // Topological order over the declared DAG; ids in the file may be in any order.
  std::vector<uint8_t> state(numUnits, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<uint32_t> order;
  order.reserve(numUnits);
  std::vector<std::pair<uint32_t, size_t>> stack;
  for (uint32_t start = 0; start < numUnits; ++start) {
    if (state[start] == 2) continue;
    stack.push_back({start, 0});
    state[start] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      if (next < raw[id].children.size()) {
        uint32_t ch = raw[id].children[next++];
        require(ch < numUnits, Errc::DanglingChild,
                "child id " + std::to_string(ch) + " out of range");
        if (state[ch] == 1) fail(Errc::CyclicGraph, "cycle through unit " + std::to_string(ch));
        if (state[ch] == 0) {
          state[ch] = 1;
          stack.push_back({ch, 0});
        }
      } else {
        state[id] = 2;
        order.push_back(id);
        stack.pop_back();
      }
    }
  }

  CircuitBuilder b(numVars);
  std::vector<UnitId> map(numUnits, kNoUnit);
  // Lambda slots follow unit-id order regardless of the DAG traversal.
  for (uint32_t id = 0; id < numUnits; ++id)
    if (raw[id].kind == 'B') map[id] = b.bernoulli(raw[id].var);
  for (uint32_t id : order) {
    const RawUnit& u = raw[id];
    switch (u.kind) {
      case 'I':
        map[id] = b.indicator(u.var, u.polarity);
        break;
      case 'B':
        break;
      case 'S': {
        std::vector<UnitId> ch;
        for (uint32_t x : u.children) ch.push_back(map[x]);
        map[id] = b.sum(ch);
        break;
      }
      case 'P': {
        std::vector<UnitId> ch;
        for (uint32_t x : u.children) ch.push_back(map[x]);
        map[id] = b.product(ch);
        break;
      }
      default:
        break;
    }
  }
  return std::move(b).finish(map[root]);
}

Circuit circuitFromString(const std::string& text) {
  std::istringstream is(text);
  return readCircuit(is);
}

Circuit loadCircuit(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), Errc::IoFailure, "cannot open " + path);
  return readCircuit(is);
}

}  // namespace spl
