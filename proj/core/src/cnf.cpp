#include "spl/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spl {

CnfFormula parseDimacs(std::istream& is) {
  CnfFormula f;
  bool haveHeader = false;
  size_t declaredClauses = 0;
  Clause current;
  bool open = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      require(!haveHeader, Errc::MalformedHeader, "duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt >> f.numVars >> declaredClauses) || fmt != "cnf")
        fail(Errc::MalformedHeader, "expected 'p cnf <vars> <clauses>'");
      haveHeader = true;
      continue;
    }
    require(haveHeader, Errc::MalformedHeader, "clause before problem line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
        open = false;
        continue;
      }
      long v = std::labs(lit);
      require(v >= 1 && static_cast<uint64_t>(v) <= f.numVars, Errc::LiteralOutOfRange,
              "literal " + std::to_string(lit) + " outside 1.." + std::to_string(f.numVars));
      current.push_back({static_cast<VarId>(v - 1), lit > 0});
      open = true;
    }
    require(ls.eof(), Errc::MalformedInput, "non-integer token in clause: " + line);
  }
  require(haveHeader, Errc::MalformedHeader, "missing problem line");
  require(!open, Errc::UnterminatedClause, "clause not terminated by 0");
  (void)declaredClauses;  // tolerated when it disagrees with the actual count
  return f;
}

CnfFormula parseDimacsString(const std::string& text) {
  std::istringstream is(text);
  return parseDimacs(is);
}

CnfFormula loadDimacs(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), Errc::IoFailure, "cannot open " + path);
  return parseDimacs(is);
}

std::string toDimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.numVars << ' ' << f.clauses.size() << '\n';
  for (const Clause& cl : f.clauses) {
    for (const Lit& l : cl) os << (l.positive ? long(l.var) + 1 : -(long(l.var) + 1)) << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace spl
