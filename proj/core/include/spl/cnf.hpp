#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spl/errors.hpp"
#include "spl/varset.hpp"

namespace spl {

struct Lit {
  VarId var;
  bool positive;
  bool operator==(const Lit&) const = default;
};

inline Lit pos(VarId v) { return {v, true}; }
inline Lit neg(VarId v) { return {v, false}; }

using Clause = std::vector<Lit>;

struct CnfFormula {
  uint32_t numVars = 0;
  std::vector<Clause> clauses;

  bool satisfies(const std::vector<uint8_t>& bits) const {
    for (const Clause& cl : clauses) {
      bool sat = false;
      for (const Lit& l : cl)
        if ((bits[l.var] != 0) == l.positive) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  }
};

// DIMACS: `c` comment lines, `p cnf <vars> <clauses>` header, clauses as
// whitespace-separated literals terminated by 0. Variables come out 0-based.
CnfFormula parseDimacs(std::istream& is);
CnfFormula parseDimacsString(const std::string& text);
CnfFormula loadDimacs(const std::string& path);
std::string toDimacs(const CnfFormula& f);

}  // namespace spl
