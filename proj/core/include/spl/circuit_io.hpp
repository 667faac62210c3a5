#pragma once

#include <iosfwd>
#include <string>

#include "spl/circuit.hpp"

namespace spl {

// Text format, one unit per line:
//   spl-circuit v1 <numVars> <numUnits>
//   I <id> <var> <polarity>
//   B <id> <var>
//   S <id> <k> <child...>
//   P <id> <left> <right>
//   R <rootId>
// Weights are not stored; loading yields fixed-one sum weights and one
// lambda slot per B unit, assigned in unit-id order.
void writeCircuit(std::ostream& os, const Circuit& c);
std::string circuitToString(const Circuit& c);
void saveCircuit(const std::string& path, const Circuit& c);

Circuit readCircuit(std::istream& is);
Circuit circuitFromString(const std::string& text);
Circuit loadCircuit(const std::string& path);

}  // namespace spl
