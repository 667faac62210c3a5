#pragma once

#include "spl/circuit.hpp"

namespace spl {

// Smoothness and decomposability are checked syntactically (they are scope
// properties). Determinism is decided by support enumeration when the scope
// has at most kExactDeterminismMaxVars variables; above that a sufficient
// syntactic test is used: two sum inputs are disjoint when they force a
// shared decision variable to opposite polarities (with per-sum enumeration
// for small-scope sums as a fallback).
inline constexpr uint32_t kExactDeterminismMaxVars = 20;

StructureFlags validateStructure(const Circuit& c);

bool checkSmooth(const Circuit& c);
bool checkDecomposable(const Circuit& c);
bool checkDeterminismExact(const Circuit& c);      // scope <= 25 vars
bool checkDeterminismSyntactic(const Circuit& c);  // sufficient condition only

// Runs validateStructure and stores the result on the circuit.
void stampFlags(Circuit& c);

}  // namespace spl
