#pragma once

#include <vector>

#include "spl/circuit.hpp"
#include "spl/vtree.hpp"

namespace spl {

// Mixture of M fully factorized Bernoulli components over the given label
// variables. M = 1 yields a plain product (no mixture root). Every slot is
// fresh: M*L Bernoullis followed by M mixture weights.
Circuit mixtureOfFactorized(const std::vector<VarId>& vars, uint32_t numVars, int m);

// Structured probabilistic circuit following a vtree: k Bernoulli units per
// leaf region, k sums per internal region over the k*k cross products of the
// child regions, and a single root sum. Compatible with any circuit compiled
// over the same vtree.
Circuit vtreePc(const Vtree& vtree, uint32_t numVars, int k);

}  // namespace spl
