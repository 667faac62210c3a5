#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spl/circuit.hpp"
#include "spl/logspace.hpp"

namespace spl {

enum class VarState : uint8_t { False = 0, True = 1, Free = 2 };

// Per-variable assignment; Free variables are marginalized (sum mode) or
// maximized over (max mode).
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(uint32_t numVars, VarState fill = VarState::Free)
      : state_(numVars, fill) {}

  static Assignment fromBits(const std::vector<uint8_t>& bits) {
    Assignment a(static_cast<uint32_t>(bits.size()));
    for (size_t i = 0; i < bits.size(); ++i)
      a.state_[i] = bits[i] ? VarState::True : VarState::False;
    return a;
  }

  uint32_t numVars() const { return static_cast<uint32_t>(state_.size()); }
  VarState get(VarId v) const { return state_[v]; }
  void set(VarId v, bool value) { state_[v] = value ? VarState::True : VarState::False; }
  void setFree(VarId v) { state_[v] = VarState::Free; }
  bool isFixed(VarId v) const { return state_[v] != VarState::Free; }
  bool value(VarId v) const { return state_[v] == VarState::True; }

  std::vector<uint8_t> bits() const {
    std::vector<uint8_t> out(state_.size(), 0);
    for (size_t i = 0; i < state_.size(); ++i)
      out[i] = state_[i] == VarState::True ? 1 : 0;
    return out;
  }

 private:
  std::vector<VarState> state_;
};

// Reusable caller-owned scratch; concurrent evaluations need one workspace
// per thread.
struct EvalWorkspace {
  std::vector<double> logVal;
  std::vector<double> adj;
  std::vector<double> gradPos;
  std::vector<double> gradNeg;
};

// Feedforward value in log space (-inf encodes an exact zero). Free
// variables are marginalized: input units over them emit their total mass.
double evaluateLog(const Circuit& c, std::span<const double> params, const Assignment& a,
                   EvalWorkspace& ws);

// Linear-scale value over a full assignment of the circuit scope.
double evaluate(const Circuit& c, std::span<const double> params, const Assignment& a);

// d(output)/d(slot) on the linear scale, for the same (possibly marginal)
// assignment semantics as evaluateLog.
std::vector<double> backward(const Circuit& c, std::span<const double> params,
                             const Assignment& a, EvalWorkspace& ws);

// d(log output)/d(slot); requires a nonzero output.
std::vector<double> backwardLog(const Circuit& c, std::span<const double> params,
                                const Assignment& a, EvalWorkspace& ws);

struct MaxResult {
  double logValue = kLogZero;
  Assignment assignment;  // input with Free vars filled by the argmax trace
};

// Max-sum upward pass; Free variables are maximized over with lexicographic
// tie-breaking (smallest assignment in variable-id order). Fixed variables
// behave as in evaluateLog.
MaxResult maximize(const Circuit& c, std::span<const double> params, const Assignment& a);

// |{full assignments of the circuit scope with value > 0}|, by enumeration.
// Scope is capped at 25 variables.
uint64_t supportCount(const Circuit& c, std::span<const double> params);

// Enumerates the support as assignments over the scope variables (ascending
// id order); same 25-variable cap.
std::vector<std::vector<uint8_t>> enumerateSupport(const Circuit& c,
                                                   std::span<const double> params);

}  // namespace spl
