#pragma once

#include <stdexcept>
#include <string>

namespace spl {

enum class Errc {
  // circuit construction / evaluation
  CyclicGraph,
  DanglingChild,
  MissingVariable,
  ParamShapeMismatch,
  ScopeTooLarge,
  // cnf / compilation
  MalformedHeader,
  LiteralOutOfRange,
  UnterminatedClause,
  EmptyVariableSet,
  VtreeMismatch,
  DuplicateModel,
  InconsistentScope,
  // inference
  IncompatibleCircuits,
  UnboundXVariable,
  InconsistentLabel,
  ZeroPartition,
  ProbOutOfRange,
  // overparameterization
  NotDeterministicInput,
  // training
  DimensionMismatch,
  InconsistentTrainingLabel,
  DivergedLoss,
  // tasks
  GridTooLarge,
  ExhaustedSampling,
  CyclicHierarchy,
  LengthMismatch,
  // io / cli
  MalformedInput,
  IoFailure,
  ResourceLimit,
  InternalInvariant,
};

inline const char* errcName(Errc c) {
  switch (c) {
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::DanglingChild: return "DanglingChild";
    case Errc::MissingVariable: return "MissingVariable";
    case Errc::ParamShapeMismatch: return "ParamShapeMismatch";
    case Errc::ScopeTooLarge: return "ScopeTooLarge";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::LiteralOutOfRange: return "LiteralOutOfRange";
    case Errc::UnterminatedClause: return "UnterminatedClause";
    case Errc::EmptyVariableSet: return "EmptyVariableSet";
    case Errc::VtreeMismatch: return "VtreeMismatch";
    case Errc::DuplicateModel: return "DuplicateModel";
    case Errc::InconsistentScope: return "InconsistentScope";
    case Errc::IncompatibleCircuits: return "IncompatibleCircuits";
    case Errc::UnboundXVariable: return "UnboundXVariable";
    case Errc::InconsistentLabel: return "InconsistentLabel";
    case Errc::ZeroPartition: return "ZeroPartition";
    case Errc::ProbOutOfRange: return "ProbOutOfRange";
    case Errc::NotDeterministicInput: return "NotDeterministicInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InconsistentTrainingLabel: return "InconsistentTrainingLabel";
    case Errc::DivergedLoss: return "DivergedLoss";
    case Errc::GridTooLarge: return "GridTooLarge";
    case Errc::ExhaustedSampling: return "ExhaustedSampling";
    case Errc::CyclicHierarchy: return "CyclicHierarchy";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errcName(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace spl
