#pragma once

#include <stdexcept>
#include <string>

namespace bma {

enum class ErrorCode {
  OutOfDomain,
  SingularPoint,
  DivisionByZero,
  BranchCut,
  JetMismatch,
  BadParameter,
  DegenerateTransform,
  CriticalPoint,
  DenominatorZero,
  SecondDerivativeNotZero,
  BadPolygonData,
  BadAngles,
  NoConvergence,
  ConvergenceFailure,
  QuadratureFailure,
  NotATriangle,
  NotOnStraightEdge,
  ArcCrossesPrevertex,
  AssertionFailure,
  BadConfig,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::JetMismatch: return "JetMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::DegenerateTransform: return "DegenerateTransform";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::SecondDerivativeNotZero: return "SecondDerivativeNotZero";
    case ErrorCode::BadPolygonData: return "BadPolygonData";
    case ErrorCode::BadAngles: return "BadAngles";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotATriangle: return "NotATriangle";
    case ErrorCode::NotOnStraightEdge: return "NotOnStraightEdge";
    case ErrorCode::ArcCrossesPrevertex: return "ArcCrossesPrevertex";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "UnknownError";
}

}  // namespace bma
