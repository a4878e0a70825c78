#pragma once

#include <stdexcept>
#include <string>

namespace minflex {

enum class ErrorCode {
  EmptyBody,
  NonPolyhedral,
  PointInsideBody,
  DimMismatch,
  DegeneratePlane,
  InvalidParams,
  OddDimension,
  ZeroVector,
  GridTooCoarse,
  LoopExitsGrid,
  PeriodObstruction,
  PathDisagreement,
  UnknownSurface,
  NoPathFound,
  EndpointOutsideDomain,
  NotTouching,
  InsideBody,
  NonFiniteHessian,
  EmptyZeroSet,
  ParseError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::NonPolyhedral: return "NonPolyhedral";
    case ErrorCode::PointInsideBody: return "PointInsideBody";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::LoopExitsGrid: return "LoopExitsGrid";
    case ErrorCode::PeriodObstruction: return "PeriodObstruction";
    case ErrorCode::PathDisagreement: return "PathDisagreement";
    case ErrorCode::UnknownSurface: return "UnknownSurface";
    case ErrorCode::NoPathFound: return "NoPathFound";
    case ErrorCode::EndpointOutsideDomain: return "EndpointOutsideDomain";
    case ErrorCode::NotTouching: return "NotTouching";
    case ErrorCode::InsideBody: return "InsideBody";
    case ErrorCode::NonFiniteHessian: return "NonFiniteHessian";
    case ErrorCode::EmptyZeroSet: return "EmptyZeroSet";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minflex
