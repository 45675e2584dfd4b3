#pragma once

#include <stdexcept>
#include <string>

namespace padicline {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  PrecisionExhausted,
  NormTooLarge,
  SingularToPrecision,
  NotInvertible,
  PoleOnSampleSet,
  LevelTooLarge,
  PoleInArc,
  IrrationalPole,
  UnknownBuiltin,
  IncompatibleArc,
  BasepointOutsideArc,
  NoCertificate,
  CenterMismatch,
  CertificateRequired,
  BetaTooLarge,
  NoConvergence,
  ScheduleUnsupported,
  GeometryViolation,
  BasepointInHole,
  ClassInconsistency,
  UnsupportedOrder,
  NotAnAutomorphism,
  LargeHolePresent,
  UnitDeterminantViolated,
  ZOnArc,
  NotClosedDiscHolomorphic,
  ZOutsideDStar,
  DeterminantZero,
  IndexTooLarge,
  UnknownSuite,
  ParseError,
  GrowthConditionViolated,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NormTooLarge: return "NormTooLarge";
    case ErrorKind::SingularToPrecision: return "SingularToPrecision";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::PoleOnSampleSet: return "PoleOnSampleSet";
    case ErrorKind::LevelTooLarge: return "LevelTooLarge";
    case ErrorKind::PoleInArc: return "PoleInArc";
    case ErrorKind::IrrationalPole: return "IrrationalPole";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::IncompatibleArc: return "IncompatibleArc";
    case ErrorKind::BasepointOutsideArc: return "BasepointOutsideArc";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::CenterMismatch: return "CenterMismatch";
    case ErrorKind::CertificateRequired: return "CertificateRequired";
    case ErrorKind::BetaTooLarge: return "BetaTooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ScheduleUnsupported: return "ScheduleUnsupported";
    case ErrorKind::GeometryViolation: return "GeometryViolation";
    case ErrorKind::BasepointInHole: return "BasepointInHole";
    case ErrorKind::ClassInconsistency: return "ClassInconsistency";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::LargeHolePresent: return "LargeHolePresent";
    case ErrorKind::UnitDeterminantViolated: return "UnitDeterminantViolated";
    case ErrorKind::ZOnArc: return "ZOnArc";
    case ErrorKind::NotClosedDiscHolomorphic: return "NotClosedDiscHolomorphic";
    case ErrorKind::ZOutsideDStar: return "ZOutsideDStar";
    case ErrorKind::DeterminantZero: return "DeterminantZero";
    case ErrorKind::IndexTooLarge: return "IndexTooLarge";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GrowthConditionViolated: return "GrowthConditionViolated";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace padicline
