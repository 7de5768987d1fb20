#ifndef HASSEFORGE_ERROR_HPP
#define HASSEFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hf {

enum class Err {
  DivisionByZero,
  FieldMismatch,
  BothZero,
  CharZeroUnsupported,
  CharPUnsupported,
  OrderExceedsTruncation,
  BadDegree,
  BadField,
  NotAssociative,
  BadUnit,
  BadRoot,
  CocycleInvalid,
  LeibnizInconsistent,
  NotIterative,
  CocycleNotConstant,
  GaloisDerivationMismatch,
  SpanFailure,
  WellDefinednessFailure,
  ScalarMismatch,
  NotStabilized,
  RelationFails,
  CommutationFailure,
  NotStable,
  NotInner,
  NotMatrixAlgebra,
  ReynoldsDenominator,
  PullbackRankMismatch,
  ConfigInvalid,
  UnknownScenario,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::BothZero: return "BothZero";
    case Err::CharZeroUnsupported: return "CharZeroUnsupported";
    case Err::CharPUnsupported: return "CharPUnsupported";
    case Err::OrderExceedsTruncation: return "OrderExceedsTruncation";
    case Err::BadDegree: return "BadDegree";
    case Err::BadField: return "BadField";
    case Err::NotAssociative: return "NotAssociative";
    case Err::BadUnit: return "BadUnit";
    case Err::BadRoot: return "BadRoot";
    case Err::CocycleInvalid: return "CocycleInvalid";
    case Err::LeibnizInconsistent: return "LeibnizInconsistent";
    case Err::NotIterative: return "NotIterative";
    case Err::CocycleNotConstant: return "CocycleNotConstant";
    case Err::GaloisDerivationMismatch: return "GaloisDerivationMismatch";
    case Err::SpanFailure: return "SpanFailure";
    case Err::WellDefinednessFailure: return "WellDefinednessFailure";
    case Err::ScalarMismatch: return "ScalarMismatch";
    case Err::NotStabilized: return "NotStabilized";
    case Err::RelationFails: return "RelationFails";
    case Err::CommutationFailure: return "CommutationFailure";
    case Err::NotStable: return "NotStable";
    case Err::NotInner: return "NotInner";
    case Err::NotMatrixAlgebra: return "NotMatrixAlgebra";
    case Err::ReynoldsDenominator: return "ReynoldsDenominator";
    case Err::PullbackRankMismatch: return "PullbackRankMismatch";
    case Err::ConfigInvalid: return "ConfigInvalid";
    case Err::UnknownScenario: return "UnknownScenario";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace hf

#endif
