#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xmod {

/// Error categories raised by validating constructors and operations.
enum class ErrorCode {
  // groups
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotHomomorphism,
  NotNormal,
  NotAction,
  NotAbelian,
  Mismatch,
  NotSubgroup,
  // crossed modules
  Peiffer1Violation,
  Peiffer2Violation,
  NotCrossedModuleHom,
  NotSurjective,
  NotInvariant,
  NotInjectiveOnN,
  NotAbelianCM,
  FunctorialityViolation,
  NotExtension,
  // algebras
  BadShape,
  BadInvolution,
  NoUnit,
  NotCStar,
  NonIntegerBlock,
  NotIdeal,
  NotStarHom,
  // bundles
  GradingViolation,
  NotPositive,
  UnitFiberInvalid,
  NotUnitary,
  NotUnitaryHom,
  EquivarianceViolation,
  NotStrictAction,
  NotRepresentation,
  NoFactorization,
  NotUnique,
  // duality
  NotTwoAbelian,
  NotCentral,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying an ErrorCode and a message naming the offending witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace xmod
