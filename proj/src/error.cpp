#include "xmod/error.hpp"

namespace xmod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotAction: return "NotAction";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::Peiffer1Violation: return "Peiffer1Violation";
    case ErrorCode::Peiffer2Violation: return "Peiffer2Violation";
    case ErrorCode::NotCrossedModuleHom: return "NotCrossedModuleHom";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotInjectiveOnN: return "NotInjectiveOnN";
    case ErrorCode::NotAbelianCM: return "NotAbelianCM";
    case ErrorCode::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorCode::NotExtension: return "NotExtension";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::BadInvolution: return "BadInvolution";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::NotCStar: return "NotCStar";
    case ErrorCode::NonIntegerBlock: return "NonIntegerBlock";
    case ErrorCode::NotIdeal: return "NotIdeal";
    case ErrorCode::NotStarHom: return "NotStarHom";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::UnitFiberInvalid: return "UnitFiberInvalid";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotUnitaryHom: return "NotUnitaryHom";
    case ErrorCode::EquivarianceViolation: return "EquivarianceViolation";
    case ErrorCode::NotStrictAction: return "NotStrictAction";
    case ErrorCode::NotRepresentation: return "NotRepresentation";
    case ErrorCode::NoFactorization: return "NoFactorization";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::NotTwoAbelian: return "NotTwoAbelian";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace xmod
