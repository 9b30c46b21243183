#include "spbw/error.hpp"

namespace spbw {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::BadTable: return "BadTable";
    case Errc::BadGroup: return "BadGroup";
    case Errc::NonAssociative: return "NonAssociative";
    case Errc::NonDistributive: return "NonDistributive";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::RingTooLarge: return "RingTooLarge";
    case Errc::NotAdditive: return "NotAdditive";
    case Errc::NotMultiplicative: return "NotMultiplicative";
    case Errc::NotUnital: return "NotUnital";
    case Errc::NotInjective: return "NotInjective";
    case Errc::LeibnizFail: return "LeibnizFail";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::ZeroCij: return "ZeroCij";
    case Errc::MissingRelation: return "MissingRelation";
    case Errc::HigherOrderRelation: return "HigherOrderRelation";
    case Errc::NotSigmaDerivation: return "NotSigmaDerivation";
    case Errc::QuasiCommutativeViolation: return "QuasiCommutativeViolation";
    case Errc::BijectiveViolation: return "BijectiveViolation";
    case Errc::InconsistentPresentation: return "InconsistentPresentation";
    case Errc::PresentationMismatch: return "PresentationMismatch";
    case Errc::ActionNotAssociative: return "ActionNotAssociative";
    case Errc::ModuleNotUnital: return "NotUnital";
    case Errc::NotBiadditive: return "NotBiadditive";
    case Errc::NotSubmodule: return "NotSubmodule";
    case Errc::NotRightIdeal: return "NotRightIdeal";
    case Errc::BadEmbedding: return "BadEmbedding";
    case Errc::TooLarge: return "TooLarge";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::HypothesisNotMet: return "HypothesisNotMet";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownName: return "UnknownName";
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

}  // namespace spbw
