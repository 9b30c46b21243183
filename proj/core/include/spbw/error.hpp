#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spbw {

/// Every failure the engine can report. Validation failures carry a witness
/// (element indices, pair positions, ...) that reproduces the violation.
enum class Errc {
  // finite rings and maps
  BadTable,
  BadGroup,
  NonAssociative,
  NonDistributive,
  NoIdentity,
  RingTooLarge,
  NotAdditive,
  NotMultiplicative,
  NotUnital,
  NotInjective,
  LeibnizFail,
  // monomials
  LengthMismatch,
  TooManyVariables,
  // presentations and polynomials
  ZeroCij,
  MissingRelation,
  HigherOrderRelation,
  NotSigmaDerivation,
  QuasiCommutativeViolation,
  BijectiveViolation,
  InconsistentPresentation,
  PresentationMismatch,
  // modules
  ActionNotAssociative,
  ModuleNotUnital,
  NotBiadditive,
  NotSubmodule,
  NotRightIdeal,
  BadEmbedding,
  TooLarge,
  // deciders
  SearchSpaceTooLarge,
  HypothesisNotMet,
  VerificationFailed,
  // front end
  ParseError,
  UnknownName,
  UnknownProperty,
  UnknownCommand,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::vector<std::int64_t> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::int64_t>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::int64_t> witness_;
};

}  // namespace spbw
