// Exception hierarchy shared by all rieszterm modules.
#pragma once

#include <stdexcept>
#include <string>

namespace rieszterm {

// Root of all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// DSL text could not be tokenized or parsed; `pos` is a byte offset.
struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t pos_)
      : Error(what + " (at offset " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// A node is not admitted by the requested operation signature.
struct SignatureViolation : Error {
  using Error::Error;
};

// Evaluation failures.
struct EvalError : Error {
  using Error::Error;
};
struct MissingVariable : EvalError {
  explicit MissingVariable(unsigned var)
      : EvalError("point does not assign variable x" + std::to_string(var)) {}
};
// A schema declared monotone produced non-monotone probe values.
struct SchemaNotMonotone : EvalError {
  using EvalError::EvalError;
};

// Certificate inference refused the term (extended nodes are never certifiable).
struct NotCertifiable : Error {
  using Error::Error;
};

// Witness-construction and measure-model failures.
struct WitnessError : Error {
  using Error::Error;
};
struct NonDyadicWeight : WitnessError {
  using WitnessError::WitnessError;
};
struct WeightTooLarge : WitnessError {
  using WitnessError::WitnessError;
};
struct MalformedWitnessFile : WitnessError {
  using WitnessError::WitnessError;
};

// Synthesis failures.
struct SynthesisError : Error {
  using Error::Error;
};
struct NonpositiveThreshold : SynthesisError {
  using SynthesisError::SynthesisError;
};
struct DominatorTooSmall : SynthesisError {
  using SynthesisError::SynthesisError;
};
struct LadderNotIncreasing : SynthesisError {
  using SynthesisError::SynthesisError;
};
struct EmptyRegion : SynthesisError {
  using SynthesisError::SynthesisError;
};

// Algebra-model failures (element length vs model dimension, etc).
struct DimensionMismatch : Error {
  using Error::Error;
};

}  // namespace rieszterm
