#pragma once

#include <stdexcept>
#include <string>

namespace okapain {

// Base for every engine error. Subclasses carry the failure kind in the
// type so callers can map them to exit codes / report lines.
class EngineError : public std::runtime_error {
public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public EngineError {
public:
  DivisionByZero() : EngineError("division by zero rational function") {}
};

class SubstitutionPole : public EngineError {
public:
  explicit SubstitutionPole(const std::string& detail)
      : EngineError("substitution makes denominator vanish identically: " + detail) {}
};

class EvaluationPole : public EngineError {
public:
  explicit EvaluationPole(const std::string& detail)
      : EngineError("denominator vanishes at evaluation point: " + detail) {}
};

class NotLaurent : public EngineError {
public:
  explicit NotLaurent(const std::string& detail)
      : EngineError("denominator is not a monomial times allowed units: " + detail) {}
};

class UnboundVariable : public EngineError {
public:
  explicit UnboundVariable(const std::string& name)
      : EngineError("evaluation point does not bind variable " + name) {}
};

// Document / atlas layer.
class ParseError : public EngineError {
public:
  ParseError(int line, int column, const std::string& message)
      : EngineError("parse error at " + std::to_string(line) + ":" +
                    std::to_string(column) + ": " + message),
        line(line), column(column) {}
  int line;
  int column;
};

class UnknownReference : public EngineError {
public:
  explicit UnknownReference(const std::string& detail)
      : EngineError("unknown reference: " + detail) {}
};

class InvariantViolation : public EngineError {
public:
  explicit InvariantViolation(const std::string& detail)
      : EngineError("atlas invariant violated: " + detail) {}
};

class NegativeExponentAfterInstantiation : public EngineError {
public:
  explicit NegativeExponentAfterInstantiation(const std::string& detail)
      : EngineError("exponent instantiates below its floor: " + detail) {}
};

// Sheaf / cech layer.
class MissingInverse : public EngineError {
public:
  explicit MissingInverse(const std::string& detail)
      : EngineError("no inverse transition available: " + detail) {}
};

class ResidualPole : public EngineError {
public:
  explicit ResidualPole(const std::string& detail)
      : EngineError("pole along the component survives frame clearing: " + detail) {}
};

class TangentialResidue : public EngineError {
public:
  explicit TangentialResidue(const std::string& detail)
      : EngineError("tangential part does not vanish on the component: " + detail) {}
};

class MembershipViolation : public EngineError {
public:
  explicit MembershipViolation(const std::string& detail)
      : EngineError("section fails the twisted log condition: " + detail) {}
};

class NoSolution : public EngineError {
public:
  explicit NoSolution(const std::string& detail)
      : EngineError("no cochain witness within the degree cap: " + detail) {}
};

class NonUniqueLambda : public EngineError {
public:
  explicit NonUniqueLambda(const std::string& detail)
      : EngineError("class coefficient is not unique: " + detail) {}
};

class SpecializationMismatch : public EngineError {
public:
  explicit SpecializationMismatch(const std::string& detail)
      : EngineError("symbolic rank disagrees with specialized rank: " + detail) {}
};

class UnsupportedAtlasClass : public EngineError {
public:
  explicit UnsupportedAtlasClass(const std::string& detail)
      : EngineError("operation requires a multiplicative-type atlas: " + detail) {}
};

class UnknownType : public EngineError {
public:
  explicit UnknownType(const std::string& label)
      : EngineError("unknown affine type label: " + label) {}
};

}  // namespace okapain
