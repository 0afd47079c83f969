#ifndef SCHEMEFORGE_ERRORS_HPP
#define SCHEMEFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schemeforge {

// Error category doubles as the CLI exit code: 2 for unparseable input,
// 3 for mathematically invalid requests, 4 for a failed verification.
enum class ErrorCategory { Parse = 2, MathDomain = 3, CheckFailed = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }
  int exit_code() const { return static_cast<int>(category_); }

private:
  ErrorCategory category_;
};

#define SCHEMEFORGE_DEFINE_ERROR(NAME, CATEGORY)                       \
  struct NAME : Error {                                                \
    explicit NAME(const std::string& what = #NAME)                     \
        : Error(ErrorCategory::CATEGORY, std::string(#NAME ": ") + what) {} \
  }

// exact scalars
SCHEMEFORGE_DEFINE_ERROR(MixedDiscriminants, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(DivisionByZero, MathDomain);

// linear algebra
SCHEMEFORGE_DEFINE_ERROR(SingularMatrix, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(IrreducibleCubicOrHigher, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(NotAnEigenvalue, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(EigenspaceDimensionNotOne, MathDomain);

// scheme construction and checks
SCHEMEFORGE_DEFINE_ERROR(DegenerateSplitting, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(FormulaMismatch, CheckFailed);
SCHEMEFORGE_DEFINE_ERROR(PreconditionViolated, MathDomain);

// geometry
SCHEMEFORGE_DEFINE_ERROR(EnumerationTooLarge, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(SingularBasePoint, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(NoSecondPoint, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(DegenerateParameters, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(UnsupportedDimension, MathDomain);

// catalog
SCHEMEFORGE_DEFINE_ERROR(TooLarge, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(InadmissibleParameters, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(InfeasibleParameters, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(OutOfRange, MathDomain);

// designs
SCHEMEFORGE_DEFINE_ERROR(EmptySubset, MathDomain);
SCHEMEFORGE_DEFINE_ERROR(NegativeTransformEntry, CheckFailed);
SCHEMEFORGE_DEFINE_ERROR(SearchFailed, CheckFailed);

// cli
SCHEMEFORGE_DEFINE_ERROR(ParseError, Parse);

#undef SCHEMEFORGE_DEFINE_ERROR

// Relation-axiom failure carries the kind of violation and a witness pair.
struct AxiomViolation : Error {
  AxiomViolation(const std::string& kind_, long long x_, long long y_)
      : Error(ErrorCategory::CheckFailed,
              "AxiomViolation: " + kind_ + " at pair (" + std::to_string(x_) +
                  "," + std::to_string(y_) + ")"),
        kind(kind_), x(x_), y(y_) {}
  std::string kind;
  long long x;
  long long y;
};

}  // namespace schemeforge

#endif
