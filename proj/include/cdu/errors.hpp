#pragma once

#include <stdexcept>

namespace cdu {

// Bad inputs and violated hypotheses. The CLI maps these to exit code 2;
// anything else escaping to main is an internal failure (exit 1).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CDU_ERROR(Name)           \
  class Name : public SpecError { \
   public:                        \
    using SpecError::SpecError;   \
  }

CDU_ERROR(NotPrime);
CDU_ERROR(ReducibleModulus);
CDU_ERROR(NotPrimitive);
CDU_ERROR(DegreeMismatch);
CDU_ERROR(FieldTooLarge);
CDU_ERROR(FieldMismatch);
CDU_ERROR(DivisionByZero);
CDU_ERROR(NotADivisor);
CDU_ERROR(EvenCharacteristic);
CDU_ERROR(OddCharacteristic);
CDU_ERROR(SyntaxError);
CDU_ERROR(UnknownSymbol);
CDU_ERROR(ExponentOutOfRange);
CDU_ERROR(ImageNotInSubfield);
CDU_ERROR(BaseNotPcN);
CDU_ERROR(HypothesisViolated);
CDU_ERROR(UnknownRow);
CDU_ERROR(ManifestError);
CDU_ERROR(GridTooLarge);

#undef CDU_ERROR

}  // namespace cdu
