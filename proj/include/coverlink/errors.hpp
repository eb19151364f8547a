#pragma once

#include <stdexcept>
#include <string>

namespace coverlink {

// How a failure should be reported: a malformed input, a check that came out
// false, or a search that ran out of budget without deciding anything.
enum class ErrorClass { input, failed_check, inconclusive };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorClass cls, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), cls_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  std::string kind_;
  ErrorClass cls_;
};

#define COVERLINK_DEFINE_ERROR(Name, Class)                                     \
  class Name : public Error {                                                   \
   public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name, ErrorClass::Class, what) {} \
  };

// presentations
COVERLINK_DEFINE_ERROR(ParseError, input)
COVERLINK_DEFINE_ERROR(UnknownGenerator, input)
COVERLINK_DEFINE_ERROR(InvalidPresentation, input)
COVERLINK_DEFINE_ERROR(LimitExceeded, inconclusive)
COVERLINK_DEFINE_ERROR(TableMismatch, input)
COVERLINK_DEFINE_ERROR(MissingImage, input)

// diagrams
COVERLINK_DEFINE_ERROR(MalformedPd, input)

// group rings and clasp calculus
COVERLINK_DEFINE_ERROR(GroupMismatch, input)
COVERLINK_DEFINE_ERROR(NotRegularTable, input)
COVERLINK_DEFINE_ERROR(BadIndex, input)
COVERLINK_DEFINE_ERROR(IdentitySelfClasp, input)
COVERLINK_DEFINE_ERROR(NotHermitian, input)
COVERLINK_DEFINE_ERROR(FramingInconsistent, input)
COVERLINK_DEFINE_ERROR(MuMismatch, input)

// forms
COVERLINK_DEFINE_ERROR(NotSymmetric, input)
COVERLINK_DEFINE_ERROR(Degenerate, failed_check)
COVERLINK_DEFINE_ERROR(NotEven, failed_check)
COVERLINK_DEFINE_ERROR(NotUnimodular, failed_check)
COVERLINK_DEFINE_ERROR(NonzeroSignature, failed_check)
COVERLINK_DEFINE_ERROR(SignatureObstructed, failed_check)
COVERLINK_DEFINE_ERROR(SearchExhausted, inconclusive)

#undef COVERLINK_DEFINE_ERROR

}  // namespace coverlink
