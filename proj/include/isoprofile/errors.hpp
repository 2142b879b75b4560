#pragma once

#include <stdexcept>
#include <string>

namespace isoprofile {

// Every failure the library reports belongs to one of these classes. The CLI
// maps each class to its own exit status.
enum class ErrorKind {
  kParse,
  kAlphabet,
  kOracleUndecided,
  kBudgetExceeded,
  kInvalidSkeleton,
  kWrongAlgorithm,
  kInput,
  kOverflow,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define ISOPROFILE_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

ISOPROFILE_DEFINE_ERROR(ParseError, kParse)
ISOPROFILE_DEFINE_ERROR(AlphabetError, kAlphabet)
ISOPROFILE_DEFINE_ERROR(OracleUndecided, kOracleUndecided)
ISOPROFILE_DEFINE_ERROR(BudgetExceeded, kBudgetExceeded)
ISOPROFILE_DEFINE_ERROR(InvalidSkeleton, kInvalidSkeleton)
ISOPROFILE_DEFINE_ERROR(WrongAlgorithm, kWrongAlgorithm)
ISOPROFILE_DEFINE_ERROR(InputError, kInput)
ISOPROFILE_DEFINE_ERROR(OverflowError, kOverflow)

#undef ISOPROFILE_DEFINE_ERROR

}  // namespace isoprofile
