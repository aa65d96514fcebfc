#ifndef COXFOLD_ERRORS_HPP
#define COXFOLD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coxfold {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define COXFOLD_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

COXFOLD_DEFINE_ERROR(UnsupportedLabel);
COXFOLD_DEFINE_ERROR(InvalidMatrix);
COXFOLD_DEFINE_ERROR(IndexOutOfRange);
COXFOLD_DEFINE_ERROR(ResourceLimit);
COXFOLD_DEFINE_ERROR(InvalidParameters);
COXFOLD_DEFINE_ERROR(InvalidBase);
COXFOLD_DEFINE_ERROR(NonUnitDivisor);
COXFOLD_DEFINE_ERROR(NegativeDegree);
COXFOLD_DEFINE_ERROR(CorruptCache);

#undef COXFOLD_DEFINE_ERROR

}  // namespace coxfold

#endif  // COXFOLD_ERRORS_HPP
