#ifndef STABLEHOM_ERROR_HPP
#define STABLEHOM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stablehom {

enum class ErrorKind {
  DimensionMismatch,
  AlgebraMismatch,
  InvalidArgument,
  InsufficientWindow,
  NotSubcomplex,
  NotFiltration,
  AxiomViolation,
  Parse,
  Precondition,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::AlgebraMismatch: return "algebra mismatch";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InsufficientWindow: return "insufficient window";
    case ErrorKind::NotSubcomplex: return "not a subcomplex";
    case ErrorKind::NotFiltration: return "not a filtration";
    case ErrorKind::AxiomViolation: return "axiom violation";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Precondition: return "precondition failed";
  }
  return "error";
}

/// Structured error carried by every fallible operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace stablehom

#endif  // STABLEHOM_ERROR_HPP
