#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffdioph {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
};

/// The known coefficients of a value are all zero but lower ones are unknown,
/// so its degree cannot be decided.
class AmbiguousZero : public Error {
   public:
    explicit AmbiguousZero(const std::string& what = "degree undecidable: all known coefficients are zero")
        : Error(what) {}
};

class SyntaxError : public Error {
   public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

class CoefficientOutOfRange : public Error {
   public:
    using Error::Error;
};

class InvalidField : public Error {
   public:
    using Error::Error;
};

class RankDeficient : public Error {
   public:
    RankDeficient() : Error("matrix is not of full rank") {}
};

class PrecisionExhausted : public Error {
   public:
    explicit PrecisionExhausted(const std::string& what = "precision exhausted") : Error(what) {}
};

class InvalidWeights : public Error {
   public:
    using Error::Error;
};

class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

class AllFlagged : public Error {
   public:
    AllFlagged() : Error("every profile entry is precision-limited") {}
};

class InvalidArgument : public Error {
   public:
    using Error::Error;
};

}  // namespace ffdioph
