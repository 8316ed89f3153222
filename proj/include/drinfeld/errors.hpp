#ifndef DRINFELD_ERRORS_HPP
#define DRINFELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drinfeld {

// Invalid user input (bad polynomial, non-prime level, out-of-range type).
struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& msg) : std::runtime_error(msg) {}
};

// A contract that should hold by theory failed; indicates a bug or an
// unsupported configuration, never a recoverable condition.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

struct ZeroInput : std::runtime_error {
    explicit ZeroInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct RingMismatch : std::logic_error {
    explicit RingMismatch(const std::string& msg) : std::logic_error(msg) {}
};

struct NonMonicDivisor : std::runtime_error {
    explicit NonMonicDivisor(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonAdditiveExponent : std::runtime_error {
    explicit NonAdditiveExponent(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrime : BadInput {
    explicit NotPrime(const std::string& msg) : BadInput(msg) {}
};

struct CoefficientNotInB : std::runtime_error {
    explicit CoefficientNotInB(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvarianceFailed : std::runtime_error {
    explicit InvarianceFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : BadInput {
    explicit ParseError(const std::string& msg) : BadInput(msg) {}
};

}  // namespace drinfeld

#endif
