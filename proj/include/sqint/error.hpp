#ifndef SQINT_ERROR_HPP
#define SQINT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sqint {

/// Raised for out-of-range parameters, bad mode indices and malformed configs.
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces a value that violates a mathematical invariant.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised by the Fock oracle when the photon cutoff is too small for the request.
class CutoffError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace sqint

#endif  // SQINT_ERROR_HPP
