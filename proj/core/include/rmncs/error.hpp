#ifndef RMNCS_ERROR_HPP_
#define RMNCS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rmncs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (bad CSV rows, duplicate IDs,
/// journals without a field, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid arguments or configuration supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A non-finite value appeared during the recursion.
class NumericError : public Error {
public:
    NumericError(const std::string& what, int order) : Error(what), order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

} // namespace rmncs

#endif // RMNCS_ERROR_HPP_
