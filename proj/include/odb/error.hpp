#ifndef ODB_ERROR_HPP
#define ODB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace odb {

/// Invalid argument value (out-of-range parameter, malformed table, size mismatch).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters outside the regime an operation is defined for, or a failed
/// existence precondition (e.g. no saddle root).
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical alarm: the computation cannot certify its own accuracy
/// (empty annulus, conditioning blow-up, precision exhausted).
class NumericalAlarm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or command line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace odb

#endif // ODB_ERROR_HPP
