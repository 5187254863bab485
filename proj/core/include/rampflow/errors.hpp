#pragma once

#include <stdexcept>
#include <string>

namespace rampflow {

/// Invalid or inconsistent run parameters (mesh alignment, ramp placement, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data outside its admissible range, or mismatched fields.
class DataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Function evaluated outside its domain of definition.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A checked numerical invariant failed during stepping.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rampflow
