#pragma once

#include <stdexcept>
#include <string>

namespace revgen {

/// Invalid or inconsistent run configuration. Fatal; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed template file or unresolved template slot.
class TemplateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed arguments violating an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace revgen
