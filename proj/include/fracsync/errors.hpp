#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracsync {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CodecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
    std::size_t step;
    NumericError(const std::string& what, std::size_t step_index)
        : std::runtime_error(what + " (step " + std::to_string(step_index) + ")"),
          step(step_index) {}
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fracsync
