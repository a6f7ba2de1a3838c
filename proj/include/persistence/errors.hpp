#pragma once

#include <stdexcept>
#include <string>

namespace persistence {

// Error categories map 1:1 onto CLI exit codes:
//   input_error / hypothesis_error -> 2, accuracy_error / numerical_error -> 3.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace persistence
