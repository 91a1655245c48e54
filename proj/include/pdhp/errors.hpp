#pragma once

#include <stdexcept>
#include <string>

namespace pdhp {

// Bad configuration or parameters (CLI exit code 1).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (CLI exit code 2).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pdhp
