#pragma once

#include <stdexcept>
#include <string>

namespace sievelab {

/// Raised when an operation is called outside its mathematical domain
/// (bad range, degenerate product, violated hypothesis). Maps to exit code 1
/// in the CLI.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for malformed or inconsistent experiment configuration.
/// Maps to exit code 2 in the CLI.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sievelab
