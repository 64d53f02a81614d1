#pragma once

#include <stdexcept>
#include <string>

namespace bsym {

/// Malformed input text (truth vectors, PLA, BLIF). CLI exit code 1.
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource guard was exceeded (variable limit, table export
/// size, restriction-set size). CLI exit code 2.
class limit_error : public std::runtime_error {
public:
  explicit limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A structural audit found a broken invariant. Indicates a bug in this
/// library, not in user input. CLI exit code 3.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace bsym
