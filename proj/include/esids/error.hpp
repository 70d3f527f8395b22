#pragma once

#include <stdexcept>
#include <string>

namespace esids {

// Invalid parameter combination (ES settings, covering limits, scenario specs).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input content: CSV rows, rule-base files, scenario JSON.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace esids
