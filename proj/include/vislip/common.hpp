// vislip/common.hpp
//
// Shared error types and small utilities used across the library.

#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vislip {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file contents (bad line, duplicate entry, ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line_number)
      : Error(msg + " (line " + std::to_string(line_number) + ")"),
        line_(line_number) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A word that is not in the lexicon.
class OovError : public Error {
 public:
  explicit OovError(const std::string& word)
      : Error("out-of-vocabulary word: " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

/// A phoneme-to-viseme mapping problem (missing coverage, unknown phoneme).
class MappingError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values (ratios, dimensions, rates, paths).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Degenerate or contract-violating runtime input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values encountered during numeric computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Unreadable, truncated, or version-mismatched checkpoint file.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

/// Rates are reported at four decimal places throughout.
inline std::string format_rate(double rate) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << rate;
  return os.str();
}

namespace detail {

inline std::string join(const std::vector<std::string>& tokens,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

inline std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail
}  // namespace vislip
