#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaplin {

// Missing or unreadable file or directory.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Input that is not valid UTF-8.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string file, std::size_t byte_offset)
      : std::runtime_error(file + ": invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        file_(std::move(file)),
        byte_offset_(byte_offset) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::string file_;
  std::size_t byte_offset_;
};

// Cast file syntax errors and cast invariant violations. Line and column are
// 1-based; 0 means "not tied to a position" (e.g. casts built from JSON).
class CastError : public std::runtime_error {
 public:
  CastError(const std::string& what, std::size_t line = 0, std::size_t column = 0,
            std::vector<std::string> offenders = {})
      : std::runtime_error(format(what, line, column)),
        line_(line),
        column_(column),
        offenders_(std::move(offenders)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& offenders() const noexcept { return offenders_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string pos = "line " + std::to_string(line);
    if (column != 0) pos += ", column " + std::to_string(column);
    return pos + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> offenders_;
};

// Bad analysis parameters: thresholds, kernel settings, scope.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chaplin
