#pragma once

#include <stdexcept>
#include <string>

namespace vptz {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an input file cannot be parsed; carries the offending location.
class ParseError : public Error {
public:
    ParseError(const std::string& path, int line, const std::string& msg)
        : Error(path + ":" + std::to_string(line) + ": " + msg),
          path_(path), line_(line) {}
    const std::string& path() const noexcept { return path_; }
    int line() const noexcept { return line_; }

private:
    std::string path_;
    int line_;
};

/// Raised when tracker initialization cannot build a usable target model.
class TrackerInitError : public Error {
public:
    using Error::Error;
};

} // namespace vptz
