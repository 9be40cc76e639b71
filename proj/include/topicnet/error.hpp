#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topicnet {

/// Bad input data: malformed files, inconsistent networks, failed fits.
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parse failure tied to a line of an input file.
class ParseError : public DataError {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : DataError(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// Invalid invocation. The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace topicnet
