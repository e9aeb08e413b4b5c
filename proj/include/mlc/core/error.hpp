#pragma once

#include <stdexcept>
#include <string>

namespace mlc {

/// Malformed input data (dataset files). Carries the 1-based source line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

/// Invalid experiment/pipeline configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mlc
