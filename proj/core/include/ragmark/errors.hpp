#pragma once

#include <stdexcept>
#include <string>

namespace ragmark {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data (JSONL lines, judge response bodies). Carries a
/// 1-based line number when the source is a line-oriented file (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Invalid configuration: bad threshold bands, missing core property
/// scores, unusable CLI parameter combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A judge backend could not produce a verdict (timeout, non-2xx,
/// malformed body, endpoint unreachable after retries).
class BackendError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the given input (e.g. ROC-AUC on a
/// single-class sample).
class MetricError : public Error {
public:
    using Error::Error;
};

/// A corruption recipe cannot be applied to the given interaction.
class NotCorruptibleError : public Error {
public:
    using Error::Error;
};

}  // namespace ragmark
