#pragma once

#include <stdexcept>
#include <string>

namespace posterforge {

/// Base for all errors raised by the library. Errors caused by bad input
/// (malformed files, invariant violations, unsatisfiable requests) derive
/// from InputError so the CLI can map them to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents (not parseable at all).
class ParseError : public InputError {
public:
    using InputError::InputError;
};

/// Parsed fine, but a field violates a documented invariant. `path` names
/// the offending field, e.g. "sections[2].extraction_ratio".
class ValidationError : public InputError {
public:
    ValidationError(std::string path, std::string message)
        : InputError(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}

    const std::string& path() const noexcept { return path_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string path_;
    std::string message_;
};

/// Estimation failures: not enough rows or a rank-deficient design matrix.
class FitError : public InputError {
public:
    enum class Kind { TooFewRows, RankDeficient };

    FitError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class LayoutError : public InputError {
public:
    using InputError::InputError;
};

} // namespace posterforge
