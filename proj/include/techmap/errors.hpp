#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace techmap {

// Base for all domain errors surfaced by the toolkit. CLI maps these to
// exit code 1; anything else is a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyResultError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DisconnectedError : public Error {
public:
    DisconnectedError(const std::string& what, std::vector<std::size_t> component_sizes)
        : Error(what), component_sizes_(std::move(component_sizes)) {}
    const std::vector<std::size_t>& component_sizes() const { return component_sizes_; }

private:
    std::vector<std::size_t> component_sizes_;
};

class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

class UnattainablePowerError : public Error {
public:
    using Error::Error;
};

class VocabularyMismatchError : public Error {
public:
    using Error::Error;
};

class IsolatedClassError : public Error {
public:
    using Error::Error;
};

class EmptyProfileError : public Error {
public:
    using Error::Error;
};

class NoActiveFieldsError : public Error {
public:
    using Error::Error;
};

}  // namespace techmap
