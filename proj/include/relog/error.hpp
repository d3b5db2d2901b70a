#pragma once

#include <stdexcept>
#include <string>

namespace relog {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (models, programs, formulas, systems).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Vocabulary construction or symbol-collision problems.
class VocabError : public Error {
public:
    using Error::Error;
};

/// Formula evaluation failed (unbound variable, unknown symbol, arity clash).
class EvalError : public Error {
public:
    using Error::Error;
};

/// A resource budget (enumeration candidates, node counts) was exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// File / OS level problems.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace relog
