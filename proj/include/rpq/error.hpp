#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpq {

/// Base for every failure raised by the library. The CLI maps subclasses onto
/// exit codes, so new kinds should derive from the closest category.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad table entries, out-of-range elements, empty carriers.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A division was requested from a multiplication table whose row (for `\`)
/// or column (for `/`) is not a permutation.
class NotCancellative : public Error {
public:
    enum class Kind { Row, Column };

    NotCancellative(Kind kind, std::size_t index)
        : Error(std::string("not cancellative: ") + (kind == Kind::Row ? "row " : "col ") +
                std::to_string(index) + " is not a permutation"),
          kind_(kind), index_(index) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t index() const noexcept { return index_; }

private:
    Kind kind_;
    std::size_t index_;
};

/// Point/constant mismatch between algebras or between an identity and an algebra.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// An operation table required by the request is absent.
class MissingTable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class NoVariable : public Error {
public:
    using Error::Error;
};

/// The algebra is outside the class an operation needs (e.g. system (A) fails).
class ClassificationError : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds a documented desk-scale bound.
class RefusalError : public Error {
public:
    using Error::Error;
};

class UnsupportedLanguage : public Error {
public:
    using Error::Error;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace rpq
