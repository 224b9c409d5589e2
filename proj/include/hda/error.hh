#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hda {

/// Base class of everything the library throws on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adjacent pieces whose interfaces do not agree.
class InterfaceMismatch : public Error {
public:
    InterfaceMismatch(std::size_t position, const std::string& msg)
        : Error(msg), position_(position) {}
    /// Index of the offending step (or 0 for a binary glue).
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Malformed ipomset or UP-function text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& msg)
        : Error("syntax error at " + std::to_string(position) + ": " + msg), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class WidthExceeded : public Error {
public:
    using Error::Error;
};

class PositionOutOfRange : public Error {
public:
    using Error::Error;
};

class IdentityHasNoDenseDecomposition : public Error {
public:
    IdentityHasNoDenseDecomposition() : Error("identity ipomsets have no dense decomposition") {}
};

class IllegalMove : public Error {
public:
    IllegalMove(std::size_t index, const std::string& msg)
        : Error("illegal move " + std::to_string(index) + ": " + msg), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class NotAccepted : public Error {
public:
    using Error::Error;
};

class DecompositionTooShort : public Error {
public:
    using Error::Error;
};

/// Malformed HDA file (not a validation failure of the precubical structure).
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace hda
