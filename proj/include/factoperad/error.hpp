#pragma once

#include <stdexcept>
#include <string>

namespace factoperad {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class VerticalRequired : public Error {
public:
    using Error::Error;
};

class DepthExceeded : public Error {
public:
    using Error::Error;
};

/// Raised by straighten when the linear motion of centres is not generic.
/// `first` and `second` are the 0-based slots of the offending pair.
class DegenerateMotion : public Error {
public:
    DegenerateMotion(const std::string& what, int first, int second)
        : Error(what), first(first), second(second) {}

    int first;
    int second;
};

}  // namespace factoperad
