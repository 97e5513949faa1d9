#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace contourforge {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed source text. Offsets are 1-based byte positions.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t offset,
                std::vector<std::string> expected = {})
        : Error(msg + " (offset " + std::to_string(offset) + ")"),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// An identifier outside the declared vocabulary (variables and functions).
class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : Error("unknown identifier '" + name + "' (offset " + std::to_string(offset) + ")"),
          name_(name),
          offset_(offset) {}

    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

/// A function used without an argument, or a variable called like a function.
class ArityError : public Error {
public:
    ArityError(const std::string& name, std::size_t offset, const std::string& what_arg)
        : Error(what_arg + " (offset " + std::to_string(offset) + ")"),
          name_(name),
          offset_(offset) {}

    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

/// Evaluation hit a free variable with no binding.
class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable '" + name + "'"), name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// A division whose denominator modulus fell below the guard threshold.
class DivisionNearZero : public Error {
public:
    using Error::Error;
};

/// Segment parameter outside [0, 1].
class ParameterOutOfRange : public Error {
public:
    using Error::Error;
};

/// Contour family parameters that violate the family's preconditions.
class InvalidFamilyParams : public Error {
public:
    using Error::Error;
};

/// Lowering requested along a path that passes through the removable point.
class RemovablePointOnPath : public Error {
public:
    using Error::Error;
};

/// Two real expressions with different free variables compared pointwise.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Path-equivalence check on contours whose endpoints do not match.
class EndpointMismatch : public Error {
public:
    using Error::Error;
};

/// Requested tolerance lies below the cancellation budget of the integrand.
class ConditioningLimit : public Error {
public:
    ConditioningLimit(const std::string& msg, double floor)
        : Error(msg), floor_(floor) {}

    /// Smallest verifiable absolute tolerance for the offending configuration.
    double floor() const { return floor_; }

private:
    double floor_;
};

/// Integrand evaluation failed somewhere along a path; carries the location.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& msg, std::size_t segment_index, double param)
        : Error(msg + " [segment " + std::to_string(segment_index) +
                ", s=" + std::to_string(param) + "]"),
          segment_index_(segment_index),
          param_(param) {}

    std::size_t segment_index() const { return segment_index_; }
    double param() const { return param_; }

private:
    std::size_t segment_index_;
    double param_;
};

}  // namespace contourforge
