#pragma once

#include <stdexcept>
#include <string>

namespace sumsetlab {

enum class ErrorCode {
    invalid_argument,
    cap_exceeded,
    group_mismatch,
    hypothesis_violation,
    zero_function,
    not_found,
    internal,
};

const char *to_string(ErrorCode code) noexcept;

// Base of every exception the library throws. The code is what the CLI
// reports in its machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string &what) : Error(ErrorCode::invalid_argument, what) {}
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string &what) : Error(ErrorCode::cap_exceeded, what) {}
};

class GroupMismatch : public Error {
public:
    explicit GroupMismatch(const std::string &what) : Error(ErrorCode::group_mismatch, what) {}
};

class HypothesisViolation : public Error {
public:
    explicit HypothesisViolation(const std::string &what) : Error(ErrorCode::hypothesis_violation, what) {}
};

class ZeroFunction : public Error {
public:
    explicit ZeroFunction(const std::string &what) : Error(ErrorCode::zero_function, what) {}
};

class NotFound : public Error {
public:
    explicit NotFound(const std::string &what) : Error(ErrorCode::not_found, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string &what) : Error(ErrorCode::internal, what) {}
};

} // namespace sumsetlab
