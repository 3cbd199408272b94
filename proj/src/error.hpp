#pragma once

#include <string>
#include <utility>
#include <variant>

namespace livesum {

enum class ErrorCode {
    InvalidArgument,
    EmptyConversation,
    EmptySource,
    EmptyTranscript,
    EmptyCorpus,
    SessionExists,
    UnknownSession,
    SessionEnded,
    OutOfOrder,
    BackendUnavailable,
    EmptyResponse,
    InvalidExample,
    ParseError,
    ContractViolation,
    NotFound,
    IoError,
    BudgetTooSmall,
};

const char* error_code_name(ErrorCode code);

struct Error {
    ErrorCode code;
    std::string message;
};

// Minimal result type: holds either a value or an Error.
template <typename T>
class Expected {
public:
    Expected(T value) : data_(std::move(value)) {}
    Expected(Error err) : data_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(data_); }
    explicit operator bool() const { return ok(); }

    T& value() { return std::get<T>(data_); }
    const T& value() const { return std::get<T>(data_); }
    T& operator*() { return value(); }
    const T& operator*() const { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

    const Error& error() const { return std::get<Error>(data_); }

private:
    std::variant<T, Error> data_;
};

template <>
class Expected<void> {
public:
    Expected() = default;
    Expected(Error err) : err_(std::move(err)), has_error_(true) {}

    bool ok() const { return !has_error_; }
    explicit operator bool() const { return ok(); }
    const Error& error() const { return err_; }

private:
    Error err_{};
    bool has_error_ = false;
};

}  // namespace livesum
