#pragma once

#include <stdexcept>
#include <string>

namespace sentimin {

// Error categories map one-to-one onto the CLI exit codes:
// 2 = I/O failure, 3 = configuration error, 4 = data-shape error.
enum class ErrorKind { Io = 2, Config = 3, Data = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class IoError : public Error {
public:
    explicit IoError(std::string message) : Error(ErrorKind::Io, std::move(message)) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string message) : Error(ErrorKind::Config, std::move(message)) {}
};

class DataError : public Error {
public:
    explicit DataError(std::string message) : Error(ErrorKind::Data, std::move(message)) {}
};

} // namespace sentimin
