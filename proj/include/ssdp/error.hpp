#pragma once

#include <stdexcept>
#include <string>

namespace ssdp {

// Categories map one-to-one onto the CLI exit codes (2, 3, 4).
enum class ErrorKind { config, convergence, verification };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(ErrorKind::convergence, what) {}
};

struct VerificationError : Error {
    explicit VerificationError(const std::string& what) : Error(ErrorKind::verification, what) {}
};

} // namespace ssdp
