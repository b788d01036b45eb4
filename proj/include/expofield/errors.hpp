#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace expofield {

// Raised for malformed input: bad arity, unknown symbols, bad JSON shape.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// A mathematical refusal that carries a machine-checkable certificate.
///
/// `kind` is one of the stable names used by the command line front end
/// (e.g. "NotAdditivelyFree", "WellDefFailure", "UnsupportedShape").
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& what,
                nlohmann::json certificate = nullptr)
        : std::runtime_error(what), kind_(std::move(kind)),
          certificate_(std::move(certificate)) {}

    const std::string& kind() const noexcept { return kind_; }
    const nlohmann::json& certificate() const noexcept { return certificate_; }

private:
    std::string kind_;
    nlohmann::json certificate_;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, std::string expected)
        : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": expected " + expected),
          line_(line), col_(col), expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    int line_;
    int col_;
    std::string expected_;
};

}  // namespace expofield
