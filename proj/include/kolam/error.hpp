#pragma once

#include <stdexcept>
#include <string>

namespace kolam {

// Inputs that are well-formed but mathematically unusable (coincident dots,
// isolated dots, bad assignment length, ...). `code` is a stable
// machine-readable identifier such as "coincident-dots".
class KolamError : public std::runtime_error {
public:
    KolamError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Payloads that do not match the JSON schema.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace kolam
