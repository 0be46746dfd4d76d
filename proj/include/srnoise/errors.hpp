#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srnoise {

// Error taxonomy for exit-code mapping: validation errors are caller mistakes
// (bad parameters, malformed input), numerical errors are failures of a
// well-posed computation (no bracket, divergence, singular systems).
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

struct Violation {
    std::string code;     // NonPositiveRate, NegativePump, ZeroEmitters, CouplingOutOfRange
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(ErrorKind::Validation, "ValidationError", join(violations)),
          violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<Violation>& vs) {
        std::string out;
        for (const auto& v : vs) {
            if (!out.empty()) out += "; ";
            out += v.code + " (" + v.message + ")";
        }
        return out;
    }
    std::vector<Violation> violations_;
};

class NumericalError : public Error {
public:
    NumericalError(std::string name, const std::string& message)
        : Error(ErrorKind::Numerical, std::move(name), message) {}
};

class InputError : public Error {
public:
    InputError(std::string name, const std::string& message)
        : Error(ErrorKind::Validation, std::move(name), message) {}
};

inline NumericalError above_threshold(double inversion, double n_threshold) {
    return NumericalError("AboveThreshold",
                          "inversion N = " + std::to_string(inversion) +
                              " is at or above threshold N_th = " + std::to_string(n_threshold));
}

}  // namespace srnoise
