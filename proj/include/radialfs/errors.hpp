#pragma once

#include <stdexcept>
#include <string>

namespace radialfs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct EvennessViolation : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
// predicate asked outside the parameter region where it is defined
struct OutOfHypothesis : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct DecompositionFailure : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };
struct UndefinedFit : Error { using Error::Error; };
struct QuadratureError : Error { using Error::Error; };
struct SymmetryViolation : Error { using Error::Error; };

struct ConfigError : Error {
    ConfigError(const std::string& what, int line = 0, std::string field = {})
        : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

  private:
    static std::string format(const std::string& w, int line, const std::string& f) {
        std::string out = w;
        if (line > 0) out += " (line " + std::to_string(line) + ")";
        if (!f.empty()) out += " [field " + f + "]";
        return out;
    }
    int line_;
    std::string field_;
};

}  // namespace radialfs
