#pragma once
// Error taxonomy shared by all modules. The CLI maps these onto its
// stable exit codes (input=2, config=3, numeric=4).

#include <stdexcept>
#include <string>

namespace coglab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (reports, CSVs, corpora).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// Invalid model configuration (bad ranges, missing sections, unknown keys).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Numerically undefined request (zero variance, rank deficiency, log of
// a non-positive value).
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace coglab
