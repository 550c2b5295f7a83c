#pragma once

#include <stdexcept>
#include <string>

namespace sg {

enum class ErrorCode {
    DegeneratePair = 1,
    NonGenericDirection,
    MonodromyNotIdentity,
    NotOpposite,
    NotExtreme,
    IncompatibleLayouts,
    ExponentNotInC,
    ZeroExponent,
    NotAligned,
    NotCanonicalTheta,
    NotPure,
    EvenParity,
    DegeneratePencil,
    GenerationFailed,
    GluingViolation,
    ParseError,
    InvariantError,
    DimensionMismatch,
    NoSolution,
    NonRationalModulus,
    InvalidData,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg, std::string path = {})
        : std::runtime_error(msg), code_(code), path_(std::move(path)) {}
    ErrorCode code() const { return code_; }
    const std::string& path() const { return path_; }

private:
    ErrorCode code_;
    std::string path_;
};

}  // namespace sg
