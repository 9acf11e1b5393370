#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfalg {

enum class ErrorKind {
    DivisionByZero,
    UnsupportedField,
    FieldMismatch,
    SingularForm,
    ZeroEntry,
    ZeroSlot,
    ZeroScalar,
    SingularParameters,
    DegenerateParameters,
    OwnerMismatch,
    OracleUndecided,
    NotPowerOfTwoDim,
    NotEven,
    Degenerate,
    SignatureMismatch,
    UnsupportedVariant,
    InternalInconsistency,
    HypothesisViolation,
    SyntaxError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qfalg
