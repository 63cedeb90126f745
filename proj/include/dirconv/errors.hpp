#pragma once

#include <stdexcept>
#include <string>

namespace dirconv {

enum class errc {
    empty_truncation,
    only_zero,
    not_enumerated,
    backend_mismatch,
    not_invertible,
    degenerate_constant,
    zero_polynomial,
    not_a_simple_root,
    no_simple_roots,
    precondition_failed,
    singular_jacobian,
    inconsistent_base_point,
    zero_derivative,
    all_coefficients_zero,
    no_positive_r,
    certificate_violated,
    out_of_half_plane,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::empty_truncation: return "EmptyTruncation";
        case errc::only_zero: return "OnlyZero";
        case errc::not_enumerated: return "NotEnumerated";
        case errc::backend_mismatch: return "BackendMismatch";
        case errc::not_invertible: return "NotInvertible";
        case errc::degenerate_constant: return "DegenerateConstant";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::not_a_simple_root: return "NotASimpleRoot";
        case errc::no_simple_roots: return "NoSimpleRoots";
        case errc::precondition_failed: return "PreconditionFailed";
        case errc::singular_jacobian: return "SingularJacobian";
        case errc::inconsistent_base_point: return "InconsistentBasePoint";
        case errc::zero_derivative: return "ZeroDerivative";
        case errc::all_coefficients_zero: return "AllCoefficientsZero";
        case errc::no_positive_r: return "NoPositiveR";
        case errc::certificate_violated: return "CertificateViolated";
        case errc::out_of_half_plane: return "OutOfHalfPlane";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Library failure carrying a machine-readable code.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), message_(what) {}

    errc code() const noexcept { return code_; }
    /// The description without the code prefix.
    const std::string& message() const noexcept { return message_; }

private:
    errc code_;
    std::string message_;
};

}  // namespace dirconv
