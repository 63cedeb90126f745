#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "dirconv/exact_complex.hpp"
#include "dirconv/rounding.hpp"

namespace dirconv {

using approx_complex = std::complex<double>;

/// Default entrywise tolerance for double-precision comparisons.
inline constexpr double default_tolerance = 1e-10;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<exact_complex> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";

    static exact_complex zero() { return {}; }
    static exact_complex one() { return exact_complex(1); }
    static exact_complex from_rational(const rational& q) { return exact_complex(q); }
    static exact_complex from_parts(const rational& re, const rational& im) { return {re, im}; }
    static exact_complex from_int(long v) { return exact_complex(v); }

    static bool is_zero(const exact_complex& z, double /*tol*/ = 0) { return z.is_zero(); }
    static bool equal(const exact_complex& a, const exact_complex& b, double /*tol*/ = 0) { return a == b; }

    static approx_complex to_complex(const exact_complex& z) { return z.to_complex(); }
    static double abs_up(const exact_complex& z) { return rounding::abs_up(z); }
    static double abs_down(const exact_complex& z) { return rounding::abs_down(z); }

    static void add_product(exact_complex& acc, const exact_complex& a, const exact_complex& b) {
        acc.add_product(a, b);
    }
};

template <>
struct scalar_traits<approx_complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "double";

    static approx_complex zero() { return {}; }
    static approx_complex one() { return {1.0, 0.0}; }
    static approx_complex from_rational(const rational& q) { return {q.get_d(), 0.0}; }
    static approx_complex from_parts(const rational& re, const rational& im) { return {re.get_d(), im.get_d()}; }
    static approx_complex from_int(long v) { return {static_cast<double>(v), 0.0}; }

    static bool is_zero(const approx_complex& z, double tol = default_tolerance) { return std::abs(z) <= tol; }
    static bool equal(const approx_complex& a, const approx_complex& b, double tol = default_tolerance) {
        return std::abs(a - b) <= tol;
    }

    static approx_complex to_complex(const approx_complex& z) { return z; }
    static double abs_up(const approx_complex& z) { return rounding::abs_up(z); }
    static double abs_down(const approx_complex& z) { return rounding::abs_down(z); }

    static void add_product(approx_complex& acc, const approx_complex& a, const approx_complex& b) {
        acc += a * b;
    }
};

template <class S>
concept scalar = requires { scalar_traits<S>::exact; };

}  // namespace dirconv
