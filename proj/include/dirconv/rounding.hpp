#pragma once

// Outward rounding for quantities that feed certified inequalities.
//
// Every basic operation below is evaluated in round-to-nearest and then pushed
// outward by a fixed number of ulps. Elementary functions from libm are within
// one ulp on glibc, so two ulps of slack covers both the operation and the
// library error.

#include <cmath>
#include <complex>
#include <limits>

#include "dirconv/exact_complex.hpp"

namespace dirconv::rounding {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double up(double x, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, inf);
    return x;
}

inline double down(double x, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -inf);
    return x;
}

namespace detail {

// err is the exact remainder (true value - computed value), or NaN when unknown.
inline double toward_up(double v, double err) {
    if (!std::isfinite(v)) return v;
    return err > 0 || std::isnan(err) ? up(v) : v;
}

inline double toward_down(double v, double err) {
    if (!std::isfinite(v)) return v;
    return err < 0 || std::isnan(err) ? down(v) : v;
}

inline double sum_error(double a, double b, double s) {
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

// fma residuals are exact unless the product underflows
inline double product_error(double a, double b, double p) {
    if (p != 0 && std::abs(p) < std::numeric_limits<double>::min() * 0x1p53)
        return std::numeric_limits<double>::quiet_NaN();
    return std::fma(a, b, -p);
}

inline double quotient_error(double a, double b, double q) {
    if (q != 0 && std::abs(q) < std::numeric_limits<double>::min() * 0x1p53)
        return std::numeric_limits<double>::quiet_NaN();
    const double r = std::fma(-q, b, a);  // a - q b, exact
    return b > 0 ? r : -r;
}

}  // namespace detail

inline double add_up(double a, double b) {
    const double s = a + b;
    return detail::toward_up(s, detail::sum_error(a, b, s));
}
inline double add_down(double a, double b) {
    const double s = a + b;
    return detail::toward_down(s, detail::sum_error(a, b, s));
}
inline double sub_up(double a, double b) { return add_up(a, -b); }
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double mul_up(double a, double b) {
    const double p = a * b;
    return detail::toward_up(p, detail::product_error(a, b, p));
}
inline double mul_down(double a, double b) {
    const double p = a * b;
    return detail::toward_down(p, detail::product_error(a, b, p));
}
inline double div_up(double a, double b) {
    const double q = a / b;
    return detail::toward_up(q, detail::quotient_error(a, b, q));
}
inline double div_down(double a, double b) {
    const double q = a / b;
    return detail::toward_down(q, detail::quotient_error(a, b, q));
}
inline double exp_up(double x) { return x == 0 ? 1.0 : up(std::exp(x), 2); }
inline double exp_down(double x) { return x == 0 ? 1.0 : std::max(0.0, down(std::exp(x), 2)); }
inline double log_up(double x) { return up(std::log(x), 2); }
inline double log_down(double x) { return down(std::log(x), 2); }
inline double sqrt_up(double x) {
    const double r = std::sqrt(x);
    return detail::toward_up(r, std::fma(-r, r, x));
}
inline double sqrt_down(double x) {
    const double r = std::sqrt(x);
    return std::max(0.0, detail::toward_down(r, std::fma(-r, r, x)));
}

inline double pow_up(double base, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i) r = mul_up(r, base);
    return r;
}

inline double pow_down(double base, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i) r = mul_down(r, base);
    return r;
}

/// Upper and lower bounds of a rational as doubles.
inline double rational_up(const rational& q) {
    const double d = q.get_d();
    const int c = cmp(rational(d), q);
    return c >= 0 ? d : up(d);
}
inline double rational_down(const rational& q) {
    const double d = q.get_d();
    const int c = cmp(rational(d), q);
    return c <= 0 ? d : down(d);
}

inline double abs_up(const std::complex<double>& z) {
    if (z.imag() == 0) return std::abs(z.real());
    if (z.real() == 0) return std::abs(z.imag());
    return up(std::abs(z), 2);
}
inline double abs_down(const std::complex<double>& z) {
    if (z.imag() == 0) return std::abs(z.real());
    if (z.real() == 0) return std::abs(z.imag());
    return std::max(0.0, down(std::abs(z), 2));
}

inline double abs_up(const exact_complex& z) {
    if (z.is_real()) return rational_up(abs(z.real()));
    rational n = z.norm_sq();
    return sqrt_up(rational_up(n));
}

inline double abs_down(const exact_complex& z) {
    if (z.is_real()) return std::max(0.0, rational_down(abs(z.real())));
    rational n = z.norm_sq();
    return sqrt_down(std::max(0.0, rational_down(n)));
}

}  // namespace dirconv::rounding
