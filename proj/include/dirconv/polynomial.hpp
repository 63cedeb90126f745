#pragma once

// Univariate polynomials with scalar coefficients (lowest degree first) and
// their roots.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "dirconv/errors.hpp"
#include "dirconv/scalar.hpp"

namespace dirconv {

template <scalar S>
using coeff_vector = std::vector<S>;

/// Drops trailing zero coefficients (exactly, or below tol in double mode).
template <scalar S>
coeff_vector<S> trimmed(coeff_vector<S> p, double tol = 0) {
    while (!p.empty() && scalar_traits<S>::is_zero(p.back(), tol)) p.pop_back();
    return p;
}

/// Degree of a trimmed coefficient vector; -1 for the zero polynomial.
template <scalar S>
int degree_of(const coeff_vector<S>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <scalar S>
S evaluate(const coeff_vector<S>& p, const S& z) {
    S acc = scalar_traits<S>::zero();
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

template <scalar S>
coeff_vector<S> derivative(const coeff_vector<S>& p) {
    coeff_vector<S> d;
    for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * scalar_traits<S>::from_int(static_cast<long>(j)));
    return d;
}

namespace detail {

// Euclidean algorithm over Q(i).
inline coeff_vector<exact_complex> poly_rem(coeff_vector<exact_complex> a, const coeff_vector<exact_complex>& b) {
    a = trimmed(std::move(a));
    const int db = degree_of(b);
    while (degree_of(a) >= db) {
        const int shift = degree_of(a) - db;
        exact_complex q = a.back() / b.back();
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= q * b[static_cast<std::size_t>(i)];
        a.pop_back();
        a = trimmed(std::move(a));
    }
    return a;
}

inline coeff_vector<exact_complex> poly_div(coeff_vector<exact_complex> a, const coeff_vector<exact_complex>& b) {
    a = trimmed(std::move(a));
    const int db = degree_of(b);
    if (degree_of(a) < db) return {};
    coeff_vector<exact_complex> q(static_cast<std::size_t>(degree_of(a) - db + 1));
    while (degree_of(a) >= db) {
        const int shift = degree_of(a) - db;
        exact_complex c = a.back() / b.back();
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
        a.pop_back();
        a = trimmed(std::move(a));
    }
    return q;
}

inline coeff_vector<exact_complex> monic(coeff_vector<exact_complex> p) {
    exact_complex lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline coeff_vector<exact_complex> poly_gcd(coeff_vector<exact_complex> a, coeff_vector<exact_complex> b) {
    a = trimmed(std::move(a));
    b = trimmed(std::move(b));
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : monic(std::move(a));
}

}  // namespace detail

/// Yun's square-free decomposition of a non-constant polynomial over Q(i):
/// returns (s_1, s_2, ...) with p = lead * prod s_i^i, each s_i monic and square-free.
inline std::vector<coeff_vector<exact_complex>> squarefree_decomposition(const coeff_vector<exact_complex>& p) {
    using detail::poly_div;
    using detail::poly_gcd;
    auto minus = [](const coeff_vector<exact_complex>& x, const coeff_vector<exact_complex>& y) {
        coeff_vector<exact_complex> t(std::max(x.size(), y.size()));
        for (std::size_t i = 0; i < x.size(); ++i) t[i] += x[i];
        for (std::size_t i = 0; i < y.size(); ++i) t[i] -= y[i];
        return trimmed(std::move(t));
    };
    std::vector<coeff_vector<exact_complex>> out;
    auto f = detail::monic(trimmed(p));
    auto df = derivative(f);
    auto a = poly_gcd(f, df);
    auto b = poly_div(f, a);
    auto d = minus(poly_div(df, a), derivative(b));
    while (degree_of(b) > 0) {
        auto s = poly_gcd(b, d);
        out.push_back(s);
        b = poly_div(b, s);
        d = minus(poly_div(d, s), derivative(b));
    }
    return out;
}

/// All complex roots of a polynomial of degree >= 1 by Aberth-Ehrlich
/// simultaneous iteration, followed by a few Newton polishing steps.
inline std::vector<approx_complex> aberth_roots(const coeff_vector<approx_complex>& coeffs) {
    auto p = trimmed(coeffs, 0.0);
    const int n = degree_of(p);
    if (n < 1) return {};
    if (n == 1) return {-p[0] / p[1]};

    coeff_vector<approx_complex> dp = derivative(p);
    // Cauchy bound gives a disc containing every root
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[static_cast<std::size_t>(i)] / p.back()));
    const double radius = 0.5 * (1.0 + bound);

    std::vector<approx_complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double angle = 2.0 * M_PI * i / n + 0.4;
        z[static_cast<std::size_t>(i)] = std::polar(radius, angle);
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double max_step = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            approx_complex pv = evaluate(p, z[i]);
            approx_complex dv = evaluate(dp, z[i]);
            if (pv == approx_complex{}) continue;
            approx_complex ratio = pv / dv;
            approx_complex sum{};
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                approx_complex diff = z[i] - z[j];
                if (diff != approx_complex{}) sum += 1.0 / diff;
            }
            approx_complex step = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) break;
    }
    for (auto& r : z) {
        for (int k = 0; k < 3; ++k) {
            approx_complex dv = evaluate(dp, r);
            if (std::abs(dv) == 0) break;
            approx_complex nr = r - evaluate(p, r) / dv;
            if (std::abs(evaluate(p, nr)) <= std::abs(evaluate(p, r))) r = nr;
        }
    }
    std::sort(z.begin(), z.end(), [](const approx_complex& a, const approx_complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

/// Tries to recover an exact Gaussian-rational root of a square-free factor
/// near the approximation z. If alpha is a root of an integer polynomial with
/// leading coefficient c, then c*alpha is an algebraic integer, so it must be a
/// Gaussian integer whenever alpha lies in Q(i).
inline std::optional<exact_complex> exact_root_near(const coeff_vector<exact_complex>& factor, approx_complex z) {
    // clear denominators so the factor has Gaussian-integer coefficients
    mpz_class den = 1;
    for (const auto& c : factor) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.real().get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.imag().get_den_mpz_t());
    }
    coeff_vector<exact_complex> ip;
    for (const auto& c : factor) ip.push_back(c * exact_complex(rational(den)));
    const exact_complex lead = ip.back();
    approx_complex scaled = z * lead.to_complex();
    if (!std::isfinite(scaled.real()) || !std::isfinite(scaled.imag()) || std::abs(scaled) > 1e15) return std::nullopt;
    for (double dr : {0.0, -1.0, 1.0}) {
        for (double di : {0.0, -1.0, 1.0}) {
            rational re(mpz_class(static_cast<long>(std::llround(scaled.real() + dr))));
            rational im(mpz_class(static_cast<long>(std::llround(scaled.imag() + di))));
            exact_complex cand = exact_complex(re, im) / lead;
            if (evaluate(ip, cand).is_zero()) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace dirconv
