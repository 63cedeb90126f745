#pragma once

// Generalised Dirichlet series  g~(s) = sum_x g(x) e^{-x.s}  on a window, with
// tail bounds derived from norm certificates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "dirconv/algebra.hpp"
#include "dirconv/certificate.hpp"
#include "dirconv/errors.hpp"
#include "dirconv/rounding.hpp"
#include "dirconv/solver.hpp"

namespace dirconv {

using point = std::vector<approx_complex>;

struct series_value {
    approx_complex value;
    point s;
    /// Size of the largest element summed.
    std::string size_bound;
    std::optional<double> tail_bound;
};

/// e^{-x.s} for the element at window index i. For ordinary Dirichlet this is
/// prod n_i^{-s_i}.
inline approx_complex kernel(const window& w, std::size_t i, const point& s) {
    const auto& g = w.group();
    const auto& id = w[i].id;
    approx_complex expo{};
    for (std::size_t k = 0; k < id.size(); ++k) {
        double xk = g.kind() == backend_kind::ordinary_dirichlet ? std::log(static_cast<double>(id[k]))
                                                                  : static_cast<double>(id[k]) / static_cast<double>(g.scale());
        if (xk != 0) expo += xk * s[k];
    }
    return std::exp(-expo);
}

inline double min_real_part(const point& s) {
    double m = s.front().real();
    for (const auto& v : s) m = std::min(m, v.real());
    return m;
}

/// Finite sum over the window in enumeration order with Neumaier compensation.
template <scalar S>
series_value evaluate_series(const arithmetic_function<S>& g, const point& s) {
    const window& w = g.win();
    if (s.size() != w.group().dim()) throw error(errc::invalid_argument, "evaluation point has the wrong dimension");
    auto add = [](double& acc, double& c, double v) {
        double t = acc + v;
        if (std::abs(acc) >= std::abs(v)) c += (acc - t) + v;
        else c += (v - t) + acc;
        acc = t;
    };
    double sr = 0, si = 0, cr = 0, ci = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const approx_complex gv = scalar_traits<S>::to_complex(g[i]);
        if (gv == approx_complex{}) continue;
        const approx_complex term = gv * kernel(w, i, s);
        add(sr, cr, term.real());
        add(si, ci, term.imag());
    }
    return {approx_complex{sr + cr, si + ci}, s, w.size_of(w.size() - 1).to_string(), std::nullopt};
}

/// Upper bound on |sum_{x outside window} g(x) e^{-x.s}| from the certified
/// ||g||_r <= |z0| + t*, valid when min Re s_i >= r.
template <scalar S>
double tail_bound(const arithmetic_function<S>& g, const norm_certificate& cert, const point& s) {
    if (min_real_part(s) < cert.r) throw error(errc::out_of_half_plane, "Re s is below the certified abscissa r");
    if (cert.scope == norm_scope::window_truncated)
        throw error(errc::precondition_failed,
                    "certificate covers the window-truncated equation only; supply full coefficient norm bounds");
    const double win = window_norm_down(g, cert.r);
    return std::max(0.0, rounding::sub_up(cert.norm_bound(), win));
}

/// Upper bound on a coefficient's tail at s from a bound on its full norm.
template <scalar S>
double coefficient_tail_bound(const arithmetic_function<S>& a, const norm_bound& full, const point& s) {
    const double sigma = min_real_part(s);
    const double n = full(sigma);
    if (!std::isfinite(n)) return n;
    return std::max(0.0, rounding::sub_up(n, window_norm_down(a, sigma)));
}

template <scalar S>
series_value evaluate_with_tail(const arithmetic_function<S>& g, const norm_certificate& cert, const point& s) {
    auto v = evaluate_series(g, s);
    v.tail_bound = tail_bound(g, cert, s);
    return v;
}

struct scalar_check {
    point s;
    double residual = 0;  // |sum_j a~_j(s) g~(s)^j| from window sums
    double bound = 0;     // propagated tail bound
    bool ok = false;
};

struct scalar_equation_report {
    std::vector<scalar_check> points;
    double max_ratio = 0;
    bool ok = true;
};

/// Checks |sum_j a~_j(s) g~(s)^j| against the bound propagated from the
/// coefficient and solution tails:
///   sum_j tail_{a_j} (|G| + tail_g)^j + |A_j| j (|G| + tail_g)^{j-1} tail_g
/// plus a floating-point allowance for the window sums themselves.
template <scalar S>
scalar_equation_report verify_scalar_equation(const conv_polynomial<S>& T, const arithmetic_function<S>& g,
                                              const norm_certificate& cert, const coefficient_norms& norms,
                                              const std::vector<point>& samples, double margin = 0) {
    if (norms.bounds.size() != T.degree() + 1) throw error(errc::invalid_argument, "need one norm bound per coefficient");
    scalar_equation_report rep;
    const double eps = std::numeric_limits<double>::epsilon();
    for (const auto& s : samples) {
        if (min_real_part(s) < cert.r + margin)
            throw error(errc::out_of_half_plane, "sample point lies outside the certified half-plane");
        const double sigma = min_real_part(s);
        const approx_complex G = evaluate_series(g, s).value;
        const double tg = tail_bound(g, cert, s);
        const double absG = rounding::add_up(std::abs(G), tg);
        approx_complex total{};
        approx_complex Gp{1.0, 0.0};
        double bound = 0;
        double magnitude = 0;
        const double g_abs = window_norm(g, sigma);
        for (unsigned j = 0; j <= T.degree(); ++j) {
            const auto& a = T.coefficient(j);
            const approx_complex A = evaluate_series(a, s).value;
            total += A * Gp;
            Gp *= G;
            const double ta = coefficient_tail_bound(a, norms.bounds[j], s);
            bound = rounding::add_up(bound, rounding::mul_up(ta, rounding::pow_up(absG, j)));
            if (j > 0) {
                double lin = rounding::mul_up(rounding::mul_up(rounding::abs_up(A), static_cast<double>(j)),
                                              rounding::mul_up(rounding::pow_up(absG, j - 1), tg));
                bound = rounding::add_up(bound, lin);
            }
            magnitude = rounding::add_up(magnitude, rounding::mul_up(window_norm(a, sigma), rounding::pow_up(g_abs, j)));
        }
        // window sums carry relative error about n * eps of their absolute mass
        const double n = static_cast<double>(g.size() + T.degree() + 8);
        bound = rounding::add_up(bound, 4.0 * n * eps * magnitude);
        scalar_check c;
        c.s = s;
        c.residual = std::abs(total);
        c.bound = bound;
        c.ok = c.residual <= c.bound;
        rep.ok = rep.ok && c.ok;
        rep.max_ratio = std::max(rep.max_ratio, bound > 0 ? c.residual / bound : (c.residual > 0 ? INFINITY : 0.0));
        rep.points.push_back(c);
    }
    return rep;
}

}  // namespace dirconv
