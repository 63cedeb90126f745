#pragma once

// Convergence certificates for solutions of T g = 0.
//
// With P(t) = |f'(z0)|^{-1} sum_{j>=2} |a_j(0)| sum_{i>=2} C(j,i) |z0|^{j-i} t^i and
// Q(t) = |f'(z0)|^{-1} sum_j ||a_j||_rho t^j, the partial sums
// S_r(m) = sum_{0<|x|<=m} |g(x)| e^{-r|x|} obey level by level
//
//     S_r(m_n) <= P(S_r(m_{n-1})) + e^{-(r-rho) m_1} Q(|z0| + S_r(m_{n-1})),
//
// so any t > 0 with e^{-(r-rho) m_1} <= R(t) = (t - P(t)) / Q(|z0| + t) bounds
// every S_r(m) by t. All quantities that must hold as upper bounds are rounded
// up; the favourable side is rounded down.
//
// A sharpened certificate replaces the uniform damping e^{-(r-rho) m_1} ||a_j||_rho
// by the exact off-zero weight sum_{y != 0} |a_j(y)| e^{-r|y|} at a fixed r, which
// certifies a much smaller r when the coefficient norms are known as functions of r.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dirconv/algebra.hpp"
#include "dirconv/errors.hpp"
#include "dirconv/polynomial.hpp"
#include "dirconv/rounding.hpp"
#include "dirconv/solver.hpp"

namespace dirconv {

/// Upper bound on the full r-norm sum_x |a(x)| e^{-r|x|} of one coefficient;
/// +inf where the norm diverges.
using norm_bound = std::function<double(double r)>;

enum class norm_scope {
    /// Window sums of coefficients whose support lies inside the window.
    window_exact,
    /// Window sums of coefficients that may extend past the window: the
    /// certificate covers the window-truncated equation, whose solution agrees
    /// with g on the window.
    window_truncated,
    /// Caller-supplied bounds on the full norms.
    user_bound,
};

inline const char* scope_name(norm_scope s) {
    switch (s) {
        case norm_scope::window_exact: return "WindowExact";
        case norm_scope::window_truncated: return "WindowTruncated";
        case norm_scope::user_bound: return "UserBound";
    }
    return "?";
}

struct coefficient_norms {
    std::vector<norm_bound> bounds;
    norm_scope scope = norm_scope::window_truncated;
};

/// Norm bounds from the window sums of the coefficients themselves.
template <scalar S>
coefficient_norms window_norms(const conv_polynomial<S>& T, bool support_inside_window = false) {
    coefficient_norms n;
    n.scope = support_inside_window ? norm_scope::window_exact : norm_scope::window_truncated;
    for (const auto& a : T.coefficients()) {
        n.bounds.push_back([a](double r) { return window_norm(a, r); });
    }
    return n;
}

enum class certificate_kind { uniform, sharpened };

struct norm_certificate {
    certificate_kind kind = certificate_kind::uniform;
    double rho = 0;
    /// m_1 as text ("2", "log 2") and as a lower bound.
    std::string m1_text;
    double m1 = 0;
    approx_complex z0;
    double abs_z0 = 0;       // upper bound
    double abs_fprime = 0;   // lower bound
    std::vector<double> P;   // P[i] multiplies t^i
    std::vector<double> Q;   // Q[j] multiplies t^j
    double t_star = 0;
    /// R(t*) (lower bound) for uniform certificates; 1 for sharpened ones.
    double C = 0;
    double r = 0;
    /// Upper bound on e^{-(r-rho) m_1}; exactly 1 for sharpened certificates.
    double damping = 1;
    norm_scope scope = norm_scope::window_truncated;
    /// Norm inputs: ||a_j||_rho (uniform) or the off-zero parts at r (sharpened).
    std::vector<double> coefficient_norms;

    /// Certified bound on every partial sum S_r(m), x = 0 excluded.
    double partial_sum_bound() const { return t_star; }
    /// Certified bound on ||g||_r.
    double norm_bound() const { return rounding::add_up(abs_z0, t_star); }
};

/// Evaluates a polynomial with non-negative coefficients at t >= 0, rounded up.
inline double poly_up(const std::vector<double>& p, double t) {
    double acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = rounding::add_up(rounding::mul_up(acc, t), *it);
    return acc;
}

inline double poly_down(const std::vector<double>& p, double t) {
    double acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = rounding::add_down(rounding::mul_down(acc, t), *it);
    return acc;
}

inline double poly_plain(const std::vector<double>& p, double t) {
    double acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

/// R(t) = (t - P(t)) / Q(|z0| + t) in plain floating point.
inline double ratio_R(const std::vector<double>& P, const std::vector<double>& Q, double abs_z0, double t) {
    return (t - poly_plain(P, t)) / poly_plain(Q, abs_z0 + t);
}

/// Lower bound on R(t).
inline double ratio_R_down(const std::vector<double>& P, const std::vector<double>& Q, double abs_z0, double t) {
    double num = rounding::sub_down(t, poly_up(P, t));
    double den = poly_up(Q, rounding::add_up(abs_z0, t));
    if (num <= 0) return rounding::div_down(num, poly_down(Q, abs_z0 + t));
    return rounding::div_down(num, den);
}

struct pq_polynomials {
    std::vector<double> P;
    std::vector<double> Q;
    double abs_z0 = 0;
    double abs_fprime = 0;
};

namespace detail {

inline double binomial(unsigned n, unsigned k) {
    double b = 1;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return std::round(b);
}

template <scalar S>
pq_polynomials build_pq_from(const conv_polynomial<S>& T, const S& z0, const std::vector<double>& norms,
                             bool allow_zero_norms = false) {
    using Tr = scalar_traits<S>;
    const unsigned d = T.degree();
    pq_polynomials out;
    const S fp = evaluate(derivative(T.initial_coefficients()), z0);
    out.abs_fprime = Tr::abs_down(fp);
    if (out.abs_fprime <= 0) throw error(errc::zero_derivative, "f'(z0) = 0");
    out.abs_z0 = Tr::abs_up(z0);
    const double inv_fp = rounding::div_up(1.0, out.abs_fprime);

    out.P.assign(d + 1, 0.0);
    for (unsigned j = 2; j <= d; ++j) {
        const double aj0 = Tr::abs_up(T.coefficient(j)[0]);
        if (aj0 == 0) continue;
        for (unsigned i = 2; i <= j; ++i) {
            double term = rounding::mul_up(rounding::mul_up(aj0, binomial(j, i)), rounding::pow_up(out.abs_z0, j - i));
            out.P[i] = rounding::add_up(out.P[i], term);
        }
    }
    for (auto& c : out.P) c = rounding::mul_up(c, inv_fp);

    bool any = false;
    out.Q.assign(d + 1, 0.0);
    for (unsigned j = 0; j <= d; ++j) {
        if (!(norms[j] >= 0) || !std::isfinite(norms[j]))
            throw error(errc::invalid_argument, "coefficient norm bound is not finite at this level");
        if (norms[j] > 0) any = true;
        out.Q[j] = rounding::mul_up(norms[j], inv_fp);
    }
    if (!any && !allow_zero_norms) throw error(errc::all_coefficients_zero, "every coefficient norm vanishes");
    return out;
}

}  // namespace detail

/// P and Q for the anchor z0 with coefficient norms taken at level rho.
template <scalar S>
pq_polynomials build_pq(const conv_polynomial<S>& T, const S& z0, double rho, const coefficient_norms& norms) {
    if (norms.bounds.size() != T.degree() + 1) throw error(errc::invalid_argument, "need one norm bound per coefficient");
    std::vector<double> n;
    for (const auto& b : norms.bounds) n.push_back(b(rho));
    return detail::build_pq_from(T, z0, n);
}

struct r_maximum {
    double t_star = 0;
    /// Lower bound on R(t*).
    double C = 0;
    bool plateau = false;
};

/// Maximises R(t) over a 2048-point log grid on [1e-6, 1e6], refined by golden
/// section on the best bracket. When the best grid point is the right end the
/// supremum is approached as t grows, and t* is capped there.
inline r_maximum maximize_R(const std::vector<double>& P, const std::vector<double>& Q, double abs_z0) {
    constexpr std::size_t grid = 2048;
    const double lo = std::log(1e-6);
    const double hi = std::log(1e6);
    auto t_at = [&](std::size_t k) { return std::exp(lo + (hi - lo) * static_cast<double>(k) / (grid - 1)); };
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid; ++k) {
        double v = ratio_R(P, Q, abs_z0, t_at(k));
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    if (!(best_val > 0)) throw error(errc::no_positive_r, "R(t) <= 0 at every sampled t; no certificate available");

    r_maximum out;
    double t = t_at(best);
    if (best == grid - 1) {
        out.plateau = true;
    } else if (best > 0) {
        double a = t_at(best - 1), b = t_at(best + 1);
        const double phi = (std::sqrt(5.0) - 1) / 2;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        double fc = ratio_R(P, Q, abs_z0, c), fd = ratio_R(P, Q, abs_z0, d);
        for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = ratio_R(P, Q, abs_z0, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = ratio_R(P, Q, abs_z0, d);
            }
        }
        double cand = (a + b) / 2;
        if (ratio_R(P, Q, abs_z0, cand) > best_val) t = cand;
    }
    out.t_star = t;
    out.C = ratio_R_down(P, Q, abs_z0, t);
    if (!(out.C > 0)) throw error(errc::no_positive_r, "R(t*) is not certifiably positive");
    return out;
}

/// Uniform certificate at norm level rho: r = rho + max{0, -log C} / m_1.
template <scalar S>
norm_certificate certify(const conv_polynomial<S>& T, const S& z0, double rho, const coefficient_norms& norms) {
    const window& w = T.win();
    const element_size m1 = w.min_positive_size();
    auto pq = build_pq(T, z0, rho, norms);
    auto mx = maximize_R(pq.P, pq.Q, pq.abs_z0);

    norm_certificate c;
    c.kind = certificate_kind::uniform;
    c.rho = rho;
    c.m1_text = m1.to_string();
    c.m1 = m1.lower();
    c.z0 = scalar_traits<S>::to_complex(z0);
    c.abs_z0 = pq.abs_z0;
    c.abs_fprime = pq.abs_fprime;
    c.P = pq.P;
    c.Q = pq.Q;
    c.t_star = mx.t_star;
    c.C = mx.C;
    c.scope = norms.scope;
    for (const auto& b : norms.bounds) c.coefficient_norms.push_back(b(rho));

    const double clamped = std::min(mx.C, 1.0);
    double excess = clamped >= 1.0 ? 0.0 : rounding::div_up(-rounding::log_down(clamped), c.m1);
    // r - rho must make e^{-(r-rho) m_1} <= R(t*) hold after rounding
    for (int attempt = 0;; ++attempt) {
        c.r = rounding::add_up(rho, excess);
        const double gap = rounding::sub_down(c.r, rho);
        c.damping = gap <= 0 ? 1.0 : rounding::exp_up(-rounding::mul_down(gap, c.m1));
        const double rhs = rounding::add_up(poly_up(c.P, c.t_star),
                                            rounding::mul_up(c.damping, poly_up(c.Q, rounding::add_up(c.abs_z0, c.t_star))));
        if (rhs <= c.t_star) break;
        if (attempt > 200) throw error(errc::no_positive_r, "could not certify e^{-(r-rho) m1} <= R(t*) after rounding");
        excess = excess == 0 ? 1e-12 : rounding::up(excess * (1 + 1e-12), 4);
    }
    return c;
}

/// Sharpened certificate at a fixed level r: finds the smallest t > 0 with
/// P(t) + Q_r(|z0| + t) <= t, where Q_r uses the off-zero norms at r.
template <scalar S>
norm_certificate certify_sharpened(const conv_polynomial<S>& T, const S& z0, double r, const coefficient_norms& norms) {
    using Tr = scalar_traits<S>;
    const window& w = T.win();
    if (norms.bounds.size() != T.degree() + 1) throw error(errc::invalid_argument, "need one norm bound per coefficient");
    std::vector<double> off;
    for (std::size_t j = 0; j < norms.bounds.size(); ++j) {
        double full = norms.bounds[j](r);
        if (!std::isfinite(full)) throw error(errc::no_positive_r, "coefficient norm diverges at this r");
        off.push_back(std::max(0.0, rounding::sub_up(full, Tr::abs_down(T.coefficient(j)[0]))));
    }
    // off-zero norms may all vanish (every coefficient supported at 0); then g is constant
    const pq_polynomials pq = detail::build_pq_from(T, z0, off, true);

    auto feasible = [&](double t) {
        double rhs = rounding::add_up(poly_up(pq.P, t), poly_up(pq.Q, rounding::add_up(pq.abs_z0, t)));
        return rhs <= t;
    };
    auto h = [&](double t) { return t - poly_plain(pq.P, t) - poly_plain(pq.Q, pq.abs_z0 + t); };

    constexpr std::size_t grid = 4096;
    const double lo = std::log(1e-12), hi = std::log(1e6);
    auto t_at = [&](std::size_t k) { return std::exp(lo + (hi - lo) * static_cast<double>(k) / (grid - 1)); };
    double t_star = -1;
    for (std::size_t k = 0; k < grid; ++k) {
        double t = t_at(k);
        if (h(t) < 0) continue;
        // bisect down to the first crossing, then step outward until it certifies
        double a = k == 0 ? 0.0 : t_at(k - 1), b = t;
        for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
            double mid = (a + b) / 2;
            (h(mid) >= 0 ? b : a) = mid;
        }
        for (double cand = b; cand <= t * (1 + 1e-9); cand = rounding::up(cand * (1 + 1e-12), 4)) {
            if (feasible(cand)) {
                t_star = cand;
                break;
            }
            if (cand >= t) break;
        }
        if (t_star < 0 && feasible(t)) t_star = t;
        if (t_star > 0) break;
    }
    if (t_star <= 0) throw error(errc::no_positive_r, "no t > 0 satisfies the sharpened inequality at this r");

    norm_certificate c;
    c.kind = certificate_kind::sharpened;
    c.rho = r;
    c.r = r;
    const element_size m1 = w.min_positive_size();
    c.m1_text = m1.to_string();
    c.m1 = m1.lower();
    c.z0 = Tr::to_complex(z0);
    c.abs_z0 = pq.abs_z0;
    c.abs_fprime = pq.abs_fprime;
    c.P = pq.P;
    c.Q = pq.Q;
    c.t_star = t_star;
    c.C = 1.0;
    c.damping = 1.0;
    c.scope = norms.scope;
    c.coefficient_norms = off;
    return c;
}

/// Smallest r in [r_lo, r_hi] (to within rel_tol) for which a sharpened certificate exists.
template <scalar S>
norm_certificate lowest_sharpened(const conv_polynomial<S>& T, const S& z0, double r_lo, double r_hi,
                                  const coefficient_norms& norms, double rel_tol = 1e-6) {
    norm_certificate best = certify_sharpened(T, z0, r_hi, norms);
    double lo = r_lo, hi = r_hi;
    try {
        return certify_sharpened(T, z0, r_lo, norms);
    } catch (const error&) {
    }
    while (hi - lo > rel_tol * std::max(1.0, std::abs(hi))) {
        double mid = (lo + hi) / 2;
        try {
            best = certify_sharpened(T, z0, mid, norms);
            hi = mid;
        } catch (const error&) {
            lo = mid;
        }
    }
    return best;
}

struct validation_report {
    /// min over levels of t* - S_r(m).
    double bound_margin = 0;
    /// min over levels of the recursive inequality slack.
    double recursive_margin = 0;
    std::size_t levels_checked = 0;
};

/// Re-checks a certificate against a solved g on every level of its window:
/// S_r(m) <= t* and S_r(m_n) <= P(S_r(m_{n-1})) + damping * Q(|z0| + S_r(m_{n-1})).
/// Throws CertificateViolated naming the first offending level.
template <scalar S>
validation_report validate(const norm_certificate& cert, const arithmetic_function<S>& g) {
    const auto up = r_norm_levels(g, cert.r, true);
    const auto down = r_norm_levels(g, cert.r, false);
    validation_report rep;
    rep.bound_margin = cert.t_star;
    rep.recursive_margin = std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l < up.size(); ++l) {
        const double bound_slack = cert.t_star - up[l];
        rep.bound_margin = std::min(rep.bound_margin, bound_slack);
        const double prev = up[l - 1];
        const double rhs = rounding::add_up(poly_up(cert.P, prev),
                                            rounding::mul_up(cert.damping, poly_up(cert.Q, rounding::add_up(cert.abs_z0, prev))));
        const double rec_slack = rhs - down[l];
        rep.recursive_margin = std::min(rep.recursive_margin, rec_slack);
        ++rep.levels_checked;
        if (bound_slack < 0)
            throw error(errc::certificate_violated, "S_r exceeds t* at level " + std::to_string(l) + " (size " +
                                                        g.win().size_of(g.win().level_starts()[l]).to_string() + ")");
        if (rec_slack < 0)
            throw error(errc::certificate_violated, "recursive estimate fails at level " + std::to_string(l) + " (size " +
                                                        g.win().size_of(g.win().level_starts()[l]).to_string() + ")");
    }
    if (rep.levels_checked == 0) rep.recursive_margin = cert.t_star;
    return rep;
}

}  // namespace dirconv
