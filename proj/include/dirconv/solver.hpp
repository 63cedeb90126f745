#pragma once

// Solutions of convolution polynomial equations
//
//     T g = a_d * g^{*d} + ... + a_1 * g + a_0 = 0
//
// anchored at simple zeros z0 of the initial polynomial f(z) = sum_j a_j(0) z^j.
// For x != 0 the coefficient of g(x) in (T g)(x) is f'(z0), and every other
// term involves only entries of strictly smaller size, so g is determined
// element by element in size/lex order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dirconv/algebra.hpp"
#include "dirconv/errors.hpp"
#include "dirconv/parallel.hpp"
#include "dirconv/polynomial.hpp"
#include "dirconv/scalar.hpp"

namespace dirconv {

/// The equation T: coefficient functions a_0..a_d on a common window.
template <scalar S>
class conv_polynomial {
public:
    using function = arithmetic_function<S>;

    explicit conv_polynomial(std::vector<function> coeffs, double tol = default_tolerance)
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) throw error(errc::invalid_argument, "a convolution polynomial needs degree d >= 1");
        for (const auto& c : coeffs_) coeffs_.front().require_same_domain(c);
        if (!coeffs_.back().is_nonzero(tol)) throw error(errc::invalid_argument, "leading coefficient a_d is the zero function");
    }

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const function& coefficient(std::size_t j) const { return coeffs_.at(j); }
    const std::vector<function>& coefficients() const { return coeffs_; }
    const window_ptr& domain() const { return coeffs_.front().domain(); }
    const window& win() const { return *domain(); }

    /// Coefficients of f(z): the values a_j(0).
    coeff_vector<S> initial_coefficients() const {
        coeff_vector<S> f;
        for (const auto& c : coeffs_) f.push_back(c[0]);
        return f;
    }

private:
    std::vector<function> coeffs_;
};

struct solver_options {
    double tolerance = default_tolerance;
    unsigned threads = 1;
};

/// One distinct zero of f.
template <scalar S>
struct root_entry {
    approx_complex approx;
    /// Usable anchor value: the root itself in double mode, the exact root in
    /// exact mode when it lies in Q(i).
    std::optional<S> value;
    unsigned multiplicity = 1;
    bool simple = true;
    std::string note;
};

template <scalar S>
struct root_report {
    coeff_vector<S> f;
    coeff_vector<S> f_prime;
    std::vector<root_entry<S>> roots;

    /// tau_root and tau_simple used in double mode (zero in exact mode).
    double tau_root = 0;
    double tau_simple = 0;

    int degree() const { return degree_of(f); }
    std::size_t simple_count() const {
        return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [](const auto& r) { return r.simple; }));
    }
    unsigned multiplicity_total() const {
        unsigned m = 0;
        for (const auto& r : roots) m += r.multiplicity;
        return m;
    }
};

namespace detail {

inline double max_abs_coefficient(const coeff_vector<approx_complex>& f) {
    double m = 0;
    for (const auto& c : f) m = std::max(m, std::abs(c));
    return m;
}

inline double max_abs_coefficient(const coeff_vector<exact_complex>& f) {
    double m = 0;
    for (const auto& c : f) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

inline std::string format_root(const approx_complex& z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real();
    if (z.imag() != 0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

inline root_report<approx_complex> find_roots(const coeff_vector<approx_complex>& f_raw, double tol) {
    root_report<approx_complex> rep;
    const double scale = max_abs_coefficient(f_raw);
    rep.tau_root = 1e-8 * (1.0 + scale);
    rep.tau_simple = 1e-6 * scale;
    rep.f = trimmed(f_raw, tol);
    rep.f_prime = derivative(rep.f);
    auto zs = aberth_roots(rep.f);

    // cluster at tau_root, then merge non-simple clusters that a multiple root
    // split apart (a k-fold root perturbs at roughly eps^{1/k})
    std::vector<std::vector<approx_complex>> clusters;
    for (const auto& z : zs) {
        bool placed = false;
        for (auto& c : clusters) {
            if (std::abs(c.front() - z) <= rep.tau_root) {
                c.push_back(z);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({z});
    }
    auto centre = [](const std::vector<approx_complex>& c) {
        approx_complex s{};
        for (const auto& z : c) s += z;
        return s / static_cast<double>(c.size());
    };
    auto weak = [&](const std::vector<approx_complex>& c) {
        return c.size() > 1 || std::abs(evaluate(rep.f_prime, centre(c))) <= rep.tau_simple;
    };
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
                if (!weak(clusters[i]) || !weak(clusters[j])) continue;
                approx_complex ci = centre(clusters[i]);
                if (std::abs(ci - centre(clusters[j])) <= 1e-4 * (1.0 + std::abs(ci))) {
                    clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
                    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
        }
    }
    for (const auto& c : clusters) {
        root_entry<approx_complex> e;
        e.approx = centre(c);
        e.multiplicity = static_cast<unsigned>(c.size());
        e.simple = !weak(c);
        e.value = e.approx;
        if (!e.simple) e.note = "multiple root";
        rep.roots.push_back(e);
    }
    return rep;
}

inline root_report<exact_complex> find_roots(const coeff_vector<exact_complex>& f_raw, double /*tol*/) {
    root_report<exact_complex> rep;
    rep.f = trimmed(f_raw);
    rep.f_prime = derivative(rep.f);
    auto f = rep.f;
    // zero roots first, their multiplicity is the count of vanishing low coefficients
    unsigned zero_mult = 0;
    while (!f.empty() && f.front().is_zero()) {
        f.erase(f.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) {
        root_entry<exact_complex> e;
        e.approx = {};
        e.value = exact_complex();
        e.multiplicity = zero_mult;
        e.simple = zero_mult == 1;
        if (!e.simple) e.note = "multiple root";
        rep.roots.push_back(e);
    }
    if (degree_of(f) >= 1) {
        auto factors = squarefree_decomposition(f);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& s = factors[i];
            if (degree_of(s) < 1) continue;
            coeff_vector<approx_complex> sa;
            for (const auto& c : s) sa.push_back(c.to_complex());
            for (const auto& z : aberth_roots(sa)) {
                root_entry<exact_complex> e;
                e.approx = z;
                e.multiplicity = static_cast<unsigned>(i + 1);
                e.simple = e.multiplicity == 1;
                e.value = exact_root_near(s, z);
                if (e.value) e.approx = e.value->to_complex();
                if (!e.simple) e.note = "multiple root";
                else if (!e.value) e.note = "root is not in Q(i); exact anchoring unavailable";
                rep.roots.push_back(e);
            }
        }
    }
    std::sort(rep.roots.begin(), rep.roots.end(), [](const auto& a, const auto& b) {
        if (a.approx.real() != b.approx.real()) return a.approx.real() < b.approx.real();
        return a.approx.imag() < b.approx.imag();
    });
    return rep;
}

}  // namespace detail

/// f(z) = sum_j a_j(0) z^j with its roots, multiplicities and simplicity flags.
template <scalar S>
root_report<S> initial_polynomial(const conv_polynomial<S>& T, double tol = default_tolerance) {
    auto f = trimmed(T.initial_coefficients(), scalar_traits<S>::exact ? 0.0 : tol);
    if (f.empty()) throw error(errc::zero_polynomial, "f is identically zero (AllZero): every a_j(0) vanishes");
    if (f.size() == 1) throw error(errc::degenerate_constant, "f is a non-zero constant, so T g = 0 has no solution");
    return detail::find_roots(T.initial_coefficients(), tol);
}

/// The unique solution with g(0) = z0 for a simple zero z0 of f.
template <scalar S>
arithmetic_function<S> solve(const conv_polynomial<S>& T, const S& z0, const solver_options& opt = {}) {
    using Tr = scalar_traits<S>;
    const auto f = T.initial_coefficients();
    const S fz = evaluate(f, z0);
    const S df = evaluate(derivative(f), z0);
    if constexpr (Tr::exact) {
        if (!fz.is_zero()) throw error(errc::not_a_simple_root, "f(z0) != 0");
        if (df.is_zero()) throw error(errc::not_a_simple_root, "f'(z0) = 0, z0 is a multiple root");
    } else {
        const double scale = detail::max_abs_coefficient(f);
        const double tau_root = 1e-8 * (1.0 + scale) * std::max(1.0, std::pow(std::abs(z0), T.degree()));
        if (std::abs(fz) > tau_root) throw error(errc::not_a_simple_root, "|f(z0)| exceeds the root tolerance");
        if (std::abs(df) <= 1e-6 * scale) throw error(errc::not_a_simple_root, "|f'(z0)| is below the simplicity gate");
    }

    const window& w = T.win();
    const unsigned d = T.degree();
    // pw[j] holds g^{*j}; pw[1] is g itself
    std::vector<arithmetic_function<S>> pw;
    pw.reserve(d + 1);
    pw.push_back(arithmetic_function<S>::unit(T.domain()));
    for (unsigned j = 1; j <= d; ++j) pw.emplace_back(T.domain());
    // j * z0^{j-1}: coefficient of g(x) inside g^{*j}(x)
    std::vector<S> lin(d + 1, Tr::zero());
    {
        S zp = Tr::one();
        for (unsigned j = 1; j <= d; ++j) {
            lin[j] = Tr::from_int(static_cast<long>(j)) * zp;
            zp = zp * z0;
        }
    }
    {
        S zp = Tr::one();
        for (unsigned j = 1; j <= d; ++j) {
            zp = zp * z0;
            pw[j][0] = zp;
        }
    }
    const S neg_inv_df = -(Tr::one() / df);

    const auto& levels = w.level_starts();
    for (std::size_t l = 1; l + 1 < levels.size(); ++l) {
        parallel_for(levels[l], levels[l + 1], opt.threads, [&](std::size_t i) {
            // masked pass: g(x) = 0, so pw[j][i] holds g^{*j}(x) minus its g(x) part
            for (unsigned j = 2; j <= d; ++j) {
                S acc = Tr::zero();
                for (auto dc : w.decompositions(i)) {
                    if (dc.left == i) continue;  // g(x) * g^{*(j-1)}(0) vanishes while masked
                    Tr::add_product(acc, pw[1][dc.left], pw[j - 1][dc.right]);
                }
                pw[j][i] = std::move(acc);
            }
            S rest = T.coefficient(0)[i];
            for (unsigned j = 1; j <= d; ++j) {
                const auto& a = T.coefficient(j);
                for (auto dc : w.decompositions(i)) Tr::add_product(rest, a[dc.left], pw[j][dc.right]);
            }
            const S gx = rest * neg_inv_df;
            pw[1][i] = gx;
            for (unsigned j = 2; j <= d; ++j) pw[j][i] += lin[j] * gx;
        });
    }
    pw[1][0] = z0;
    return std::move(pw[1]);
}

/// T g evaluated with full convolutions and powers.
template <scalar S>
arithmetic_function<S> residual(const conv_polynomial<S>& T, const arithmetic_function<S>& g, unsigned threads = 1) {
    T.coefficient(0).require_same_domain(g);
    arithmetic_function<S> out = T.coefficient(0);
    arithmetic_function<S> gp = g;
    for (unsigned j = 1; j <= T.degree(); ++j) {
        if (j > 1) gp = convolve(gp, g, threads);
        out += convolve(T.coefficient(j), gp, threads);
    }
    return out;
}

/// Evidence for the minimal-size obstruction: at the first non-zero element q
/// (only decompositions q+0 and 0+q), (T g)(q) = f'(z0) g(q) + sum_j a_j(q) z0^j,
/// so when f'(z0) = 0 the value sum_j a_j(q) z0^j must vanish for a solution to exist.
template <scalar S>
struct obstruction {
    element_id q;
    approx_complex root;
    S value;
};

template <scalar S>
class no_simple_roots_error : public error {
public:
    no_simple_roots_error(root_report<S> report, std::vector<obstruction<S>> obs, bool proven, const std::string& msg)
        : error(errc::no_simple_roots, msg), report_(std::move(report)), obstructions_(std::move(obs)), proven_(proven) {}

    const root_report<S>& report() const { return report_; }
    const std::vector<obstruction<S>>& obstructions() const { return obstructions_; }
    /// True when every candidate anchor leaves a non-zero residual at q.
    bool unsolvable() const { return proven_; }

private:
    root_report<S> report_;
    std::vector<obstruction<S>> obstructions_;
    bool proven_;
};

template <scalar S>
struct solution {
    S root;
    arithmetic_function<S> g;
};

template <scalar S>
struct solve_all_result {
    root_report<S> report;
    std::vector<solution<S>> solutions;
    /// Roots that were not used as anchors, with the reason.
    std::vector<std::pair<approx_complex, std::string>> skipped;
};

template <scalar S>
solve_all_result<S> solve_all(const conv_polynomial<S>& T, const solver_options& opt = {}) {
    using Tr = scalar_traits<S>;
    solve_all_result<S> res;
    res.report = initial_polynomial(T, opt.tolerance);
    for (const auto& r : res.report.roots) {
        if (!r.simple) {
            res.skipped.emplace_back(r.approx, "multiplicity " + std::to_string(r.multiplicity));
            continue;
        }
        if (!r.value) {
            res.skipped.emplace_back(r.approx, r.note);
            continue;
        }
        res.solutions.push_back({*r.value, solve(T, *r.value, opt)});
    }
    if (res.solutions.empty() && res.report.simple_count() == 0) {
        std::vector<obstruction<S>> obs;
        bool proven = T.win().size() > 1;
        std::ostringstream msg;
        msg << "f has no simple zeros";
        if (T.win().size() > 1) {
            const element_id& q = T.win()[1].id;
            for (const auto& r : res.report.roots) {
                if (!r.value) {
                    proven = false;
                    continue;
                }
                S v = Tr::zero();
                S zp = Tr::one();
                for (unsigned j = 0; j <= T.degree(); ++j) {
                    v += T.coefficient(j)[1] * zp;
                    zp = zp * *r.value;
                }
                if (Tr::is_zero(v, opt.tolerance)) proven = false;
                obs.push_back({q, r.approx, v});
                msg << "; at g(0) = " << detail::format_root(r.approx) << " the residual at the minimal element is forced to "
                    << detail::format_root(Tr::to_complex(v));
            }
            msg << (proven ? "; T g = 0 is unsolvable" : "; existence undecided");
        }
        throw no_simple_roots_error<S>(res.report, std::move(obs), proven, msg.str());
    }
    return res;
}

struct factorization_report {
    bool holds = false;
    double max_deviation = 0;
};

/// Checks T g = a_d * (g - g_1) * ... * (g - g_d) coefficient-wise in g.
template <scalar S>
factorization_report factorization_check(const conv_polynomial<S>& T, const std::vector<arithmetic_function<S>>& sols,
                                         double tol = default_tolerance) {
    const unsigned d = T.degree();
    auto rep = initial_polynomial(T, tol);
    if (rep.degree() != static_cast<int>(d) || rep.simple_count() != d || rep.roots.size() != d)
        throw error(errc::precondition_failed, "factorization needs deg f = d with d simple zeros");
    if (sols.size() != d) throw error(errc::precondition_failed, "expected exactly d solutions");

    // running product prod (g - g_i) as a polynomial in g with function coefficients
    std::vector<arithmetic_function<S>> prod{arithmetic_function<S>::unit(T.domain())};
    for (const auto& gi : sols) {
        std::vector<arithmetic_function<S>> next(prod.size() + 1, arithmetic_function<S>::zero(T.domain()));
        for (std::size_t k = 0; k < prod.size(); ++k) {
            next[k + 1] += prod[k];
            next[k] -= convolve(gi, prod[k]);
        }
        prod = std::move(next);
    }
    factorization_report out;
    out.holds = true;
    for (unsigned k = 0; k <= d; ++k) {
        auto ck = convolve(T.coefficient(d), prod[k]);
        auto diff = ck - T.coefficient(k);
        out.max_deviation = std::max(out.max_deviation, diff.max_abs());
        if (!ck.equals(T.coefficient(k), tol)) out.holds = false;
    }
    return out;
}

}  // namespace dirconv
