#pragma once

// Square polynomial systems F(a, g_1..g_m) = 0 in m unknown arithmetic
// functions. Each equation is a sum of monomials c * g_1^{*e_1} * ... * g_m^{*e_m}.
// At x != 0 the x-entries of the unknowns enter linearly through the Jacobian
// of F at the base point, so each step solves one m x m linear system.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "dirconv/algebra.hpp"
#include "dirconv/errors.hpp"
#include "dirconv/parallel.hpp"
#include "dirconv/scalar.hpp"

namespace dirconv {

template <scalar S>
struct monomial {
    arithmetic_function<S> coefficient;
    std::vector<unsigned> exponents;
};

template <scalar S>
struct poly_system {
    std::size_t unknowns = 0;
    std::vector<std::vector<monomial<S>>> equations;
    std::vector<S> base_point;
};

struct system_limits {
    std::size_t max_unknowns = 8;
    unsigned max_total_degree = 8;
    /// Double mode: refuse Jacobians with infinity-norm condition number above 1/tau_cond.
    double tau_cond = 1e-12;
};

template <scalar S>
using matrix = std::vector<std::vector<S>>;

/// Gauss-Jordan inverse; SingularJacobian when no usable pivot exists.
template <scalar S>
matrix<S> invert_matrix(matrix<S> a, double tol = default_tolerance) {
    using Tr = scalar_traits<S>;
    const std::size_t n = a.size();
    matrix<S> inv(n, std::vector<S>(n, Tr::zero()));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Tr::one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        double best = 0;
        for (std::size_t r = col; r < n; ++r) {
            if (Tr::exact) {
                if (!Tr::is_zero(a[r][col])) {
                    piv = r;
                    break;
                }
            } else {
                double v = std::abs(Tr::to_complex(a[r][col]));
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
        }
        if (piv == n || (!Tr::exact && best <= tol * 1e-6))
            throw error(errc::singular_jacobian, "Jacobian is not invertible");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const S p = Tr::one() / a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] = a[col][c] * p;
            inv[col][c] = inv[col][c] * p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || Tr::is_zero(a[r][col], 0)) continue;
            const S f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

namespace detail {

template <scalar S>
S monomial_value(const monomial<S>& t, const std::vector<S>& z) {
    S v = t.coefficient[0];
    for (std::size_t l = 0; l < z.size(); ++l)
        for (unsigned e = 0; e < t.exponents[l]; ++e) v = v * z[l];
    return v;
}

template <scalar S>
S monomial_partial(const monomial<S>& t, const std::vector<S>& z, std::size_t var) {
    using Tr = scalar_traits<S>;
    if (t.exponents[var] == 0) return Tr::zero();
    S v = t.coefficient[0] * Tr::from_int(static_cast<long>(t.exponents[var]));
    for (std::size_t l = 0; l < z.size(); ++l) {
        unsigned e = t.exponents[l] - (l == var ? 1u : 0u);
        for (unsigned k = 0; k < e; ++k) v = v * z[l];
    }
    return v;
}

}  // namespace detail

/// The Jacobian of F with respect to the unknowns at the base point.
template <scalar S>
matrix<S> system_jacobian(const poly_system<S>& sys) {
    const std::size_t m = sys.unknowns;
    matrix<S> J(m, std::vector<S>(m, scalar_traits<S>::zero()));
    for (std::size_t k = 0; k < m; ++k)
        for (const auto& t : sys.equations[k])
            for (std::size_t l = 0; l < m; ++l) J[k][l] += detail::monomial_partial(t, sys.base_point, l);
    return J;
}

template <scalar S>
void validate_system(const poly_system<S>& sys, const system_limits& lim) {
    if (sys.unknowns == 0 || sys.unknowns > lim.max_unknowns)
        throw error(errc::invalid_argument, "number of unknowns outside [1, " + std::to_string(lim.max_unknowns) + "]");
    if (sys.equations.size() != sys.unknowns) throw error(errc::invalid_argument, "system must be square");
    if (sys.base_point.size() != sys.unknowns) throw error(errc::invalid_argument, "base point has the wrong length");
    const arithmetic_function<S>* first = nullptr;
    for (const auto& eq : sys.equations) {
        for (const auto& t : eq) {
            if (t.exponents.size() != sys.unknowns) throw error(errc::invalid_argument, "monomial exponent vector has the wrong length");
            unsigned total = std::accumulate(t.exponents.begin(), t.exponents.end(), 0u);
            if (total > lim.max_total_degree) throw error(errc::invalid_argument, "monomial exceeds the total degree limit");
            if (first) first->require_same_domain(t.coefficient);
            else first = &t.coefficient;
        }
    }
    if (!first) throw error(errc::invalid_argument, "system has no terms");
}

/// Evaluates every equation of the system at (g_1..g_m) with full convolutions.
template <scalar S>
std::vector<arithmetic_function<S>> system_residual(const poly_system<S>& sys, const std::vector<arithmetic_function<S>>& g,
                                                    unsigned threads = 1) {
    std::vector<arithmetic_function<S>> out;
    for (const auto& eq : sys.equations) {
        auto acc = arithmetic_function<S>::zero(g.front().domain());
        for (const auto& t : eq) {
            auto term = t.coefficient;
            for (std::size_t l = 0; l < sys.unknowns; ++l)
                for (unsigned e = 0; e < t.exponents[l]; ++e) term = convolve(term, g[l], threads);
            acc += term;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

/// The unique m-tuple with (g_1(0),..,g_m(0)) = z0 solving the system on the window.
template <scalar S>
std::vector<arithmetic_function<S>> solve_system(const poly_system<S>& sys, const system_limits& lim = {},
                                                 double tol = default_tolerance, unsigned threads = 1) {
    using Tr = scalar_traits<S>;
    validate_system(sys, lim);
    const std::size_t m = sys.unknowns;
    window_ptr dom;
    for (const auto& eq : sys.equations)
        if (!eq.empty() && !dom) dom = eq.front().coefficient.domain();
    for (const auto& eq : sys.equations) {
        S v = Tr::zero();
        for (const auto& t : eq) v += detail::monomial_value(t, sys.base_point);
        if (!Tr::is_zero(v, tol)) throw error(errc::inconsistent_base_point, "F(v0, z0) != 0");
    }
    const auto J = system_jacobian(sys);
    const auto Jinv = invert_matrix(J, tol);
    if constexpr (!Tr::exact) {
        auto inf_norm = [](const matrix<S>& a) {
            double n = 0;
            for (const auto& row : a) {
                double s = 0;
                for (const auto& v : row) s += std::abs(v);
                n = std::max(n, s);
            }
            return n;
        };
        if (inf_norm(J) * inf_norm(Jinv) * lim.tau_cond >= 1.0)
            throw error(errc::singular_jacobian, "Jacobian is too ill-conditioned");
    }

    // Factor tables: pw[l][e] = g_l^{*e}; each monomial keeps its running
    // products chain[t][s] = g^{e_1..} up to the s-th non-trivial factor.
    std::vector<unsigned> max_exp(m, 1);
    for (const auto& eq : sys.equations)
        for (const auto& t : eq)
            for (std::size_t l = 0; l < m; ++l) max_exp[l] = std::max(max_exp[l], t.exponents[l]);
    std::vector<std::vector<arithmetic_function<S>>> pw(m);
    for (std::size_t l = 0; l < m; ++l) {
        pw[l].push_back(arithmetic_function<S>::unit(dom));
        for (unsigned e = 1; e <= max_exp[l]; ++e) pw[l].emplace_back(dom);
        S zp = Tr::one();
        for (unsigned e = 1; e <= max_exp[l]; ++e) {
            zp = zp * sys.base_point[l];
            pw[l][e][0] = zp;
        }
    }
    struct factor {
        std::size_t var;
        unsigned exp;
    };
    struct term_state {
        const monomial<S>* mono;
        std::vector<factor> factors;
        std::vector<arithmetic_function<S>> chain;
    };
    std::vector<std::vector<term_state>> terms(m);
    for (std::size_t k = 0; k < m; ++k) {
        for (const auto& t : sys.equations[k]) {
            term_state ts{&t, {}, {}};
            for (std::size_t l = 0; l < m; ++l)
                if (t.exponents[l] > 0) ts.factors.push_back({l, t.exponents[l]});
            S v = Tr::one();
            for (std::size_t s = 0; s < ts.factors.size(); ++s) {
                ts.chain.emplace_back(dom);
                v = v * pw[ts.factors[s].var][ts.factors[s].exp][0];
                ts.chain.back()[0] = v;
            }
            terms[k].push_back(std::move(ts));
        }
    }

    const window& w = *dom;
    auto refresh = [&](std::size_t i) {
        for (std::size_t l = 0; l < m; ++l)
            for (unsigned e = 2; e <= max_exp[l]; ++e) pw[l][e][i] = convolve_at(pw[l][1], pw[l][e - 1], i);
        for (auto& eq : terms)
            for (auto& ts : eq)
                for (std::size_t s = 0; s < ts.factors.size(); ++s) {
                    const auto& f = pw[ts.factors[s].var][ts.factors[s].exp];
                    ts.chain[s][i] = s == 0 ? f[i] : convolve_at(ts.chain[s - 1], f, i);
                }
    };

    const auto& levels = w.level_starts();
    for (std::size_t lv = 1; lv + 1 < levels.size(); ++lv) {
        parallel_for(levels[lv], levels[lv + 1], threads, [&](std::size_t i) {
            refresh(i);  // unknown x-entries are still zero here
            std::vector<S> rhs(m, Tr::zero());
            for (std::size_t k = 0; k < m; ++k) {
                S acc = Tr::zero();
                for (const auto& ts : terms[k]) {
                    if (ts.factors.empty()) acc += ts.mono->coefficient[i];
                    else acc += convolve_at(ts.mono->coefficient, ts.chain.back(), i);
                }
                rhs[k] = -acc;
            }
            for (std::size_t l = 0; l < m; ++l) {
                S v = Tr::zero();
                for (std::size_t k = 0; k < m; ++k) Tr::add_product(v, Jinv[l][k], rhs[k]);
                pw[l][1][i] = v;
            }
            refresh(i);
        });
    }
    std::vector<arithmetic_function<S>> out;
    for (std::size_t l = 0; l < m; ++l) out.push_back(pw[l][1]);
    return out;
}

}  // namespace dirconv
