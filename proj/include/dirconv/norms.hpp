#pragma once

// Closed-form upper bounds on r-norms of the constant function over whole
// backends, for coefficients that do not fit in a window.

#include <cmath>
#include <cstdint>
#include <limits>

#include "dirconv/rounding.hpp"
#include "dirconv/semigroup.hpp"

namespace dirconv::norms {

/// Upper bound on zeta(r) = sum_n n^{-r}: the first `head` terms rounded up plus
/// the Euler-Maclaurin tail N^{1-r}/(r-1) - N^{-r}/2 + r N^{-r-1}/12, which
/// overestimates for completely monotone summands. Infinite for r <= 1.
inline double zeta_upper(double r, std::int64_t head = 2000) {
    using namespace rounding;
    if (!(r > 1.0)) return std::numeric_limits<double>::infinity();
    double sum = 0;
    for (std::int64_t n = head; n >= 1; --n)  // small terms first
        sum = add_up(sum, exp_up(-mul_down(r, log_down(static_cast<double>(n)))));
    const double N = static_cast<double>(head);
    const double lnN = log_up(N);
    const double lnN_lo = log_down(N);
    const double integral = div_up(exp_up(mul_up(sub_up(1.0, r), lnN_lo)), sub_down(r, 1.0));
    const double half = mul_down(0.5, exp_down(-mul_up(r, lnN)));
    const double corr = div_up(mul_up(r, exp_up(-mul_down(add_down(r, 1.0), lnN_lo))), 12.0);
    return add_up(sum, add_up(sub_up(integral, half), corr));
}

/// Upper bound on 1 / (1 - e^{-a}) for a > 0.
inline double geometric_upper(double a) {
    if (!(a > 0)) return std::numeric_limits<double>::infinity();
    return rounding::div_up(1.0, rounding::sub_down(1.0, rounding::exp_up(-a)));
}

/// Upper bound on sum_{x in X} e^{-r|x|}, the r-norm of the constant 1.
inline double constant_one(const semigroup& g, double r) {
    double out = 1.0;
    switch (g.kind()) {
        case backend_kind::ordinary_dirichlet:
            for (std::size_t i = 0; i < g.dim(); ++i) out = rounding::mul_up(out, zeta_upper(r));
            return out;
        case backend_kind::lattice:
            for (std::size_t i = 0; i < g.dim(); ++i) out = rounding::mul_up(out, geometric_upper(r));
            return out;
        case backend_kind::rational_generators:
            // every element is a sum of generators, so the sum over all
            // generator multisets dominates
            for (const auto& gen : g.generators()) {
                rational size = 0;
                for (const auto& c : gen) size += c;
                out = rounding::mul_up(out, geometric_upper(rounding::mul_down(r, rounding::rational_down(size))));
            }
            return out;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace dirconv::norms
