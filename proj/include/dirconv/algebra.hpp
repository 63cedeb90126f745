#pragma once

// Truncated Dirichlet algebra: arithmetic functions on a window of X with
// pointwise linear operations and convolution. Because sizes are additive and
// non-negative, every decomposition of a windowed element stays inside the
// window, so all products below agree exactly with the untruncated ones.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dirconv/errors.hpp"
#include "dirconv/parallel.hpp"
#include "dirconv/rounding.hpp"
#include "dirconv/scalar.hpp"
#include "dirconv/semigroup.hpp"

namespace dirconv {

template <scalar S>
class arithmetic_function {
public:
    using value_type = S;
    using traits = scalar_traits<S>;

    arithmetic_function() = default;
    explicit arithmetic_function(window_ptr w) : window_(std::move(w)), values_(window_->size(), traits::zero()) {}
    arithmetic_function(window_ptr w, std::vector<S> values) : window_(std::move(w)), values_(std::move(values)) {
        if (values_.size() != window_->size())
            throw error(errc::invalid_argument, "value vector does not match the window length");
    }

    static arithmetic_function zero(window_ptr w) { return arithmetic_function(std::move(w)); }

    /// u: 1 at the zero element, 0 elsewhere.
    static arithmetic_function unit(window_ptr w) {
        arithmetic_function f(std::move(w));
        f.values_[0] = traits::one();
        return f;
    }

    /// The constant function c on every element.
    static arithmetic_function constant(window_ptr w, const S& c) {
        std::size_t n = w->size();
        return arithmetic_function(std::move(w), std::vector<S>(n, c));
    }

    static arithmetic_function one(window_ptr w) { return constant(std::move(w), traits::one()); }

    /// c at the element with the given identity, 0 elsewhere.
    static arithmetic_function indicator(window_ptr w, const element_id& id, const S& c = traits::one()) {
        arithmetic_function f(w);
        f.values_[w->index_of(id)] = c;
        return f;
    }

    const window_ptr& domain() const { return window_; }
    const window& win() const { return *window_; }
    std::size_t size() const { return values_.size(); }

    const S& operator[](std::size_t i) const { return values_[i]; }
    S& operator[](std::size_t i) { return values_[i]; }
    const S& at(const element_id& id) const { return values_[window_->index_of(id)]; }
    S& at(const element_id& id) { return values_[window_->index_of(id)]; }

    const std::vector<S>& values() const { return values_; }
    std::vector<S>& values() { return values_; }

    /// True when some entry is non-zero (exactly, or beyond tol in double mode).
    bool is_nonzero(double tol = default_tolerance) const {
        for (const auto& v : values_)
            if (!traits::is_zero(v, tol)) return true;
        return false;
    }

    bool same_domain(const arithmetic_function& o) const {
        if (window_ == o.window_) return true;
        return window_ && o.window_ && window_->group() == o.window_->group() && window_->size() == o.window_->size();
    }

    void require_same_domain(const arithmetic_function& o) const {
        if (!same_domain(o)) throw error(errc::backend_mismatch, "functions live on different windows");
    }

    arithmetic_function& operator+=(const arithmetic_function& o) {
        require_same_domain(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    arithmetic_function& operator-=(const arithmetic_function& o) {
        require_same_domain(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    arithmetic_function& operator*=(const S& c) {
        for (auto& v : values_) v *= c;
        return *this;
    }

    friend arithmetic_function operator+(arithmetic_function a, const arithmetic_function& b) { return a += b; }
    friend arithmetic_function operator-(arithmetic_function a, const arithmetic_function& b) { return a -= b; }
    friend arithmetic_function operator*(arithmetic_function a, const S& c) { return a *= c; }
    friend arithmetic_function operator*(const S& c, arithmetic_function a) { return a *= c; }
    friend arithmetic_function operator-(arithmetic_function a) {
        for (auto& v : a.values_) v = -v;
        return a;
    }

    /// Entrywise comparison: exact in exact mode, within tol in double mode.
    bool equals(const arithmetic_function& o, double tol = default_tolerance) const {
        if (!same_domain(o)) return false;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!traits::equal(values_[i], o.values_[i], tol)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : values_) m = std::max(m, std::abs(traits::to_complex(v)));
        return m;
    }

    friend bool operator==(const arithmetic_function& a, const arithmetic_function& b) {
        return a.same_domain(b) && a.values_ == b.values_;
    }

private:
    window_ptr window_;
    std::vector<S> values_;
};

/// (g*h)(x) for a single window index.
template <scalar S>
S convolve_at(const arithmetic_function<S>& g, const arithmetic_function<S>& h, std::size_t i) {
    S acc = scalar_traits<S>::zero();
    for (auto d : g.win().decompositions(i)) scalar_traits<S>::add_product(acc, g[d.left], h[d.right]);
    return acc;
}

template <scalar S>
arithmetic_function<S> convolve(const arithmetic_function<S>& g, const arithmetic_function<S>& h, unsigned threads = 1) {
    g.require_same_domain(h);
    arithmetic_function<S> out(g.domain());
    parallel_for(0, g.size(), threads, [&](std::size_t i) { out[i] = convolve_at(g, h, i); });
    return out;
}

/// g^{*j}, with g^{*0} = u.
template <scalar S>
arithmetic_function<S> power(const arithmetic_function<S>& g, unsigned j, unsigned threads = 1) {
    auto result = arithmetic_function<S>::unit(g.domain());
    for (unsigned i = 0; i < j; ++i) result = convolve(result, g, threads);
    return result;
}

/// Convolution inverse g^{-1}; requires g(0) != 0 (|g(0)| > tol in double mode).
///
/// Entries are filled level by level: an entry depends only on entries of
/// strictly smaller size, so one level can be computed concurrently.
template <scalar S>
arithmetic_function<S> invert(const arithmetic_function<S>& g, double tol = default_tolerance, unsigned threads = 1) {
    using T = scalar_traits<S>;
    if (T::is_zero(g[0], tol)) throw error(errc::not_invertible, "g(0) = 0, so g is not a unit");
    const window& w = g.win();
    arithmetic_function<S> inv(g.domain());
    const S inv0 = T::one() / g[0];
    inv[0] = inv0;
    const auto& levels = w.level_starts();
    for (std::size_t l = 1; l + 1 < levels.size(); ++l) {
        parallel_for(levels[l], levels[l + 1], threads, [&](std::size_t i) {
            S acc = T::zero();
            for (auto d : w.decompositions(i)) {
                if (d.right == i) continue;
                T::add_product(acc, g[d.left], inv[d.right]);
            }
            inv[i] = -(inv0 * acc);
        });
    }
    return inv;
}

/// Upper bound on e^{-r|x|} for the element at window index i.
inline double weight_up(const window& w, std::size_t i, double r) {
    if (i == 0 || r == 0.0) return 1.0;
    auto s = w.size_of(i);
    if (r > 0) return rounding::exp_up(-rounding::mul_down(r, s.lower()));
    return rounding::exp_up(rounding::mul_up(-r, s.upper()));
}

/// Lower bound on e^{-r|x|}.
inline double weight_down(const window& w, std::size_t i, double r) {
    if (i == 0 || r == 0.0) return 1.0;
    auto s = w.size_of(i);
    if (r > 0) return rounding::exp_down(-rounding::mul_up(r, s.upper()));
    return rounding::exp_down(rounding::mul_down(-r, s.lower()));
}

/// Upper bound on the partial r-norm sum over 0 < |x| <= m (m given as a size key).
/// With include_zero the x = 0 term is added as well.
template <scalar S>
double r_norm_partial(const arithmetic_function<S>& g, double r, std::int64_t max_key, bool include_zero = false) {
    const window& w = g.win();
    double sum = include_zero ? scalar_traits<S>::abs_up(g[0]) : 0.0;
    for (std::size_t i = 1; i < g.size() && w[i].key <= max_key; ++i) {
        double a = scalar_traits<S>::abs_up(g[i]);
        if (a == 0.0) continue;
        sum = rounding::add_up(sum, rounding::mul_up(a, weight_up(w, i, r)));
    }
    return sum;
}

/// Cumulative S_r at the end of every size level; entry 0 is the zero level
/// (always 0). Rounded up, or down with round_up = false.
template <scalar S>
std::vector<double> r_norm_levels(const arithmetic_function<S>& g, double r, bool round_up = true) {
    const window& w = g.win();
    const auto& levels = w.level_starts();
    std::vector<double> out(w.level_count(), 0.0);
    double sum = 0.0;
    for (std::size_t l = 1; l < w.level_count(); ++l) {
        for (std::size_t i = levels[l]; i < levels[l + 1]; ++i) {
            if (round_up) {
                double a = scalar_traits<S>::abs_up(g[i]);
                if (a != 0.0) sum = rounding::add_up(sum, rounding::mul_up(a, weight_up(w, i, r)));
            } else {
                double a = scalar_traits<S>::abs_down(g[i]);
                if (a != 0.0) sum = rounding::add_down(sum, rounding::mul_down(a, weight_down(w, i, r)));
            }
        }
        out[l] = sum;
    }
    return out;
}

/// Upper bound on the full window norm sum over |x| <= B of |g(x)| e^{-r|x|}.
template <scalar S>
double window_norm(const arithmetic_function<S>& g, double r) {
    return r_norm_partial(g, r, g.win().max_key(), true);
}

/// Lower bound on the same window sum (used when subtracting it from a norm bound).
template <scalar S>
double window_norm_down(const arithmetic_function<S>& g, double r) {
    const window& w = g.win();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double a = scalar_traits<S>::abs_down(g[i]);
        if (a == 0.0) continue;
        sum = rounding::add_down(sum, rounding::mul_down(a, weight_down(w, i, r)));
    }
    return sum;
}

/// g_r(x) = e^{-r|x|} g(x), in double precision.
template <scalar S>
arithmetic_function<approx_complex> damped(const arithmetic_function<S>& g, double r) {
    arithmetic_function<approx_complex> out(g.domain());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = scalar_traits<S>::to_complex(g[i]) * std::exp(-r * g.win().size_of(i).approx());
    return out;
}

/// Converts an exact function to double precision.
inline arithmetic_function<approx_complex> to_approx(const arithmetic_function<exact_complex>& g) {
    arithmetic_function<approx_complex> out(g.domain());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].to_complex();
    return out;
}

inline arithmetic_function<approx_complex> to_approx(const arithmetic_function<approx_complex>& g) { return g; }

}  // namespace dirconv
