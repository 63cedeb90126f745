#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dirconv {

using rational = mpq_class;

/// Parses "p/q", "p", or a plain decimal such as "-0.25" into an exact rational.
inline rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.front() == '+') s.erase(s.begin());

    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot != std::string::npos || exp != std::string::npos) {
        // decimal literal: mantissa digits over a power of ten
        std::string mant = s.substr(0, exp);
        long e10 = 0;
        if (exp != std::string::npos) e10 = std::stol(s.substr(exp + 1));
        bool neg = !mant.empty() && mant.front() == '-';
        if (neg) mant.erase(mant.begin());
        auto d = mant.find('.');
        if (d != std::string::npos) {
            e10 -= static_cast<long>(mant.size() - d - 1);
            mant.erase(d, 1);
        }
        if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed decimal literal '" + s + "'");
        mpz_class num(mant, 10);
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
        rational q = e10 < 0 ? rational(num, pow10) : rational(num * pow10);
        q.canonicalize();
        return neg ? rational(-q) : q;
    }

    rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

/// Canonical "p/q" text (just "p" when the denominator is one).
inline std::string to_string(const rational& q) { return q.get_str(10); }

/// Nearest double; GMP truncates, so the result may be off by one ulp.
inline double to_double(const rational& q) { return q.get_d(); }

/// Complex number with exact rational parts.
class exact_complex {
public:
    exact_complex() = default;
    exact_complex(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    exact_complex(rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    exact_complex(rational re, rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const rational& real() const { return re_; }
    const rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    exact_complex conj() const { return {re_, -im_}; }
    rational norm_sq() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    exact_complex& operator+=(const exact_complex& o) {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    exact_complex& operator-=(const exact_complex& o) {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    exact_complex& operator*=(const exact_complex& o) {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    exact_complex& operator/=(const exact_complex& o) {
        if (o.is_zero()) throw std::domain_error("exact_complex: division by zero");
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            if (sgn(im_) != 0) im_ /= o.re_;
            return *this;
        }
        rational den = o.norm_sq();
        rational r = (re_ * o.re_ + im_ * o.im_) / den;
        im_ = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(r);
        return *this;
    }

    /// this += a * b without materialising the product when both are real.
    void add_product(const exact_complex& a, const exact_complex& b) {
        if (a.is_zero() || b.is_zero()) return;
        if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
            re_ += a.re_ * b.re_;
            return;
        }
        re_ += a.re_ * b.re_ - a.im_ * b.im_;
        im_ += a.re_ * b.im_ + a.im_ * b.re_;
    }

    friend exact_complex operator+(exact_complex a, const exact_complex& b) { return a += b; }
    friend exact_complex operator-(exact_complex a, const exact_complex& b) { return a -= b; }
    friend exact_complex operator*(exact_complex a, const exact_complex& b) { return a *= b; }
    friend exact_complex operator/(exact_complex a, const exact_complex& b) { return a /= b; }
    friend exact_complex operator-(const exact_complex& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const exact_complex& a, const exact_complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const exact_complex& a, const exact_complex& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const exact_complex& z) {
        os << z.re_.get_str();
        if (sgn(z.im_) != 0) os << (sgn(z.im_) > 0 ? "+" : "") << z.im_.get_str() << "i";
        return os;
    }

private:
    rational re_{0};
    rational im_{0};
};

}  // namespace dirconv
