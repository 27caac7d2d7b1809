#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>

#include "gpl/error.hpp"

namespace gpl {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a", "-a", or "a/b". Whitespace and zero denominators are rejected
// here because the underlying bignum parser is more permissive.
inline Rational parse_rational(const std::string& s) {
    const auto bad = [&s]() { fail(err::ParseError, "bad rational literal '" + s + "'"); };
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (digits == 0) bad();
    if (i < s.size()) {
        if (s[i] != '/') bad();
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        if (digits == 0 || i != s.size()) bad();
    }
    Rational r(s);
    if (sgn(r.get_den()) == 0) bad();
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Gaussian rational: the exact scalar field Q(i) used by everything
// structural. Only the states module leaves it for floating point.
struct Scalar {
    Rational re, im;

    Scalar() : re(0), im(0) {}
    Scalar(long v) : re(v), im(0) {}            // NOLINT(google-explicit-constructor)
    Scalar(Rational r) : re(std::move(r)), im(0) {} // NOLINT(google-explicit-constructor)
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    Rational norm2() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        Rational n2 = o.norm2();
        require(sgn(n2) != 0, err::SingularMatrix, "division by zero scalar");
        Rational r = (re * o.re + im * o.im) / n2;
        im = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inv() const {
        Scalar one(1);
        return one / *this;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    std::string str() const {
        if (sgn(im) == 0) return to_string(re);
        std::string s = to_string(re);
        s += (sgn(im) < 0) ? " - " : " + ";
        Rational a = abs(im);
        s += to_string(a) + "*i";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }
};

// Deterministic total order (lexicographic on re, im); used only to make
// outputs reproducible, it has no algebraic meaning.
inline int scalar_cmp(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c;
    return cmp(a.im, b.im);
}

} // namespace gpl
