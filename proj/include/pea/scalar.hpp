#ifndef PEA_SCALAR_HPP
#define PEA_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace pea {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Gaussian rational: re + i*im with exact rational parts. All arithmetic in
// the library runs on these; purely real data simply keeps im == 0.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(int v) : re(v), im(0) {}
    Scalar(long v) : re(v), im(0) {}
    Scalar(const Rational& r) : re(r), im(0) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    Rational norm() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        Rational n = o.norm();
        if (n == 0) throw std::domain_error("Scalar: division by zero");
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = r;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
    friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const { Scalar one(1); return one / *this; }

    // Total order used for deterministic tie-breaking (not an algebraic order).
    static int cmp(const Scalar& a, const Scalar& b) {
        if (a.re < b.re) return -1;
        if (a.re > b.re) return 1;
        if (a.im < b.im) return -1;
        if (a.im > b.im) return 1;
        return 0;
    }

    std::string str() const;
};

Rational rational_from_strings(const std::string& num, const std::string& den);

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& x);

// Sign of a real rational: -1, 0, +1.
inline int sgn(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

}  // namespace pea

#endif
