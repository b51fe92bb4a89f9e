#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

namespace zm {

using BigInt = mpz_class;
using Rational = mpq_class;
using cplx = std::complex<double>;

/// Field realisations used by the exact/analytic code paths.
template <class F> struct FieldTraits;

template <> struct FieldTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_bigint(const BigInt& v) { return Rational(v); }
    static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
    static cplx to_complex(const Rational& v) { return cplx(v.get_d(), 0.0); }
    static Rational conj(const Rational& v) { return v; }
};

template <> struct FieldTraits<cplx> {
    static constexpr bool exact = false;
    static cplx from_int(long v) { return cplx(static_cast<double>(v), 0.0); }
    static cplx from_bigint(const BigInt& v) { return cplx(v.get_d(), 0.0); }
    static double magnitude(const cplx& v) { return std::abs(v); }
    static cplx to_complex(const cplx& v) { return v; }
    static cplx conj(const cplx& v) { return std::conj(v); }
};

template <> struct FieldTraits<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_bigint(const BigInt& v) { return v.get_d(); }
    static double magnitude(double v) { return std::fabs(v); }
    static cplx to_complex(double v) { return cplx(v, 0.0); }
    static double conj(double v) { return v; }
};

/// Rising factorial (a)_n = a(a+1)...(a+n-1) as an explicit product.
template <class F>
F rising(const F& a, int n) {
    F r = FieldTraits<F>::from_int(1);
    for (int k = 0; k < n; ++k) r *= a + FieldTraits<F>::from_int(k);
    return r;
}

BigInt factorial(int n);

/// Parses "p/q", an integer, or a finite decimal such as "0.7" into an exact rational.
Rational parse_rational(const std::string& s);

/// Parses "a", "a+bi", "a-bi", "bi", "i" (a, b decimal or p/q) into a complex double.
cplx parse_complex(const std::string& s);

/// True when the string denotes a real rational number (no imaginary unit).
bool is_rational_literal(const std::string& s);

/// Exact rendering "p/q" (or "p" for integers).
std::string format_exact(const Rational& v);

/// Shortest round-trip rendering of a double.
std::string format_double(double v);

/// Complex rendering "a+bi" with round-trip precision.
std::string format_complex(const cplx& v);

}  // namespace zm
