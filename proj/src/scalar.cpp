#include "zm/scalar.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace zm {

BigInt factorial(int n) {
    if (n < 0) throw DomainError("factorial of a negative integer");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool is_integer_text(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw InvalidInput("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_integer_text(num) || !is_integer_text(den)) throw InvalidInput("malformed rational '" + s + "'");
        BigInt d(den[0] == '+' ? den.substr(1) : den);
        if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
        Rational r(BigInt(num[0] == '+' ? num.substr(1) : num), d);
        r.canonicalize();
        return r;
    }
    std::string mant = s;
    long exp10 = 0;
    auto epos = mant.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string e = mant.substr(epos + 1);
        if (!is_integer_text(e)) throw InvalidInput("malformed exponent in '" + s + "'");
        exp10 = std::stol(e);
        mant = mant.substr(0, epos);
    }
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        mant = mant.substr(0, dot) + frac;
        exp10 -= static_cast<long>(frac.size());
        if (mant.empty() || mant == "-" || mant == "+") mant += "0";
    }
    if (!is_integer_text(mant)) throw InvalidInput("malformed number '" + s + "'");
    Rational r(BigInt(mant[0] == '+' ? mant.substr(1) : mant));
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0) r *= p; else r /= p;
    r.canonicalize();
    return r;
}

bool is_rational_literal(const std::string& s) {
    return s.find('i') == std::string::npos && s.find('I') == std::string::npos;
}

cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw) if (c != ' ') s += c;
    if (s.empty()) throw InvalidInput("empty number");
    if (is_rational_literal(s)) return cplx(parse_rational(s).get_d(), 0.0);
    if (s.back() != 'i' && s.back() != 'I') throw InvalidInput("malformed complex '" + raw + "'");
    s.pop_back();
    // split at the last sign that is not the leading one and not after an exponent marker
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') { split = k; break; }
    }
    std::string re = split == std::string::npos ? "0" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return cplx(parse_rational(re).get_d(), parse_rational(im).get_d());
}

std::string format_exact(const Rational& v) { return v.get_str(); }

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_complex(const cplx& v) {
    std::string s = format_double(v.real());
    if (v.imag() >= 0 || std::isnan(v.imag())) s += "+";
    return s + format_double(v.imag()) + "i";
}

}  // namespace zm
