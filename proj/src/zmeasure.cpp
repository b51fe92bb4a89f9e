#include "zm/zmeasure.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zm {

std::string to_string(Series s) {
    switch (s) {
        case Series::Principal: return "principal";
        case Series::Complementary: return "complementary";
        case Series::Degenerate: return "degenerate";
        case Series::Invalid: return "invalid";
    }
    return "invalid";
}

namespace {

bool near_integer(double v, double tol) { return std::fabs(v - std::round(v)) <= tol; }

bool is_integer(const Rational& v) { return v.get_den() == 1; }

BigInt floor_of(const Rational& v) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

template <class F> F from_int(long v) { return FieldTraits<F>::from_int(v); }
template <class F> F from_big(const BigInt& v) { return FieldTraits<F>::from_bigint(v); }

template <class F> F field_factorial(int n) { return from_big<F>(factorial(n)); }

template <class F> F square(const F& v) { return v * v; }

/// Determinant by Gaussian elimination; pivots on the largest magnitude for inexact fields.
template <class F>
F determinant(std::vector<std::vector<F>> a) {
    const std::size_t n = a.size();
    F det = from_int<F>(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < n; ++r) {
            if (FieldTraits<F>::exact) {
                if (a[r][col] != from_int<F>(0)) { piv = r; break; }
            } else if (FieldTraits<F>::magnitude(a[r][col]) > FieldTraits<F>::magnitude(a[piv][col])) {
                piv = r;
            }
        }
        if (a[piv][col] == from_int<F>(0)) return from_int<F>(0);
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const F factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

}  // namespace

Series classify(const cplx& z, const cplx& zp, double tol) {
    const bool z_real = std::fabs(z.imag()) <= tol, zp_real = std::fabs(zp.imag()) <= tol;
    if ((z_real && near_integer(z.real(), tol)) || (zp_real && near_integer(zp.real(), tol))) return Series::Degenerate;
    if (z_real && zp_real && std::floor(z.real()) == std::floor(zp.real())) return Series::Complementary;
    if (std::abs(zp - std::conj(z)) <= tol) return Series::Principal;
    return Series::Invalid;
}

Series classify(const Rational& z, const Rational& zp) {
    if (is_integer(z) || is_integer(zp)) return Series::Degenerate;
    if (floor_of(z) == floor_of(zp)) return Series::Complementary;
    return Series::Invalid;
}

ZParams<Rational> make_params(const Rational& z, const Rational& zp) {
    const Series s = classify(z, zp);
    if (s == Series::Degenerate) throw DegenerateParameters("degenerate series: z or z' is an integer");
    if (s == Series::Invalid) throw DomainError("z = " + z.get_str() + ", z' = " + zp.get_str() + " define no z-measure");
    return {z, zp, Rational(z * zp), s};
}

ZParams<cplx> make_params(const cplx& z, const cplx& zp) {
    const Series s = classify(z, zp);
    if (s == Series::Degenerate) throw DegenerateParameters("degenerate series: z or z' is an integer");
    if (s == Series::Invalid) throw DomainError("z = " + format_complex(z) + ", z' = " + format_complex(zp) + " define no z-measure");
    // t is real for both admissible series; drop rounding noise in its imaginary part
    return {z, zp, cplx((z * zp).real(), 0.0), s};
}

ZParams<cplx> to_complex(const ZParams<Rational>& p) {
    return {cplx(p.z.get_d(), 0.0), cplx(p.zp.get_d(), 0.0), cplx(p.t.get_d(), 0.0), p.series};
}

template <class F>
ZParams<F> reflect(const ZParams<F>& p) {
    return {F(-p.z), F(-p.zp), p.t, p.series};
}

template <class F>
F weight_rows(const Partition& lambda, const ZParams<F>& params, int l) {
    if (l < lambda.length()) throw InvalidInput("row count l must be at least the length of the partition");
    const int n = lambda.size();
    F num = field_factorial<F>(n) / rising(params.t, n);
    BigInt vandermonde = 1, den = 1;
    for (int i = 1; i <= l; ++i) {
        const F shift = from_int<F>(1 - i);
        num *= rising(F(params.z + shift), lambda.row(i)) * rising(F(params.zp + shift), lambda.row(i));
        for (int j = i + 1; j <= l; ++j) vandermonde *= lambda.row(i) - lambda.row(j) + j - i;
        den *= factorial(lambda.row(i) + l - i);
    }
    return num * from_big<F>(vandermonde * vandermonde) / from_big<F>(den * den);
}

template <class F>
F weight(const Partition& lambda, const ZParams<F>& params, WeightMethod method) {
    if (params.series != Series::Principal && params.series != Series::Complementary)
        throw DegenerateParameters("weights need principal or complementary parameters");
    const int n = lambda.size();
    switch (method) {
        case WeightMethod::boxes: {
            F prod = from_int<F>(1);
            for (int i = 1; i <= lambda.length(); ++i)
                for (int j = 1; j <= lambda.row(i); ++j) {
                    const F content = from_int<F>(j - i);
                    prod *= (params.z + content) * (params.zp + content);
                }
            const BigInt d = dim(lambda);
            return prod / rising(params.t, n) * from_big<F>(d * d) / field_factorial<F>(n);
        }
        case WeightMethod::rows: return weight_rows(lambda, params, lambda.length());
        case WeightMethod::frobenius: {
            const FrobeniusCoords f = frobenius(lambda);
            const int d = f.rank();
            F val = field_factorial<F>(n) / rising(params.t, n);
            for (int k = 0; k < d; ++k) val *= params.t;
            BigInt num = 1, den = 1;
            const F one = from_int<F>(1);
            for (int i = 0; i < d; ++i) {
                const int p = f.p[static_cast<std::size_t>(i)], q = f.q[static_cast<std::size_t>(i)];
                val *= rising(F(params.z + one), p) * rising(F(params.zp + one), p) *
                       rising(F(one - params.z), q) * rising(F(one - params.zp), q);
                const BigInt pq = factorial(p) * factorial(q);
                den *= pq * pq;
                for (int j = 0; j < d; ++j) {
                    const BigInt h = f.p[static_cast<std::size_t>(i)] + f.q[static_cast<std::size_t>(j)] + 1;
                    den *= h * h;
                }
                for (int j = i + 1; j < d; ++j) {
                    const BigInt dp = f.p[static_cast<std::size_t>(i)] - f.p[static_cast<std::size_t>(j)];
                    const BigInt dq = f.q[static_cast<std::size_t>(i)] - f.q[static_cast<std::size_t>(j)];
                    num *= dp * dp * dq * dq;
                }
            }
            return val * from_big<F>(num) / from_big<F>(den);
        }
    }
    throw InvalidInput("unknown weight method");
}

template <class F>
std::vector<std::pair<Partition, F>> level_weights(int n, const ZParams<F>& params) {
    std::vector<std::pair<Partition, F>> out;
    for (const Partition& lambda : partitions_of(n)) out.emplace_back(lambda, weight(lambda, params));
    return out;
}

template <class F>
F m_pq(int p, int q, const ZParams<F>& params) {
    if (p < 0 || q < 0) throw InvalidInput("m_pq needs p, q >= 0");
    const F one = from_int<F>(1);
    F v = params.t * rising(F(params.z + one), p) * rising(F(params.zp + one), p) *
          rising(F(one - params.z), q) * rising(F(one - params.zp), q);
    return v / from_big<F>(factorial(p) * factorial(q) * (p + q + 1));
}

template <class F>
F det_weight(const Partition& lambda, const ZParams<F>& params) {
    if (params.series != Series::Principal && params.series != Series::Complementary)
        throw DegenerateParameters("weights need principal or complementary parameters");
    const FrobeniusCoords f = frobenius(lambda);
    const std::size_t d = static_cast<std::size_t>(f.rank());
    std::vector<std::vector<F>> m(d, std::vector<F>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] = m_pq(f.p[i], f.q[j], params);
    return determinant(std::move(m)) / rising(params.t, lambda.size());
}

template <class F>
double relative_gap(const F& a, const F& b) {
    const double diff = FieldTraits<F>::magnitude(F(a - b));
    if (FieldTraits<F>::exact) return diff;
    return diff / std::max({1.0, FieldTraits<F>::magnitude(a), FieldTraits<F>::magnitude(b)});
}

std::string VerificationReport::to_json() const {
    return "{\"pass\":" + std::string(pass ? "true" : "false") + ",\"max_violation\":\"" + max_violation_text +
           "\",\"worst\":\"" + worst + "\",\"checks\":" + std::to_string(checks) + "}";
}

template <class F>
void record_check(VerificationReport& r, const F& a, const F& b, const std::string& where, double tol) {
    ++r.checks;
    const double gap = relative_gap(a, b);
    bool violated;
    std::string text;
    if constexpr (FieldTraits<F>::exact) {
        const F diff = a - b;
        violated = diff != 0;
        text = F(abs(diff)).get_str();
    } else {
        violated = gap > tol;
        text = format_double(gap);
    }
    if (violated) r.pass = false;
    if (gap > r.max_violation || (violated && r.worst.empty())) {
        r.max_violation = gap;
        r.max_violation_text = text;
        r.worst = where;
    }
}

namespace {


}  // namespace

template <class F>
VerificationReport verify_coherence(int n, const ZParams<F>& params, double tol) {
    if (n < 0) throw InvalidInput("coherence needs n >= 0");
    VerificationReport r;
    const auto lower = level_weights(n, params);
    const auto upper = level_weights(n + 1, params);
    F sum_lower = from_int<F>(0), sum_upper = from_int<F>(0);
    for (const auto& entry : lower) sum_lower += entry.second;
    for (const auto& entry : upper) sum_upper += entry.second;
    record_check(r, sum_lower, from_int<F>(1), "sum over level " + std::to_string(n), tol);
    record_check(r, sum_upper, from_int<F>(1), "sum over level " + std::to_string(n + 1), tol);
    for (const auto& [mu, m_mu] : lower) {
        const BigInt dim_mu = dim(mu);
        F total = from_int<F>(0);
        for (const Partition& lambda : add_boxes(mu)) {
            const auto it = std::find_if(upper.begin(), upper.end(), [&](const auto& e) { return e.first == lambda; });
            total += from_big<F>(dim_mu) / from_big<F>(dim(lambda)) * it->second;
        }
        record_check(r, m_mu, total, mu.to_string(), tol);
    }
    return r;
}

template <class F>
VerificationReport verify_hook_recurrence(int p_max, int q_max, const ZParams<F>& params, double tol) {
    VerificationReport r;
    record_check(r, m_pq(0, 0, params), params.t, "m_00", tol);
    for (int p = 0; p <= p_max; ++p)
        for (int q = 0; q <= q_max; ++q) {
            const F lhs = m_pq(p + 1, q, params) + m_pq(p, q + 1, params) - from_int<F>(p + q + 1) * m_pq(p, q, params);
            const F rhs = m_pq(p, 0, params) * m_pq(0, q, params);
            record_check(r, lhs, rhs, "(p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")", tol);
        }
    return r;
}

template <class F>
bool transpose_symmetry_check(const Partition& lambda, const ZParams<F>& params, double tol) {
    const F lhs = weight(transpose(lambda), params);
    const F rhs = weight(lambda, reflect(params));
    if constexpr (FieldTraits<F>::exact) return lhs == rhs;
    else return relative_gap(lhs, rhs) <= tol;
}

#define ZM_INSTANTIATE(F)                                                                              \
    template ZParams<F> reflect<F>(const ZParams<F>&);                                                 \
    template F weight<F>(const Partition&, const ZParams<F>&, WeightMethod);                           \
    template F weight_rows<F>(const Partition&, const ZParams<F>&, int);                               \
    template std::vector<std::pair<Partition, F>> level_weights<F>(int, const ZParams<F>&);            \
    template F m_pq<F>(int, int, const ZParams<F>&);                                                   \
    template F det_weight<F>(const Partition&, const ZParams<F>&);                                     \
    template double relative_gap<F>(const F&, const F&);                                               \
    template void record_check<F>(VerificationReport&, const F&, const F&, const std::string&, double); \
    template VerificationReport verify_coherence<F>(int, const ZParams<F>&, double);                   \
    template VerificationReport verify_hook_recurrence<F>(int, int, const ZParams<F>&, double);          \
    template bool transpose_symmetry_check<F>(const Partition&, const ZParams<F>&, double);

ZM_INSTANTIATE(Rational)
ZM_INSTANTIATE(cplx)

template double relative_gap<double>(const double&, const double&);
template void record_check<double>(VerificationReport&, const double&, const double&, const std::string&, double);

#undef ZM_INSTANTIATE

}  // namespace zm
