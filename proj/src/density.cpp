#include "zm/density.hpp"

#include "zm/characters.hpp"
#include "zm/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace zm {

namespace {
constexpr double kPi = std::numbers::pi;
template <class F> F from_int(long v) { return FieldTraits<F>::from_int(v); }
template <class F> F from_big(const BigInt& v) { return FieldTraits<F>::from_bigint(v); }
}  // namespace

int MomentSpec::weight() const {
    int w = 0;
    for (int li : l) {
        if (li < 0) throw InvalidInput("moment exponents must be nonnegative");
        w += li + 1;
    }
    return w;
}

std::string MomentSpec::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s + ")";
}

std::string to_string(DensityMethod m) { return m == DensityMethod::lauricella ? "lauricella" : "integral"; }

// ---------------------------------------------------------------------------------------------
// Moments

template <class F>
F sigma1_moment(int l, const ZParams<F>& params) {
    if (l < 0) throw InvalidInput("moment order must be nonnegative");
    const F one = from_int<F>(1);
    F total = from_int<F>(0);
    for (int p = 0; p <= l; ++p) {
        const int q = l - p;
        F term = params.t * rising(F(params.z + one), p) * rising(F(one - params.z), q) *
                 rising(F(params.zp + one), p) * rising(F(one - params.zp), q);
        term /= rising(params.t, l + 1) * from_big<F>(factorial(p) * factorial(q) * (l + 1));
        if (q % 2 == 0) total += term; else total -= term;
    }
    return total;
}

namespace {

/// One term of the Frobenius-coordinate moment formula for the diagram (p | q).
template <class F>
F frobenius_term(const FrobeniusCoords& f, const ZParams<F>& params) {
    const int d = f.rank();
    const F one = from_int<F>(1);
    int size = d;
    for (int i = 0; i < d; ++i) size += f.p[static_cast<std::size_t>(i)] + f.q[static_cast<std::size_t>(i)];
    F val = one / rising(params.t, size);
    for (int i = 0; i < d; ++i) val *= params.t;
    BigInt num = 1, den = 1;
    for (int i = 0; i < d; ++i) {
        const int p = f.p[static_cast<std::size_t>(i)], q = f.q[static_cast<std::size_t>(i)];
        val *= rising(F(params.z + one), p) * rising(F(params.zp + one), p) * rising(F(one - params.z), q) *
               rising(F(one - params.zp), q);
        den *= factorial(p) * factorial(q);
        for (int j = 0; j < d; ++j) den *= f.p[static_cast<std::size_t>(i)] + f.q[static_cast<std::size_t>(j)] + 1;
        for (int j = i + 1; j < d; ++j)
            num *= BigInt(f.p[static_cast<std::size_t>(i)] - f.p[static_cast<std::size_t>(j)]) *
                   (f.q[static_cast<std::size_t>(i)] - f.q[static_cast<std::size_t>(j)]);
    }
    return val * from_big<F>(num) / from_big<F>(den);
}

}  // namespace

template <class F>
F sigma_n_moment(const MomentSpec& spec, const ZParams<F>& params, MomentRoute route) {
    const int n = spec.order();
    if (n < 1) throw InvalidInput("moment spec needs at least one exponent");
    CycleType rho;
    for (int li : spec.l) rho.push_back(li + 1);
    const int size = spec.weight();
    F total = from_int<F>(0);
    for (const Partition& lambda : partitions_of(size)) {
        if (diagonal_length(lambda) > n) continue;
        const BigInt character = chi(lambda, rho);
        if (character == 0) continue;
        if (route == MomentRoute::frobenius_sum) {
            total += from_big<F>(character) * frobenius_term(frobenius(lambda), params);
        } else {
            total += from_big<F>(character) * weight(lambda, params) / from_big<F>(dim(lambda));
        }
    }
    return total;
}

template Rational sigma1_moment<Rational>(int, const ZParams<Rational>&);
template cplx sigma1_moment<cplx>(int, const ZParams<cplx>&);
template Rational sigma_n_moment<Rational>(const MomentSpec&, const ZParams<Rational>&, MomentRoute);
template cplx sigma_n_moment<cplx>(const MomentSpec&, const ZParams<cplx>&, MomentRoute);

// ---------------------------------------------------------------------------------------------
// Lauricella route: rho_1(x) = C y^{c-1} sum_N g_N y^N with y = 1 - x

namespace {

constexpr int kSeriesLength = 65536;
constexpr int kDirectOrders = 150;
constexpr int kCornerWidth = 40;

/// Coefficients of the continued F_B series for one parameter pair.
struct DensitySeries {
    cplx prefactor;                 ///< Gamma(t+1) / (Gamma(z+1) Gamma(z'+1))
    double c = 0.0;                 ///< (1-z)(1-z'), real and positive
    std::vector<cplx> g;
    std::vector<double> suffix_max; ///< max_{M >= N} |g_M|

    /// sum_N g_N y^N and a bound on the omitted tail.
    std::pair<cplx, double> eval(double y) const {
        const int n_total = static_cast<int>(g.size());
        int cut = n_total;
        if (y < 1.0 && y > 0.0) {
            const double need = std::log(1e-20 * (1.0 - y) / std::max(suffix_max[0], 1e-300)) / std::log(y);
            if (need < n_total) cut = std::max(1, static_cast<int>(std::ceil(need)));
        } else if (y == 0.0) {
            cut = 1;
        }
        cplx acc = 0.0;
        for (int k = cut - 1; k >= 0; --k) acc = acc * y + g[static_cast<std::size_t>(k)];
        const double tail = cut < n_total
                                ? suffix_max[static_cast<std::size_t>(cut)] * std::pow(y, cut) / (1.0 - y)
                                : suffix_max[static_cast<std::size_t>(n_total - 1)] * std::pow(y, n_total) / (1.0 - y);
        return {acc, tail};
    }
};

std::vector<cplx> fft_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t keep) {
    std::size_t n = 1;
    while (n < a.size() + b.size()) n <<= 1;
    static std::mutex plan_mutex;
    fftw_complex* fa = fftw_alloc_complex(n);
    fftw_complex* fb = fftw_alloc_complex(n);
    fftw_plan pa, pb, pinv;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        pa = fftw_plan_dft_1d(static_cast<int>(n), fa, fa, FFTW_FORWARD, FFTW_ESTIMATE);
        pb = fftw_plan_dft_1d(static_cast<int>(n), fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
        pinv = fftw_plan_dft_1d(static_cast<int>(n), fa, fa, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const cplx va = i < a.size() ? a[i] : 0.0, vb = i < b.size() ? b[i] : 0.0;
        fa[i][0] = va.real(); fa[i][1] = va.imag();
        fb[i][0] = vb.real(); fb[i][1] = vb.imag();
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx prod = cplx(fa[i][0], fa[i][1]) * cplx(fb[i][0], fb[i][1]);
        fa[i][0] = prod.real(); fa[i][1] = prod.imag();
    }
    fftw_execute(pinv);
    std::vector<cplx> out(keep);
    for (std::size_t i = 0; i < keep; ++i) out[i] = cplx(fa[i][0], fa[i][1]) / static_cast<double>(n);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pinv);
    }
    fftw_free(fa);
    fftw_free(fb);
    return out;
}

/// Builds g_N = Gamma(e+N)/Gamma(c+N) (alpha * beta)_N, where alpha_M = S(M)/Gamma(e+M) collects the
/// first two couples, S(M) = sum_{m1+m2=M} P_1(m1) P_2(m2), P_i(m) = (a_i)_m (a_i+1)_m / m!, and
/// beta_n = (t)_n / n! comes from the continued third couple; e = 2 - z - z'.
std::shared_ptr<const DensitySeries> build_series(const cplx& z, const cplx& zp, double t) {
    const int nmax = kSeriesLength, ns = kDirectOrders, kw = kCornerWidth;
    const cplx e = 2.0 - z - zp;
    const double c = (e.real() + t - 1.0);
    const std::array<cplx, 2> a = {-z, -zp};

    std::array<std::vector<cplx>, 2> P;
    for (std::size_t i = 0; i < 2; ++i) {
        P[i].push_back(1.0);
        for (int m = 0; m < ns + kw; ++m)
            P[i].push_back(P[i].back() * (a[i] + double(m)) * (a[i] + 1.0 + double(m)) / double(m + 1));
    }
    std::vector<cplx> S(static_cast<std::size_t>(ns));
    for (int M = 0; M < ns; ++M) {
        cplx s = 0.0;
        for (int m = 0; m <= M; ++m) s += P[0][static_cast<std::size_t>(m)] * P[1][static_cast<std::size_t>(M - m)];
        S[static_cast<std::size_t>(M)] = s;
    }
    std::vector<cplx> alpha(static_cast<std::size_t>(nmax));
    for (int M = 0; M < ns; ++M) alpha[static_cast<std::size_t>(M)] = S[static_cast<std::size_t>(M)] * rgamma_c(e + double(M));

    // for large M only the corners m1 <= K or m2 <= K of S(M) matter; Q_i(M) = P_i(M)/Gamma(e+M)
    std::array<std::vector<cplx>, 2> Q;
    for (std::size_t i = 0; i < 2; ++i) {
        Q[i].assign(static_cast<std::size_t>(nmax), 0.0);
        for (int M = 0; M < ns; ++M) Q[i][static_cast<std::size_t>(M)] = P[i][static_cast<std::size_t>(M)] * rgamma_c(e + double(M));
        for (int M = ns - 1; M + 1 < nmax; ++M)
            Q[i][static_cast<std::size_t>(M + 1)] = Q[i][static_cast<std::size_t>(M)] * (a[i] + double(M)) *
                                                    (a[i] + 1.0 + double(M)) / (double(M + 1) * (e + double(M)));
    }
    for (int M = ns; M < nmax; ++M) {
        cplx total = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            const std::size_t other = 1 - i;
            cplx den = 1.0;
            for (int s = 0; s <= kw; ++s) {
                if (s > 0) den *= e + double(M - s);
                total += Q[i][static_cast<std::size_t>(M - s)] / den * P[other][static_cast<std::size_t>(s)];
            }
        }
        alpha[static_cast<std::size_t>(M)] = total;
    }
    std::vector<cplx> beta(static_cast<std::size_t>(nmax));
    beta[0] = 1.0;
    for (int n = 0; n + 1 < nmax; ++n) beta[static_cast<std::size_t>(n + 1)] = beta[static_cast<std::size_t>(n)] * (t + n) / double(n + 1);

    const std::vector<cplx> conv = fft_convolve(alpha, beta, static_cast<std::size_t>(nmax));
    auto series = std::make_shared<DensitySeries>();
    series->c = c;
    series->g.resize(static_cast<std::size_t>(nmax));
    cplx ratio = std::exp(lgamma_c(e + double(ns)) - lgamma_c(cplx(c + ns, 0.0)));
    for (int N = ns; N < nmax; ++N) {
        series->g[static_cast<std::size_t>(N)] = ratio * conv[static_cast<std::size_t>(N)];
        ratio *= (e + double(N)) / (c + N);
    }
    // low orders directly, which also covers e + M at a pole of Gamma
    for (int N = 0; N < ns; ++N) {
        cplx acc = 0.0;
        for (int M = 0; M <= N; ++M)
            acc += S[static_cast<std::size_t>(M)] * pochhammer(e + double(M), N - M) * beta[static_cast<std::size_t>(N - M)];
        series->g[static_cast<std::size_t>(N)] = acc * rgamma_c(cplx(c + N, 0.0));
    }
    series->suffix_max.resize(static_cast<std::size_t>(nmax));
    double run = 0.0;
    for (int N = nmax - 1; N >= 0; --N) {
        run = std::max(run, std::abs(series->g[static_cast<std::size_t>(N)]));
        series->suffix_max[static_cast<std::size_t>(N)] = run;
    }
    series->prefactor = gamma_c(t + 1.0) * rgamma_c(z + 1.0) * rgamma_c(zp + 1.0);
    return series;
}

std::shared_ptr<const DensitySeries> series_for(const cplx& z, const cplx& zp, double t) {
    static std::mutex mutex;
    static std::map<std::array<double, 4>, std::shared_ptr<const DensitySeries>> cache;
    const std::array<double, 4> key = {z.real(), z.imag(), zp.real(), zp.imag()};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = build_series(z, zp, t);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, built).first->second;
}

/// Parameters that govern x > 0: (z, z') itself, or the reflection for x < 0.
ZParams<cplx> side_params(double x, const ZParams<cplx>& params) { return x > 0 ? params : reflect(params); }

void check_x_range(double x) {
    const double ax = std::fabs(x);
    if (!(ax >= kRhoXMin && ax <= kRhoXMax))
        throw DomainError("rho1 is evaluated only for 1e-3 <= |x| <= 1 - 1e-9");
}

/// rho_1 at 0 < x < 1 for the given side parameters, from the continued series.
std::pair<cplx, double> rho1_series_positive(double x, const ZParams<cplx>& p) {
    const auto series = series_for(p.z, p.zp, p.t.real());
    const double y = 1.0 - x;
    const auto [sum, tail] = series->eval(y);
    const double scale = std::abs(series->prefactor) * std::pow(y, series->c - 1.0);
    return {series->prefactor * std::pow(y, series->c - 1.0) * sum, scale * tail};
}

}  // namespace

DensityPoint rho1_fb_continued(double x, const ZParams<cplx>& params) {
    if (!(std::fabs(x) > 0.0 && std::fabs(x) < 1.0)) throw DomainError("continued series needs 0 < |x| < 1");
    const auto [value, tail] = rho1_series_positive(std::fabs(x), side_params(x, params));
    return {x, value.real(), std::fabs(value.imag()), tail, DensityMethod::lauricella};
}

DensityPoint rho1_fb_direct(double x, const ZParams<cplx>& params, double tol) {
    const double ax = std::fabs(x);
    if (!(ax > 0.5 && ax < 1.0)) throw DomainError("direct F_B evaluation needs 1/2 < |x| < 1");
    const ZParams<cplx> p = side_params(x, params);
    const cplx t = p.t, one = 1.0;
    const std::array<cplx, 3> a = {-p.z, -p.zp, t - one};
    const std::array<cplx, 3> b = {one - p.z, one - p.zp, t};
    const cplx c = (one - p.z) * (one - p.zp);
    const double y = 1.0 - ax;
    const SeriesResult fb = lauricella_fb3(a, b, c, {y, y, 1.0 - 1.0 / ax}, tol);
    const cplx pref = gamma_c(t + one) * rgamma_c(p.z + one) * rgamma_c(p.zp + one) *
                      std::pow(y, c.real() - 1.0) * rgamma_c(c) * std::pow(ax, -t.real());
    const cplx value = pref * fb.value;
    return {x, value.real(), std::fabs(value.imag()), std::abs(pref) * fb.tail_bound, DensityMethod::lauricella};
}

cplx sigma1_density(double x, const ZParams<cplx>& params) {
    const double ax = std::fabs(x);
    if (!(ax > 0.0 && ax <= kRhoXMax)) throw DomainError("sigma1_density needs 0 < |x| <= 1 - 1e-9");
    return ax * rho1_series_positive(ax, side_params(x, params)).first;
}

double sigma1_at_zero(const ZParams<cplx>& params) {
    const cplx d = params.z - params.zp;
    const cplx sinc_inv = std::abs(d) < 1e-12 ? cplx(1.0) : kPi * d / std::sin(kPi * d);
    return (std::sin(kPi * params.z) * std::sin(kPi * params.zp) / (kPi * kPi) * sinc_inv).real();
}

// ---------------------------------------------------------------------------------------------
// Integral route over the triangle u, v >= 0, u + v <= 1, in polar-type coordinates u = s r, v = s (1 - r):
// <A, Psi> = int_0^1 phi_{t-2}(1-s) s^{e-1} J(s) ds,  J(s) = int_0^1 phi_{-z}(r) phi_{-z'}(1-r) Psi dr.
// Distributions phi_a with Re a in (-2, -1] are applied through one integration by parts on the half
// interval that contains their singular endpoint.

namespace {

using CFun = std::function<cplx(double)>;

/// int over [lo, hi] of d(x)^b F(x) with d = x - lo (at_lo) or hi - x, Re b > -1 and F smooth.
QuadResultC power_weighted(const cplx& b, bool at_lo, double lo, double hi, const CFun& F, double tol) {
    if (b.imag() == 0.0) return quad_endpoint_c(F, lo, hi, at_lo ? b.real() : 0.0, at_lo ? 0.0 : b.real(), tol);
    return quad_complex_power(F, lo, hi, at_lo ? b : cplx(0.0), at_lo ? cplx(0.0) : b, tol);
}

/// int over [lo, hi] of phi_a(x - lo) W(x) (at_lo) or phi_a(hi - x) W(x), with W' available for
/// the regularised case.
QuadResultC phi_weighted(const cplx& a, bool at_lo, double lo, double hi, const CFun& W, const CFun& Wp, double tol) {
    const double re = a.real();
    if (re > -1.0) {
        const cplx ra = rgamma_c(a + 1.0);
        CFun f = [&](double x) { return ra * W(x); };
        return power_weighted(a, at_lo, lo, hi, f, tol);
    }
    if (re > -2.0) {
        const cplx a1 = a + 1.0;
        const cplx ra1 = rgamma_c(a1 + 1.0);
        CFun f = [&](double x) { return ra1 * Wp(x); };
        const QuadResultC body = power_weighted(a1, at_lo, lo, hi, f, tol);
        const double far = at_lo ? hi : lo;
        const cplx boundary = phi_a(a1, hi - lo) * W(far);
        // at_lo: [phi_{a+1} W] - int phi_{a+1} W';  at_hi: [phi_{a+1} W] + int phi_{a+1} W'
        return {at_lo ? boundary - body.value : boundary + body.value, body.error};
    }
    throw DomainError("integral route needs every exponent to have real part > -2");
}

struct TriangleIntegrand {
    cplx z, zp;
    double t, y;

    /// log Psi and its partial derivatives in r and s.
    struct Local {
        cplx log_psi, Lr, Ls, Lrs;
    };
    Local at(double r, double s) const {
        const double A = 1.0 - y * s * r, B = 1.0 - y * s * (1.0 - r), D = 1.0 - y * s;
        Local l;
        l.log_psi = z * std::log(A) + zp * std::log(B) - t * std::log(D);
        l.Lr = -z * y * s / A + zp * y * s / B;
        l.Ls = -z * y * r / A - zp * y * (1.0 - r) / B + t * y / D;
        l.Lrs = -z * y / (A * A) + zp * y / (B * B);
        return l;
    }
};

enum class InnerKind { value, s_derivative };

/// J(s) (value) or dJ/ds (s_derivative).
QuadResultC inner_integral(const TriangleIntegrand& T, double s, InnerKind kind, double tol) {
    const cplx a1 = -T.z, a2 = -T.zp;
    // G(r) and dG/dr for the chosen kind
    auto G = [&](double r) -> std::pair<cplx, cplx> {
        const auto l = T.at(r, s);
        const cplx psi = std::exp(l.log_psi);
        switch (kind) {
            case InnerKind::value: return {psi, psi * l.Lr};
            case InnerKind::s_derivative: return {psi * l.Ls, psi * (l.Lr * l.Ls + l.Lrs)};
        }
        return {0.0, 0.0};
    };
    // left half: weight phi_{a1}(r), smooth factor W = phi_{a2}(1-r) G
    CFun WL = [&](double r) { return phi_a(a2, 1.0 - r) * G(r).first; };
    CFun WLp = [&](double r) {
        const auto [g, gr] = G(r);
        return phi_a(a2, 1.0 - r) * (gr - a2 / (1.0 - r) * g);
    };
    // right half: weight phi_{a2}(1-r), smooth factor V = phi_{a1}(r) G
    CFun WR = [&](double r) { return phi_a(a1, r) * G(r).first; };
    CFun WRp = [&](double r) {
        const auto [g, gr] = G(r);
        return phi_a(a1, r) * (gr + a1 / r * g);
    };
    const QuadResultC left = phi_weighted(a1, true, 0.0, 0.5, WL, WLp, tol);
    const QuadResultC right = phi_weighted(a2, false, 0.5, 1.0, WR, WRp, tol);
    return {left.value + right.value, left.error + right.error};
}

/// Psi - 1 through expm1 when the exponent is real.
cplx psi_minus_one(const cplx& log_psi) {
    if (log_psi.imag() == 0.0) return std::expm1(log_psi.real());
    return std::exp(log_psi) - 1.0;
}

/// (J(s) - J(0))/s, using J(0) = int phi_{-z}(r) phi_{-z'}(1-r) dr so that Psi is replaced by Psi - 1.
QuadResultC inner_value_over_s(const TriangleIntegrand& T, double s, double tol) {
    const cplx a1 = -T.z, a2 = -T.zp;
    auto G = [&](double r) -> std::pair<cplx, cplx> {
        const auto l = T.at(r, s);
        return {psi_minus_one(l.log_psi) / s, std::exp(l.log_psi) * l.Lr / s};
    };
    CFun WL = [&](double r) { return phi_a(a2, 1.0 - r) * G(r).first; };
    CFun WLp = [&](double r) {
        const auto [g, gr] = G(r);
        return phi_a(a2, 1.0 - r) * (gr - a2 / (1.0 - r) * g);
    };
    CFun WR = [&](double r) { return phi_a(a1, r) * G(r).first; };
    CFun WRp = [&](double r) {
        const auto [g, gr] = G(r);
        return phi_a(a1, r) * (gr + a1 / r * g);
    };
    const QuadResultC left = phi_weighted(a1, true, 0.0, 0.5, WL, WLp, tol);
    const QuadResultC right = phi_weighted(a2, false, 0.5, 1.0, WR, WRp, tol);
    return {left.value + right.value, left.error + right.error};
}

/// <A, Psi> for 0 < x < 1 and side parameters p.
QuadResultC triangle_pairing(double x, const ZParams<cplx>& p, double tol) {
    const TriangleIntegrand T{p.z, p.zp, p.t.real(), 1.0 - x};
    const double e = (2.0 - p.z - p.zp).real();
    const double t = p.t.real();
    const double inner_tol = tol * 1e-2;
    double err = 0.0;

    // s in [0, 1/2]: with K(s) = phi_{t-2}(1-s) J(s) and K(0) = J(0)/Gamma(t-1), J(0) = 1/Gamma(e),
    // int s^{e-1} K = int s^e (K(s) - K(0))/s + K(0) (1/2)^e / e, valid for e > -1 (including e = 0)
    if (e <= -1.0) throw DomainError("integral route needs 2 - z - z' > -1");
    const double j0 = rgamma_c(e).real();
    const double rg = rgamma_c(t - 1.0).real();
    CFun f = [&](double s) {
        const auto j1 = inner_value_over_s(T, s, inner_tol);
        err += j1.error;
        const double drift = std::expm1((t - 2.0) * std::log1p(-s)) / s;
        return phi_a(t - 2.0, 1.0 - s) * j1.value + j0 * rg * drift;
    };
    QuadResultC left = quad_endpoint_c(f, 0.0, 0.5, e, 0.0, tol);
    left.value += rg * rgamma_c(e + 1.0).real() * std::pow(0.5, e);

    // s in [1/2, 1]: weight phi_{t-2}(1-s), smooth factor H(s) = s^{e-1} J(s)
    CFun H = [&](double s) { return std::pow(s, e - 1.0) * inner_integral(T, s, InnerKind::value, inner_tol).value; };
    CFun Hp = [&](double s) {
        const cplx j = inner_integral(T, s, InnerKind::value, inner_tol).value;
        const cplx js = inner_integral(T, s, InnerKind::s_derivative, inner_tol).value;
        return (e - 1.0) * std::pow(s, e - 2.0) * j + std::pow(s, e - 1.0) * js;
    };
    const QuadResultC right = phi_weighted(cplx(t - 2.0), false, 0.5, 1.0, H, Hp, tol);
    return {left.value + right.value, left.error + right.error + err * 1e-3};
}

}  // namespace

DensityPoint rho1(double x, const ZParams<cplx>& params, DensityMethod method, double tol) {
    check_x_range(x);
    const double ax = std::fabs(x);
    if (method == DensityMethod::lauricella) {
        if (ax > 0.75) return rho1_fb_direct(x, params, std::min(tol, 1e-14));
        return rho1_fb_continued(x, params);
    }
    const ZParams<cplx> p = side_params(x, params);
    const cplx one = 1.0;
    const double y = 1.0 - ax;
    const QuadResultC pairing = triangle_pairing(ax, p, tol);
    const cplx pref = gamma_c(p.t + one) * rgamma_c(p.z + one) * rgamma_c(p.zp + one) *
                      std::pow(y, (p.t - p.z - p.zp).real());
    const cplx value = pref * pairing.value;
    return {x, value.real(), std::fabs(value.imag()), std::abs(pref) * pairing.error, DensityMethod::integral};
}

// ---------------------------------------------------------------------------------------------
// Integrals against sigma_1

QuadResultC integrate_sigma1(const std::function<cplx(double)>& g, const ZParams<cplx>& params, double x_min,
                             double tol) {
    if (!(x_min > 0.0 && x_min < 0.5)) throw InvalidInput("x_min must lie in (0, 1/2)");
    QuadResultC total;
    for (int sign : {1, -1}) {
        const ZParams<cplx> p = sign > 0 ? params : reflect(params);
        const auto series = series_for(p.z, p.zp, p.t.real());
        // sigma_1(sign*u) = u C (1-u)^{c-1} G(1-u); the (1-u)^{c-1} factor is handled by quad_endpoint
        CFun f = [&](double u) {
            return g(sign * u) * u * series->prefactor * series->eval(1.0 - u).first;
        };
        const QuadResultC part = quad_endpoint_c(f, x_min, 1.0, 0.0, series->c - 1.0, tol);
        total.value += part.value;
        total.error += part.error;
        const cplx s_edge = x_min * series->prefactor * std::pow(1.0 - x_min, series->c - 1.0) *
                            series->eval(1.0 - x_min).first;
        total.value += 0.5 * x_min * (g(0.0) * sigma1_at_zero(params) + g(sign * x_min) * s_edge);
    }
    return total;
}

LaplaceCheck laplace_identity_residual(const cplx& zeta, const ZParams<cplx>& params, double tol) {
    if (std::abs(zeta) > 5.0) throw DomainError("Laplace identity check needs |zeta| <= 5");
    LaplaceCheck out;
    const double t = params.t.real();
    out.lhs = integrate_sigma1([&](double x) { return kummer_phi(cplx(t), zeta * x).value; }, params, kRhoXMin, tol).value;
    out.rhs = kummer_phi(params.z, zeta).value * kummer_phi(-params.zp, -zeta).value;
    out.rhs_swapped = kummer_phi(params.zp, zeta).value * kummer_phi(-params.z, -zeta).value;
    out.residual = std::abs(out.lhs - out.rhs);
    out.factorization_gap = std::abs(out.rhs - out.rhs_swapped);
    return out;
}

// ---------------------------------------------------------------------------------------------
// t = 1 convolution

cplx t_one_convolution_value(double x, const cplx& z, double tol) {
    if (!(std::fabs(x) < 1.0)) throw DomainError("convolution needs |x| < 1");
    const cplx zp = std::conj(z);
    // sigma_1(x) = int phi_z(u) phi_{-z}(1-u) phi_{-z'}(u-x) phi_{z'}(1-u+x) du over max(0,x) <= u <= min(1,1+x)
    const double lo = std::max(0.0, x), hi = std::min(1.0, 1.0 + x);
    const cplx b_lo = x > 0 ? -zp : z;
    const cplx b_hi = x > 0 ? -z : zp;
    const cplx norm = rgamma_c(z + 1.0) * rgamma_c(1.0 - z) * rgamma_c(1.0 - zp) * rgamma_c(zp + 1.0);
    // remaining factors are smooth on [lo, hi]: for x > 0 they are u^z (1-u+x)^{z'}, for x < 0 (1-u)^{-z} (u-x)^{-z'}
    CFun f = [&](double u) {
        if (x > 0) return norm * std::exp(z * std::log(u) + zp * std::log(1.0 - u + x));
        return norm * std::exp(-z * std::log(1.0 - u) - zp * std::log(u - x));
    };
    return quad_complex_power(f, lo, hi, b_lo, b_hi, tol).value;
}

ConvolutionCheck t_equals_one_convolution(double x, const cplx& z, double tol) {
    if (std::fabs(std::abs(z) - 1.0) > 1e-12) throw DomainError("t = 1 convolution needs |z| = 1");
    if (std::fabs(z.imag()) < 1e-12) throw DomainError("t = 1 convolution needs z not real");
    check_x_range(x);
    const ZParams<cplx> params = make_params(z, std::conj(z));
    ConvolutionCheck out;
    out.convolution = t_one_convolution_value(x, z, tol).real();
    out.series = std::fabs(x) * rho1(x, params, DensityMethod::lauricella).value;
    out.gap = std::fabs(out.convolution - out.series);
    return out;
}

// ---------------------------------------------------------------------------------------------

double correlation_from_controlling(const std::vector<double>& x, double sigma_value) {
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) throw DiagonalPoint("correlation functions are defined off x_i = 0");
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) throw DiagonalPoint("correlation functions are defined off the diagonals");
        prod *= std::fabs(x[i]);
    }
    return sigma_value / prod;
}

cplx pseudoconvolution_moment(const std::vector<std::pair<cplx, cplx>>& factors, int n) {
    cplx prod = 1.0;
    for (const auto& [a, b] : factors) prod *= phi_ab_moment(a, b, n, 0);
    return prod;
}

}  // namespace zm
