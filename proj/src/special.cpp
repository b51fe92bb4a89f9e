#include "zm/special.hpp"

#include "zm/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace zm {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(const cplx& z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

/// Lanczos sum valid for Re z >= 1/2, Stirling series for large |z|.
cplx lgamma_right(const cplx& z) {
    if (std::abs(z) > 20.0) {
        const cplx w = 1.0 / z, w2 = w * w;
        const cplx corr = w * (1.0 / 12 - w2 * (1.0 / 360 - w2 * (1.0 / 1260 - w2 * (1.0 / 1680 - w2 / 1188.0))));
        return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
    }
    const cplx w = z - 1.0;
    cplx sum = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (w + static_cast<double>(k));
    const cplx tt = w + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(tt) - tt + std::log(sum);
}

}  // namespace

cplx lgamma_c(const cplx& z) {
    if (is_nonpositive_integer(z)) throw PoleError("log Gamma has a pole at " + format_complex(z));
    if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_right(1.0 - z);
    return lgamma_right(z);
}

cplx rgamma_c(const cplx& z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5) return std::sin(kPi * z) / kPi * std::exp(lgamma_right(1.0 - z));
    return std::exp(-lgamma_right(z));
}

cplx gamma_c(const cplx& z) {
    if (is_nonpositive_integer(z)) throw PoleError("Gamma has a pole at " + format_complex(z));
    return 1.0 / rgamma_c(z);
}

cplx pochhammer(const cplx& a, int n) {
    if (n < 0) throw InvalidInput("pochhammer needs n >= 0");
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
    return r;
}

SeriesResult kummer_phi(const cplx& a, const cplx& zeta, double tol, int term_cap) {
    if (!(tol > 0)) throw InvalidInput("kummer_phi needs tol > 0");
    using lcplx = std::complex<long double>;
    const lcplx a1 = lcplx(a) + 1.0L, z(zeta);
    const double abs_a1 = std::abs(a + 1.0), abs_zeta = std::abs(zeta);
    // extended precision absorbs the cancellation of alternating terms for negative real zeta
    lcplx term = 1.0L, sum = 1.0L;
    for (int k = 0; k < term_cap; ++k) {
        // |(a+1+j) zeta / ((j+2)(j+1))| <= (|a+1|+j)|zeta|/((j+1)(j+2)), which decreases in j
        const double kk = static_cast<double>(k);
        const double ratio_bound = (abs_a1 + kk) * abs_zeta / ((kk + 2.0) * (kk + 1.0));
        if (ratio_bound < 1.0) {
            const double tail = static_cast<double>(std::abs(term)) * ratio_bound / (1.0 - ratio_bound);
            if (tail <= tol) return {cplx(sum), k + 1, tail};
        }
        const long double kl = k;
        term *= (a1 + kl) * z / ((kl + 2.0L) * (kl + 1.0L));
        sum += term;
    }
    throw NonConvergence("kummer_phi did not converge within " + std::to_string(term_cap) + " terms");
}

double kummer_transform_check(const cplx& a, const cplx& zeta) {
    const cplx lhs = kummer_phi(a, zeta).value;
    const cplx rhs = std::exp(zeta) * kummer_phi(-a, -zeta).value;
    return std::abs(lhs - rhs);
}

SeriesResult lauricella_fb3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b, const cplx& c,
                            const std::array<cplx, 3>& y, double tol, int max_order) {
    double ymax = 0.0;
    for (const cplx& yi : y) {
        if (std::abs(yi) >= 1.0) throw DomainError("F_B series needs |y_i| < 1");
        ymax = std::max(ymax, std::abs(yi));
    }
    if (is_nonpositive_integer(c)) throw PoleError("F_B denominator parameter c is a nonpositive integer");
    if (!(tol > 0)) throw InvalidInput("lauricella_fb3 needs tol > 0");

    // univariate factors A_i(m) = (a_i)_m (b_i)_m y_i^m / m!; the shell of total degree M is
    // [(A_1 * A_2) * A_3]_M / (c)_M, so both convolutions grow by one entry per shell
    std::array<std::vector<cplx>, 3> factor;
    for (auto& f : factor) f.push_back(1.0);
    std::vector<cplx> conv12{1.0};
    std::vector<double> conv12_abs{1.0};
    cplx sum = 0.0, inv_rising_c = 1.0;
    double prev_abs_shell = 0.0;
    for (int M = 0; M <= max_order; ++M) {
        if (M > 0) {
            const double m = static_cast<double>(M - 1);
            for (std::size_t i = 0; i < 3; ++i)
                factor[i].push_back(factor[i].back() * (a[i] + m) * (b[i] + m) * y[i] / (m + 1.0));
            cplx c12 = 0.0;
            double c12_abs = 0.0;
            for (int k = 0; k <= M; ++k) {
                const cplx term = factor[0][static_cast<std::size_t>(k)] * factor[1][static_cast<std::size_t>(M - k)];
                c12 += term;
                c12_abs += std::abs(term);
            }
            conv12.push_back(c12);
            conv12_abs.push_back(c12_abs);
            inv_rising_c /= (c + m);
        }
        cplx shell = 0.0;
        double abs_shell = 0.0;
        for (int k = 0; k <= M; ++k) {
            shell += conv12[static_cast<std::size_t>(k)] * factor[2][static_cast<std::size_t>(M - k)];
            abs_shell += conv12_abs[static_cast<std::size_t>(k)] * std::abs(factor[2][static_cast<std::size_t>(M - k)]);
        }
        shell *= inv_rising_c;
        abs_shell *= std::abs(inv_rising_c);
        sum += shell;
        // geometric majorant: successive shells shrink at least by r = max(observed shell ratio, max |y_i|)
        if (abs_shell == 0.0 && prev_abs_shell == 0.0 && M > 0) return {sum, M + 1, 0.0};
        if (M >= 2 && prev_abs_shell > 0.0) {
            const double r = std::max(abs_shell / prev_abs_shell, ymax);
            if (r < 1.0) {
                const double tail = abs_shell * r / (1.0 - r);
                if (tail <= tol) return {sum, M + 1, tail};
            }
        }
        prev_abs_shell = abs_shell;
    }
    throw NonConvergence("F_B series did not reach tol within order " + std::to_string(max_order));
}

cplx phi_ab_moment(const cplx& a, const cplx& b, int p, int q) {
    if (p < 0 || q < 0) throw InvalidInput("moment orders must be nonnegative");
    const cplx s = a + b + static_cast<double>(p + q + 2);
    if (is_nonpositive_integer(s)) throw PoleError("a+b+p+q+2 is a nonpositive integer");
    return pochhammer(a + 1.0, p) * pochhammer(b + 1.0, q) * rgamma_c(s);
}

cplx phi_a(const cplx& a, double u) {
    if (u <= 0.0) return 0.0;
    return std::exp(a * std::log(u)) * rgamma_c(a + 1.0);
}

namespace {

template <class T>
QuadResultT<T> gk(const std::function<T(double)>& g, double lo, double hi, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const T v = gauss_kronrod<double, 15>::integrate(g, lo, hi, 18, tol, &err);
    return {v, err};
}

/// Integer power m for the substitution x - lo = u^m: the weight becomes m u^{m(1+alpha)-1}, which is a
/// polynomial when m(1+alpha) is an integer and otherwise at least three times differentiable.
int substitution_power(double alpha) {
    if (alpha >= 0.0 && alpha == std::floor(alpha)) return 1;
    for (int m = 1; m <= 16; ++m) {
        const double g = m * (1.0 + alpha);
        if (std::fabs(g - std::round(g)) < 1e-12 && std::round(g) >= 1.0) return m;
    }
    return std::min(64, static_cast<int>(std::ceil(4.0 / (1.0 + alpha))));
}

/// int_lo^mid f(x) (x-lo)^alpha (hi-x)^beta dx with the singular endpoint at lo.
template <class T>
QuadResultT<T> endpoint_piece(const std::function<T(double)>& f, double lo, double hi, double mid, double alpha,
                              double beta, bool mirrored, double tol) {
    const int m = substitution_power(alpha);
    const double gamma = m * (1.0 + alpha) - 1.0;
    // mirrored: the singular endpoint is hi and the regular one lo, with roles of alpha and beta swapped
    std::function<T(double)> g = [&](double u) {
        const double d = std::pow(u, m);
        const double x = mirrored ? hi - d : lo + d;
        const double other = mirrored ? x - lo : hi - x;
        return T(m * std::pow(u, gamma) * std::pow(other, beta)) * f(x);
    };
    const double span = mirrored ? hi - mid : mid - lo;
    return gk(g, 0.0, std::pow(span, 1.0 / m), tol);
}

template <class T>
QuadResultT<T> quad_impl(const std::function<T(double)>& f, double lo, double hi, double alpha, double beta,
                         double tol) {
    if (alpha <= -1.0 || beta <= -1.0) throw NonIntegrable("endpoint power <= -1 is not integrable");
    if (!(hi > lo)) throw InvalidInput("quad_endpoint needs lo < hi");
    const double mid = 0.5 * (lo + hi);
    const QuadResultT<T> left = endpoint_piece(f, lo, hi, mid, alpha, beta, false, tol);
    const QuadResultT<T> right = endpoint_piece(f, lo, hi, mid, beta, alpha, true, tol);
    return {left.value + right.value, left.error + right.error};
}

}  // namespace

QuadResult quad_endpoint(const std::function<double(double)>& f, double lo, double hi, double alpha, double beta,
                         double tol) {
    return quad_impl<double>(f, lo, hi, alpha, beta, tol);
}

QuadResultC quad_complex_power(const std::function<cplx(double)>& F, double lo, double hi, const cplx& b_lo,
                               const cplx& b_hi, double tol) {
    if (b_lo.real() <= -1.0 || b_hi.real() <= -1.0) throw NonIntegrable("endpoint power with real part <= -1");
    if (!(hi > lo)) throw InvalidInput("quad_complex_power needs lo < hi");
    const double h = 0.5 * (hi - lo);
    auto cpow = [](double base, const cplx& p) { return std::exp(p * std::log(base)); };
    QuadResultC total;
    for (bool at_lo : {true, false}) {
        const cplx b = at_lo ? b_lo : b_hi, other = at_lo ? b_hi : b_lo;
        std::function<cplx(double)> g = [&](double w) {
            const double d = h * std::exp(-w);
            const double x = at_lo ? lo + d : hi - d;
            return std::exp(-w * (1.0 + b)) * cpow(hi - lo - d, other) * F(x);
        };
        const QuadResultC part = gk(g, 0.0, 45.0 / (1.0 + b.real()), tol);
        const cplx scale = cpow(h, 1.0 + b);
        total.value += scale * part.value;
        total.error += std::abs(scale) * part.error;
    }
    return total;
}

QuadResultC quad_endpoint_c(const std::function<cplx(double)>& f, double lo, double hi, double alpha, double beta,
                            double tol) {
    return quad_impl<cplx>(f, lo, hi, alpha, beta, tol);
}

}  // namespace zm
