#pragma once

#include "zm/special.hpp"
#include "zm/zmeasure.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace zm {

/// Exponents l_1..l_n of a mixed moment of the n-th controlling measure.
struct MomentSpec {
    std::vector<int> l;
    int order() const { return static_cast<int>(l.size()); }
    /// |l| = sum (l_i + 1), the size of the diagrams that contribute.
    int weight() const;
    std::string to_string() const;
};

enum class MomentRoute { frobenius_sum, character_sum };

/// Moment int x^l sigma_1(dx) as the finite hook sum over p + q = l.
template <class F> F sigma1_moment(int l, const ZParams<F>& params);
/// Mixed moment of sigma_n, by the Frobenius-coordinate formula or by characters and weights.
template <class F> F sigma_n_moment(const MomentSpec& spec, const ZParams<F>& params, MomentRoute route);

enum class DensityMethod { lauricella, integral };
std::string to_string(DensityMethod m);

/// A value of rho_1 together with its accuracy diagnostics.
struct DensityPoint {
    double x = 0.0;
    double value = 0.0;
    double imag_residue = 0.0;   ///< |Im| of the complex evaluation (nonzero only from rounding)
    double tol_achieved = 0.0;   ///< series tail bound or quadrature error estimate
    DensityMethod method = DensityMethod::lauricella;
};

inline constexpr double kRhoXMin = 1e-3;
inline constexpr double kRhoXMax = 1.0 - 1e-9;

/// The density function rho_1 on 1e-3 <= |x| <= 1 - 1e-9; throws DomainError elsewhere.
/// Negative x is evaluated at |x| with the reflected parameters (-z, -z').
DensityPoint rho1(double x, const ZParams<cplx>& params, DensityMethod method, double tol = 1e-10);

/// Lauricella route evaluated by the triple F_B series in (1-x, 1-x, 1-1/x); needs 1/2 < x < 1.
DensityPoint rho1_fb_direct(double x, const ZParams<cplx>& params, double tol = 1e-14);
/// Lauricella route with the third variable continued, as a power series in 1-x; needs 0 < x < 1.
DensityPoint rho1_fb_continued(double x, const ZParams<cplx>& params);

/// sigma_1(x) = |x| rho_1(x) by the Lauricella route, for 0 < |x| <= 1 - 1e-9 (no lower clamp).
cplx sigma1_density(double x, const ZParams<cplx>& params);
/// Limit of sigma_1(x) as x -> 0, sin(pi z) sin(pi z') / pi^2 * (pi d / sin(pi d)) with d = z - z'.
double sigma1_at_zero(const ZParams<cplx>& params);

/// int_{-1}^{1} g(x) sigma_1(x) dx: endpoint-weighted quadrature on x_min <= |x| <= 1 plus a
/// trapezoid bridge across [-x_min, x_min] through sigma1_at_zero.
QuadResultC integrate_sigma1(const std::function<cplx(double)>& g, const ZParams<cplx>& params,
                             double x_min = kRhoXMin, double tol = 1e-11);

/// Laplace identity int Phi(t+1; zeta x) sigma_1(dx) = Phi(z+1; zeta) Phi(1-z'; -zeta).
struct LaplaceCheck {
    cplx lhs;
    cplx rhs;
    cplx rhs_swapped;          ///< Phi(z'+1; zeta) Phi(1-z; -zeta)
    double residual = 0.0;     ///< |lhs - rhs|
    double factorization_gap = 0.0;
};
LaplaceCheck laplace_identity_residual(const cplx& zeta, const ZParams<cplx>& params, double tol = 1e-11);

/// At t = 1: sigma_1 = phi_{z,-z} * phi^{(-)}_{-z',z'} evaluated by direct quadrature.
struct ConvolutionCheck {
    double convolution = 0.0;
    double series = 0.0;       ///< |x| rho_1(x) from the Lauricella route
    double gap = 0.0;
};
/// Needs |z| = 1 (so t = 1), z not real, and 1e-3 <= |x| <= 1 - 1e-9.
ConvolutionCheck t_equals_one_convolution(double x, const cplx& z, double tol = 1e-10);
/// The convolution integral alone, for any x in (-1, 1).
cplx t_one_convolution_value(double x, const cplx& z, double tol = 1e-10);

/// rho_n = sigma_n / |x_1 ... x_n| off the diagonals; throws DiagonalPoint on a zero or repeated coordinate.
double correlation_from_controlling(const std::vector<double>& x, double sigma_value);

/// n-th moment of a pseudoconvolution of phi_{a b} factors: the product of the factors' n-th moments.
cplx pseudoconvolution_moment(const std::vector<std::pair<cplx, cplx>>& factors, int n);

}  // namespace zm
