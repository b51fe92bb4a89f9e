#pragma once

#include "zm/scalar.hpp"

#include <array>
#include <functional>

namespace zm {

/// A summed series together with the number of terms and a bound on the omitted tail.
struct SeriesResult {
    cplx value;
    int terms_used = 0;
    double tail_bound = 0.0;
};

/// Result of a quadrature with its estimated absolute error.
template <class T>
struct QuadResultT {
    T value{};
    double error = 0.0;
};
using QuadResult = QuadResultT<double>;
using QuadResultC = QuadResultT<cplx>;

/// log Gamma(z) (Lanczos, g = 7); the branch of the imaginary part is unspecified.
cplx lgamma_c(const cplx& z);
/// 1/Gamma(z), entire; exactly zero at the poles 0, -1, -2, ...
cplx rgamma_c(const cplx& z);
/// Gamma(z); throws PoleError at nonpositive integers.
cplx gamma_c(const cplx& z);

/// Pochhammer symbol (a)_n as an explicit product.
cplx pochhammer(const cplx& a, int n);

/// Phi(a+1; zeta) = 1F1(a+1; 2; zeta), summed until the ratio-test tail majorant is below tol.
SeriesResult kummer_phi(const cplx& a, const cplx& zeta, double tol = 1e-17, int term_cap = 10000);

/// |Phi(a+1; zeta) - e^zeta Phi(1-a; -zeta)|.
double kummer_transform_check(const cplx& a, const cplx& zeta);

/// Lauricella F_B in three variables. max_order caps the total degree m1+m2+m3 of the summed shells.
/// Throws DomainError when some |y_i| >= 1, PoleError when c is a nonpositive integer,
/// NonConvergence when the tail bound is still above tol at max_order.
SeriesResult lauricella_fb3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b, const cplx& c,
                            const std::array<cplx, 3>& y, double tol = 1e-14, int max_order = 10000);

/// Moments of phi_{ab}(u) = u^a (1-u)^b / (Gamma(a+1) Gamma(b+1)):
/// (a+1)_p (b+1)_q / Gamma(a+b+p+q+2). Throws PoleError at the poles of that Gamma.
cplx phi_ab_moment(const cplx& a, const cplx& b, int p, int q);

/// phi_a(u) = u^a / Gamma(a+1) for u > 0, and 0 for u <= 0.
cplx phi_a(const cplx& a, double u);

/// Integral over [lo, hi] of f(x) (x-lo)^alpha (hi-x)^beta for f smooth on the closed interval.
/// Each endpoint power is smoothed by a substitution x - lo = u^m with integer m (and its mirror at hi).
/// Throws NonIntegrable when a power is <= -1. tol is relative to the L1 norm of the integrand.
QuadResult quad_endpoint(const std::function<double(double)>& f, double lo, double hi, double alpha, double beta,
                         double tol = 1e-10);
QuadResultC quad_endpoint_c(const std::function<cplx(double)>& f, double lo, double hi, double alpha, double beta,
                            double tol = 1e-10);

/// Integral over [lo, hi] of (x-lo)^b_lo (hi-x)^b_hi F(x) for complex powers with real parts > -1 and F smooth.
/// Each half is mapped by x - lo = h e^{-w} (or hi - x = h e^{-w}), which turns the possibly oscillating
/// power into the decaying factor e^{-w(1+b)}. Throws NonIntegrable when a real part is <= -1.
QuadResultC quad_complex_power(const std::function<cplx(double)>& F, double lo, double hi, const cplx& b_lo,
                               const cplx& b_hi, double tol = 1e-10);

}  // namespace zm
