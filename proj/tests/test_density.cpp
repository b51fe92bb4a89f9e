#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/density.hpp"
#include "zm/errors.hpp"

#include <cmath>
#include <numbers>

using namespace zm;

namespace {

const Rational kHalf(1, 2);

ZParams<cplx> half() { return make_params(cplx(0.5, 0), cplx(0.5, 0)); }

}  // namespace

TEST_CASE("MomentSpec") {
    const MomentSpec s{{2, 0, 1}};
    CHECK(s.order() == 3);
    CHECK(s.weight() == 6);
    CHECK(s.to_string() == "(2,0,1)");
}

TEST_CASE("sigma_1 moments") {
    const auto p = make_params(kHalf, kHalf);
    CHECK(sigma1_moment(0, p) == 1);
    CHECK(sigma1_moment(1, p) == Rational(4, 5));
    CHECK(sigma1_moment(2, p) == Rational(4, 5));
    CHECK(sigma1_moment(3, p) == Rational(48, 65));
    const auto q = make_params(kHalf, Rational(7, 10));
    CHECK(sigma1_moment(1, q) == (q.z + q.zp) / (q.t + 1));
    for (int l = 0; l <= 8; ++l) {
        const MomentSpec s{{l}};
        CHECK(sigma_n_moment(s, q, MomentRoute::frobenius_sum) == sigma1_moment(l, q));
        CHECK(sigma_n_moment(s, q, MomentRoute::character_sum) == sigma1_moment(l, q));
    }
}

TEST_CASE("sigma_n moments by two routes") {
    const auto p = make_params(kHalf, kHalf);
    CHECK(sigma_n_moment(MomentSpec{{0, 0}}, p, MomentRoute::frobenius_sum) == 1);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            const MomentSpec s{{a, b}};
            CHECK(sigma_n_moment(s, p, MomentRoute::frobenius_sum) == sigma_n_moment(s, p, MomentRoute::character_sum));
        }
    const auto c = make_params(cplx(1, 1), cplx(1, -1));
    const MomentSpec s{{2, 1}};
    CHECK(relative_gap(sigma_n_moment(s, c, MomentRoute::frobenius_sum), sigma_n_moment(s, c, MomentRoute::character_sum)) <
          1e-12);
}

TEST_CASE("rho_1 frozen values at z = z' = 1/2") {
    const auto p = half();
    const std::vector<std::pair<double, double>> table{{0.1, 0.30710757130192},  {0.5, 0.23931817241156},
                                                       {0.9, 1.6072919624656},   {-0.1, 1.61135020347},
                                                       {-0.5, 0.20645791313863}, {-0.9, 0.015897403989917}};
    for (const auto& [x, v] : table) {
        CHECK(std::abs(rho1(x, p, DensityMethod::lauricella).value - v) < 1e-10 * std::max(1.0, v));
    }
    const DensityPoint a = rho1(0.5, p, DensityMethod::lauricella);
    const DensityPoint b = rho1(0.5, p, DensityMethod::integral);
    CHECK(std::abs(a.value - b.value) <= 1e-6);
    CHECK(a.imag_residue < 1e-12);
}

TEST_CASE("rho_1 reflection symmetry") {
    const auto p = make_params(cplx(0.3, 0), cplx(0.6, 0));
    for (double x : {0.2, 0.6, 0.85})
        CHECK(std::abs(rho1(-x, p, DensityMethod::lauricella).value - rho1(x, reflect(p), DensityMethod::lauricella).value) <
              1e-13);
}

TEST_CASE("rho_1 domain") {
    CHECK_THROWS_AS(rho1(0.0, half(), DensityMethod::lauricella), DomainError);
    CHECK_THROWS_AS(rho1(1.0, half(), DensityMethod::lauricella), DomainError);
    CHECK_THROWS_AS(rho1(1e-4, half(), DensityMethod::integral), DomainError);
}

TEST_CASE("principal series frozen values") {
    const auto p = make_params(cplx(1, 1), cplx(1, -1));
    CHECK(std::abs(rho1(0.3, p, DensityMethod::lauricella).value - 0.314863408762) < 1e-10);
    CHECK(std::abs(rho1(0.7, p, DensityMethod::lauricella).value - 1.53629558233) < 1e-9);
    CHECK(std::abs(rho1(-0.3, p, DensityMethod::lauricella).value - 0.49744579212) < 1e-10);
    CHECK(std::abs(rho1(0.3, p, DensityMethod::integral).value - 0.314863408762) < 1e-9);
}

TEST_CASE("total mass and first moment by quadrature") {
    const auto p = half();
    const QuadResultC mass = integrate_sigma1([](double) { return cplx(1, 0); }, p);
    CHECK(std::abs(mass.value - 1.0) < 1e-5);
    const QuadResultC first = integrate_sigma1([](double x) { return cplx(x, 0); }, p);
    CHECK(std::abs(first.value - 0.8) < 1e-5);
    CHECK(std::abs(sigma1_at_zero(p) - 1.0 / (std::numbers::pi * std::numbers::pi)) < 1e-15);
}

TEST_CASE("Laplace identity") {
    const auto p = half();
    const LaplaceCheck zero = laplace_identity_residual(cplx(0, 0), p);
    CHECK(zero.residual <= 1e-8);
    const LaplaceCheck one = laplace_identity_residual(cplx(1, 0), p);
    CHECK(std::abs(one.lhs - 1.7460389615) < 1e-8);
    CHECK(one.residual <= 1e-5);
    CHECK(one.factorization_gap <= 1e-10);
}

TEST_CASE("t = 1 convolution") {
    const cplx z = std::polar(1.0, std::numbers::pi / 3);
    const ConvolutionCheck c = t_equals_one_convolution(0.5, z);
    CHECK(c.gap <= 1e-5);
    CHECK(std::abs(c.series - 0.449720908334) < 1e-9);
    CHECK_THROWS_AS(t_equals_one_convolution(0.5, cplx(0.5, 0)), DomainError);
}

TEST_CASE("correlation conversion and pseudoconvolution") {
    CHECK(correlation_from_controlling({0.5, -0.25}, 1.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(correlation_from_controlling({0.5, 0.5}, 1.0), DiagonalPoint);
    CHECK_THROWS_AS(correlation_from_controlling({0.0}, 1.0), DiagonalPoint);
    const double t = 0.6;
    for (int n = 0; n <= 4; ++n) {
        const cplx m = pseudoconvolution_moment({{cplx(t), cplx(-t)}, {cplx(1), cplx(t - 2)}}, n);
        CHECK(std::abs(m - rgamma_c(cplx(t + 1))) < 1e-13);
    }
}
