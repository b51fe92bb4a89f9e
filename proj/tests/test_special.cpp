#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/errors.hpp"
#include "zm/special.hpp"

#include <cmath>
#include <numbers>

using namespace zm;

TEST_CASE("gamma functions") {
    CHECK(std::abs(rgamma_c(cplx(0.5, 0)) - 1.0 / std::sqrt(std::numbers::pi)) < 1e-15);
    const cplx g = gamma_c(cplx(1, 1));
    CHECK(std::abs(g - cplx(0.49801566811835, -0.15494982830181)) < 1e-13);
    CHECK(rgamma_c(cplx(-3, 0)) == cplx(0, 0));
    CHECK_THROWS_AS(gamma_c(cplx(-2, 0)), PoleError);
    CHECK(std::abs(gamma_c(cplx(6, 0)) - 120.0) < 1e-11);
    CHECK(std::abs(std::exp(lgamma_c(cplx(30.5, 0))) - std::tgamma(30.5)) / std::tgamma(30.5) < 1e-13);
    CHECK(std::abs(gamma_c(cplx(-0.5, 0)) - cplx(-2.0 * std::sqrt(std::numbers::pi), 0)) < 1e-13);
}

TEST_CASE("Pochhammer symbols") {
    CHECK(rising(Rational(3), 2) == 12);
    CHECK(rising(Rational(-1, 2), 3) == Rational(-3, 8));
    CHECK(rising(Rational(5), 0) == 1);
    CHECK(std::abs(pochhammer(cplx(3, 0), 2) - 12.0) < 1e-15);
}

TEST_CASE("Kummer function") {
    CHECK(std::abs(kummer_phi(cplx(0.3, 0.2), cplx(0, 0)).value - 1.0) < 1e-16);
    CHECK(std::abs(kummer_phi(cplx(1, 0), cplx(1, 0)).value - std::exp(1.0)) < 1e-14);
    CHECK(std::abs(kummer_phi(cplx(0, 0), cplx(1, 0)).value - (std::exp(1.0) - 1.0)) < 1e-14);
    CHECK(kummer_transform_check(cplx(0, 0), cplx(0.7, 0)) < 1e-14);
    CHECK(kummer_transform_check(cplx(0.5, 0), cplx(1, 0)) <= 1e-12);
    CHECK(kummer_transform_check(cplx(1, 1), cplx(-2, 0)) <= 1e-12);
}

TEST_CASE("Lauricella F_B") {
    const std::array<cplx, 3> a{cplx(0.3, 0.1), cplx(-0.4, 0), cplx(1.2, 0)};
    const std::array<cplx, 3> b{cplx(0.7, 0), cplx(0.2, -0.3), cplx(0.5, 0)};
    CHECK(std::abs(lauricella_fb3(a, b, cplx(1.5, 0), {cplx(0), cplx(0), cplx(0)}).value - 1.0) < 1e-16);
    // a_2 = a_3 = 0 leaves Gauss 2F1(1, 1; 2; 1/2) = 2 ln 2
    const SeriesResult gauss = lauricella_fb3({cplx(1), cplx(0), cplx(0)}, {cplx(1), cplx(1), cplx(1)}, cplx(2),
                                              {cplx(0.5), cplx(0.3), cplx(0.2)});
    CHECK(std::abs(gauss.value - 2.0 * std::log(2.0)) < 1e-13);
    // swapping couples permutes the variables
    const std::array<cplx, 3> y{cplx(0.3), cplx(-0.2), cplx(0.4)};
    const cplx v1 = lauricella_fb3(a, b, cplx(1.5), y).value;
    const cplx v2 = lauricella_fb3({a[1], a[0], a[2]}, {b[1], b[0], b[2]}, cplx(1.5), {y[1], y[0], y[2]}).value;
    CHECK(std::abs(v1 - v2) < 1e-13);
    CHECK_THROWS_AS(lauricella_fb3(a, b, cplx(1.5), {cplx(1.0), cplx(0), cplx(0)}), DomainError);
    CHECK_THROWS_AS(lauricella_fb3(a, b, cplx(-2.0), y), PoleError);
    CHECK_THROWS_AS(lauricella_fb3(a, b, cplx(1.5), {cplx(0.99), cplx(0), cplx(0)}, 1e-14, 5), NonConvergence);
}

TEST_CASE("phi moments") {
    CHECK(std::abs(phi_ab_moment(cplx(0), cplx(0), 0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(phi_ab_moment(cplx(0.5), cplx(-0.5), 1, 0) - 0.75) < 1e-15);
    const QuadResultC r = quad_endpoint_c(
        [](double u) { return cplx(u * std::sqrt(u), 0) * rgamma_c(cplx(1.5)) * rgamma_c(cplx(0.5)); }, 0, 1, 0, -0.5);
    CHECK(std::abs(r.value - 0.75) < 1e-10);
    for (int n = 0; n <= 5; ++n) {
        const double tt = 0.7;
        const cplx composite = phi_ab_moment(cplx(tt), cplx(-tt), n, 0) * phi_ab_moment(cplx(1), cplx(tt - 2), n, 0);
        CHECK(std::abs(composite - rgamma_c(cplx(tt + 1))) < 1e-13);
    }
}

TEST_CASE("endpoint quadrature") {
    CHECK(std::abs(quad_endpoint([](double) { return 1.0; }, 0, 1, 0, 0.25 - 1).value - 4.0) < 1e-10);
    CHECK(std::abs(quad_endpoint([](double) { return 1.0; }, 0, 1, 0, 0).value - 1.0) < 1e-14);
    CHECK(std::abs(quad_endpoint([](double) { return 1.0; }, 0, 1, -0.5, -0.5).value - std::numbers::pi) < 1e-10);
    const QuadResultC c = quad_complex_power([](double) { return cplx(1, 0); }, 0, 1, cplx(0, 1), cplx(0, 0));
    // int_0^1 x^i dx = 1 / (1 + i)
    CHECK(std::abs(c.value - 1.0 / cplx(1, 1)) < 1e-10);
}
