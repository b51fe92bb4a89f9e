#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/errors.hpp"
#include "zm/ewens.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace zm;

namespace {

/// Cycle type of a permutation given in one-line notation.
Partition cycle_type(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> cycles;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end(), std::greater<>());
    return Partition(cycles);
}

}  // namespace

TEST_CASE("Ewens weights") {
    const Rational t(3, 7);
    const auto p = make_ewens_params(t);
    CHECK(ewens_weight(Partition{2}, p) == 1 / (t + 1));
    CHECK(ewens_weight(Partition{1, 1}, p) == t / (t + 1));
    CHECK(ewens_weight(Partition{1}, p) == 1);
    CHECK_THROWS_AS(make_ewens_params(Rational(0)), DomainError);
    for (int n = 1; n <= 10; ++n) {
        Rational s = 0;
        for (const Partition& lambda : partitions_of(n)) s += ewens_weight(lambda, make_ewens_params(Rational(1, 2)));
        CHECK(s == 1);
    }
}

TEST_CASE("t = 1 is the cycle type of a uniform permutation") {
    const auto p = make_ewens_params(Rational(1));
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::map<Partition, long> counts;
        do ++counts[cycle_type(perm)];
        while (std::next_permutation(perm.begin(), perm.end()));
        for (const Partition& lambda : partitions_of(n))
            CHECK(ewens_weight(lambda, p) == Rational(counts[lambda]) / Rational(factorial(n)));
    }
}

TEST_CASE("Kingman coherence") {
    for (const Rational& t : {Rational(1, 2), Rational(1), Rational(2)})
        for (int n = 0; n <= 6; ++n) {
            const VerificationReport r = verify_kingman_coherence(n, make_ewens_params(t));
            CHECK(r.pass);
            CHECK(r.max_violation_text == "0");
        }
    CHECK(verify_kingman_coherence(5, make_ewens_params(0.37)).pass);
}

TEST_CASE("set partitions") {
    const std::vector<long> bell{1, 1, 2, 5, 15, 52, 203, 877};
    for (int n = 0; n <= 7; ++n) CHECK(set_partitions(n).size() == static_cast<std::size_t>(bell[static_cast<std::size_t>(n)]));
    CHECK_THROWS_AS(set_partitions(11), InvalidInput);
    const auto three = set_partitions(3);
    CHECK(three.front().to_string() == "{1,2,3}");
    CHECK(three.back().to_string() == "{1|2|3}");
}

TEST_CASE("monomial coefficients") {
    CHECK(monomial_coefficient({3}, Partition{4}) == 1);
    CHECK(monomial_coefficient({3}, Partition{3, 1}) == 0);
    CHECK(monomial_coefficient({0, 0}, Partition{1, 1}) == 2);
    CHECK(monomial_coefficient({0, 0}, Partition{2}) == 1);
    CHECK(monomial_coefficient({1, 0}, Partition{2, 1}) == 1);
    CHECK(monomial_coefficient({1, 0}, Partition{3}) == 1);
    CHECK_THROWS_AS(monomial_coefficient({1, 0}, Partition{2}), SizeMismatch);
    // the coefficient of m_lambda in p_1^n counts Kingman paths
    for (int n = 1; n <= 7; ++n)
        for (const Partition& lambda : partitions_of(n))
            CHECK(monomial_coefficient(std::vector<int>(static_cast<std::size_t>(n), 0), lambda) == dim0(lambda));
}

TEST_CASE("sigma^(t)_n moments by both routes") {
    const auto p = make_ewens_params(Rational(2, 3));
    CHECK(sigma_t_n_moment(MomentSpec{{0}}, p, EwensMomentRoute::set_partition_sum) == 1);
    for (int l = 0; l <= 6; ++l) {
        const Rational expected = p.t * Rational(factorial(l)) / rising(p.t, l + 1);
        CHECK(sigma_t_n_moment(MomentSpec{{l}}, p, EwensMomentRoute::coefficient_sum) == expected);
        CHECK(sigma_t_n_moment(MomentSpec{{l}}, p, EwensMomentRoute::set_partition_sum) == expected);
        const double t = p.t.get_d();
        const double q = quad_endpoint([&](double x) { return t * std::pow(x, l); }, 0, 1, 0, t - 1).value;
        CHECK(std::abs(q - expected.get_d()) < 1e-8);
    }
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 2; ++c) {
                const MomentSpec s{{a, b, c}};
                CHECK(sigma_t_n_moment(s, p, EwensMomentRoute::coefficient_sum) ==
                      sigma_t_n_moment(s, p, EwensMomentRoute::set_partition_sum));
            }
}

TEST_CASE("n = 3 component structure") {
    const auto parts = set_partitions(3);
    std::map<int, int> by_rank;
    for (const SetPartition& pi : parts) ++by_rank[pi.rank()];
    CHECK(by_rank[1] == 1);
    CHECK(by_rank[2] == 3);
    CHECK(by_rank[3] == 1);
    const double t = 1.7;
    // single block: t y^2 (1-y)^{t-1}; two blocks: t^2 y_big (1-y1-y2)^{t-1}; three blocks: t^3 (1-sum)^{t-1}
    CHECK(component_density({3}, {0.4}, t) == doctest::Approx(t * 0.16 * std::pow(0.6, t - 1)));
    CHECK(component_density({2, 1}, {0.2, 0.3}, t) == doctest::Approx(t * t * 0.2 * std::pow(0.5, t - 1)));
    CHECK(component_density({1, 1, 1}, {0.1, 0.2, 0.3}, t) == doctest::Approx(t * t * t * std::pow(0.4, t - 1)));
    for (const SetPartition& pi : parts) {
        std::vector<double> y;
        for (int i = 0; i < pi.rank(); ++i) y.push_back(0.1 + 0.07 * i);
        CHECK(component_density(pi.block_sizes(), y, t) ==
              doctest::Approx(correlation_component_density(pi.block_sizes(), y, t)).epsilon(1e-13));
    }
}

TEST_CASE("diagonal component at n = 2 is y sigma_1") {
    const auto p = make_ewens_params(Rational(5, 4));
    const SetPartition diagonal{{{1, 2}}};
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            CHECK(component_moment(diagonal, {a, b}, p) == sigma_t_n_moment(MomentSpec{{a + b + 1}}, p, EwensMomentRoute::set_partition_sum));
}

TEST_CASE("Watterson correlation functions") {
    CHECK(watterson_rho({0.25}, 1.0) == doctest::Approx(4.0));
    CHECK(watterson_rho({0.6, 0.5}, 2.0) == 0.0);
    CHECK(watterson_rho({0.2, 0.3}, 2.0) == doctest::Approx(100.0 / 3.0));
    CHECK_THROWS_AS(watterson_rho({0.2, 0.0}, 2.0), NonpositiveCoordinate);
    CHECK(watterson_rho1_integral(0.1, 1.0, 1.0) == doctest::Approx(std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("Poisson-Dirichlet sampler") {
    CHECK(default_pd_truncation(1.0) == 277);
    CHECK(default_pd_truncation(2.0) == 553);
    const PdSample a = sample_pd(1.0, 277, 5), b = sample_pd(1.0, 277, 5);
    CHECK(a.point.alpha == b.point.alpha);
    CHECK(std::is_sorted(a.point.alpha.rbegin(), a.point.alpha.rend()));
    const double total = std::accumulate(a.point.alpha.begin(), a.point.alpha.end(), 0.0);
    CHECK(total + a.residual == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total <= 1.0 + 1e-12);
    const std::size_t m = 20000;
    const auto firsts = parallel_draws<double>(m, 77, [](Rng& r) { return sample_pd(1.0, 277, r).point.alpha[0]; });
    double s = 0, s2 = 0;
    for (double v : firsts) {
        s += v;
        s2 += v * v;
    }
    const double mean = s / m, se = std::sqrt((s2 / m - mean * mean) / m);
    CHECK(std::abs(mean - 0.6243299885) <= 3 * se);
}

TEST_CASE("Chinese restaurant process") {
    CHECK(sample_ewens(1, 0.5, 1) == Partition{1});
    CHECK(sample_ewens(30, 0.5, 8) == sample_ewens(30, 0.5, 8));
    const std::size_t m = 100000;
    const auto draws = parallel_draws<Partition>(m, 31, [](Rng& r) { return sample_ewens(2, 1.0, r); });
    double count = 0;
    for (const Partition& l : draws) count += l == Partition{2} ? 1 : 0;
    CHECK(std::abs(count / m - 0.5) <= 3.0 * std::sqrt(0.25 / m));
}
