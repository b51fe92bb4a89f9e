#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/errors.hpp"
#include "zm/sampling.hpp"

#include <cmath>
#include <map>

using namespace zm;

namespace {

const Rational kHalf(1, 2);

}  // namespace

TEST_CASE("exact up transitions") {
    const auto p = make_params(kHalf, kHalf);
    const auto from_one = up_transition(Partition{1}, p);
    REQUIRE(from_one.size() == 2);
    CHECK(from_one[0].first == Partition{2});
    CHECK(from_one[0].second == Rational(9, 10));
    CHECK(from_one[1].second == Rational(1, 10));
    const auto from_empty = up_transition(Partition(), p);
    REQUIRE(from_empty.size() == 1);
    CHECK(from_empty[0].second == 1);
    for (int n = 0; n <= 6; ++n)
        for (const Partition& mu : partitions_of(n)) {
            Rational total = 0;
            for (const auto& entry : up_transition(mu, make_params(kHalf, Rational(7, 10)))) total += entry.second;
            CHECK(total == 1);
        }
}

TEST_CASE("corner formula matches the exact transitions") {
    const auto p = make_params(cplx(1, 1), cplx(1, -1));
    for (int n = 0; n <= 6; ++n)
        for (const Partition& mu : partitions_of(n)) {
            const auto fast = up_transition_fast(mu, p);
            const auto exact = up_transition(mu, p);
            REQUIRE(fast.size() == exact.size());
            for (std::size_t k = 0; k < fast.size(); ++k) CHECK(std::abs(fast[k] - exact[k].second) < 1e-13);
        }
}

TEST_CASE("path products reproduce M_n exactly") {
    const auto p = make_params(kHalf, Rational(7, 10));
    for (int n = 0; n <= 4; ++n) {
        const auto law = path_product_law(n, p);
        CHECK(law.size() == partitions_of(n).size());
        for (const auto& [lambda, mass] : law) CHECK(mass == weight(lambda, p));
    }
}

TEST_CASE("sampler basics and reproducibility") {
    const auto p = make_params(cplx(0.5, 0), cplx(0.5, 0));
    CHECK(sample_partition(0, p, 3) == Partition());
    CHECK(sample_partition(50, p, 42) == sample_partition(50, p, 42));
    CHECK(sample_partition(50, p, 42).size() == 50);
    Rng a(9), b(9);
    for (int k = 0; k < 10; ++k) CHECK(a.uniform() == b.uniform());
    CHECK(sample_index({0.2, 0.3, 0.5}, 0.1) == 0);
    CHECK(sample_index({0.2, 0.3, 0.5}, 0.45) == 1);
    CHECK(sample_index({0.2, 0.3, 0.4}, 0.99) == 2);
}

TEST_CASE("frequencies at n = 2") {
    const auto p = make_params(cplx(0.5, 0), cplx(0.5, 0));
    const std::size_t m = 100000;
    const auto draws = parallel_draws<Partition>(m, 2024, [&](Rng& r) { return sample_partition(2, p, r); });
    double count = 0;
    for (const Partition& l : draws) count += l == Partition{2} ? 1 : 0;
    CHECK(std::abs(count / m - 0.9) <= 3.0 * std::sqrt(0.09 / m));
    const auto again = parallel_draws<Partition>(100, 2024, [&](Rng& r) { return sample_partition(2, p, r); }, 3);
    for (std::size_t k = 0; k < 100; ++k) CHECK(again[k] == draws[k]);
}

TEST_CASE("embedding") {
    const Configuration one = embed_configuration(Partition{1}, 1);
    CHECK(one.points == std::vector<double>{0.5, -0.5});
    const Configuration c = embed_configuration(Partition{3, 2}, 5);
    CHECK(c.points == std::vector<double>{0.5, 0.1, -0.3, -0.1});
    CHECK_THROWS_AS(embed_configuration(Partition{3, 2}, 4), InvalidInput);
}

TEST_CASE("empirical density") {
    CHECK_THROWS_AS(empirical_density({}, {0.1, 0.2}), EmptySample);
    CHECK_THROWS_AS(empirical_density({Configuration{}}, {-0.1, 0.1}), InvalidInput);
    const Histogram empty = empirical_density({Configuration{}}, {0.1, 0.2, 0.3});
    CHECK(empty.estimate == std::vector<double>{0.0, 0.0});
    const Histogram h = empirical_density({Configuration{{0.15, 0.25}}, Configuration{{0.15}}}, {0.1, 0.2, 0.3});
    CHECK(h.estimate[0] == doctest::Approx(10.0));
    CHECK(h.estimate[1] == doctest::Approx(5.0));
    CHECK(h.stderr_[0] == doctest::Approx(0.0));
    CHECK(h.stderr_[1] == doctest::Approx(5.0));
    CHECK(h.to_csv().rfind("bin_lo,bin_hi,estimate,stderr\n", 0) == 0);
    CHECK(sample_json_line(3, Partition{2, 1}, 7) == R"({"n":3,"lambda":[2,1],"seed":7})");
}
