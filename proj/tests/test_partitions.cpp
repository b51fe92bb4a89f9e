#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/errors.hpp"
#include "zm/partitions.hpp"

#include <map>

using namespace zm;

namespace {

/// Path-count oracle: dim(lambda) as the number of ways to remove boxes down to the empty diagram.
BigInt paths_oracle(const Partition& lambda, std::map<Partition, BigInt>& memo) {
    if (lambda.empty()) return 1;
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
    BigInt total = 0;
    for (const Partition& mu : remove_boxes(lambda)) total += paths_oracle(mu, memo);
    return memo[lambda] = total;
}

}  // namespace

TEST_CASE("partition construction validates parts") {
    CHECK_THROWS_AS(Partition({1, 2}), InvalidInput);
    CHECK_THROWS_AS(Partition({2, 0}), InvalidInput);
    const Partition p{3, 2};
    CHECK(p.size() == 5);
    CHECK(p.length() == 2);
    CHECK(p.row(3) == 0);
    CHECK(p.to_string() == "(3,2)");
    CHECK(p.to_json() == "[3,2]");
    CHECK(Partition().size() == 0);
}

TEST_CASE("frobenius coordinates") {
    CHECK(frobenius(Partition()).rank() == 0);
    const FrobeniusCoords f = frobenius(Partition{3, 2});
    CHECK(f.p == std::vector<int>{2, 0});
    CHECK(f.q == std::vector<int>{1, 0});
    CHECK(frobenius(Partition{1}).p == std::vector<int>{0});
    for (int n = 0; n <= 8; ++n)
        for (const Partition& lambda : partitions_of(n)) {
            const FrobeniusCoords g = frobenius(lambda);
            int total = g.rank();
            for (int v : g.p) total += v;
            for (int v : g.q) total += v;
            CHECK(total == n);
            CHECK(from_frobenius(g) == lambda);
        }
    CHECK_THROWS_AS(from_frobenius(FrobeniusCoords{{0, 1}, {1, 0}}), InvalidInput);
    CHECK_THROWS_AS(from_frobenius(FrobeniusCoords{{1}, {}}), InvalidInput);
}

TEST_CASE("transpose, hooks and diagonal") {
    CHECK(transpose(Partition{3, 2}) == Partition{2, 2, 1});
    CHECK(transpose(Partition{1, 1}) == Partition{2});
    CHECK(transpose(Partition()) == Partition());
    CHECK(hook_length(Partition{3, 2}, 1, 1) == 4);
    CHECK(hook_length(Partition{1}, 1, 1) == 1);
    CHECK(hook_length(Partition{3, 2}, 2, 2) == 1);
    CHECK_THROWS_AS(hook_length(Partition{3, 2}, 2, 3), BoxOutOfShape);
    CHECK(diagonal_length(Partition{3, 3, 2}) == 2);
}

TEST_CASE("dimension formulas agree with the path oracle") {
    CHECK(dim(Partition{1}) == 1);
    CHECK(dim(Partition{2, 1}) == 2);
    CHECK(dim(Partition{3, 2}) == 5);
    std::map<Partition, BigInt> memo;
    for (int n = 0; n <= 9; ++n) {
        BigInt squares = 0;
        for (const Partition& lambda : partitions_of(n)) {
            const BigInt d = dim(lambda, DimMethod::hook);
            CHECK(d == dim(lambda, DimMethod::determinant));
            CHECK(d == dim(lambda, DimMethod::frobenius));
            CHECK(d == dim(lambda, DimMethod::paths));
            CHECK(d == paths_oracle(lambda, memo));
            CHECK(d == dim_rows(lambda, lambda.length() + 2));
            squares += d * d;
        }
        CHECK(squares == factorial(n));
    }
}

TEST_CASE("Young graph neighbours") {
    CHECK(add_boxes(Partition{1}) == std::vector<Partition>{Partition{2}, Partition{1, 1}});
    CHECK(remove_boxes(Partition{2, 1}) == std::vector<Partition>{Partition{1, 1}, Partition{2}});
    CHECK(add_boxes(Partition{2, 2}) == std::vector<Partition>{Partition{3, 2}, Partition{2, 2, 1}});
    CHECK(add_boxes(Partition()) == std::vector<Partition>{Partition{1}});
}

TEST_CASE("Kingman graph") {
    CHECK(kingman_multiplicity(Partition{2, 1}, Partition{2, 2}) == 2);
    CHECK(kingman_multiplicity(Partition{1}, Partition{2}) == 1);
    CHECK(kingman_multiplicity(Partition{1, 1}, Partition{1, 1, 1}) == 3);
    CHECK_THROWS_AS(kingman_multiplicity(Partition{1}, Partition{3}), NotAnEdge);
    CHECK(dim0(Partition{2, 1}) == 3);
    CHECK(dim0(Partition{1}) == 1);
    CHECK(dim0(Partition{2, 2}) == 6);
    for (int n = 1; n <= 8; ++n)
        for (const Partition& lambda : partitions_of(n))
            CHECK(dim0(lambda, Dim0Method::recurrence) == dim0(lambda, Dim0Method::closed_form));
    // dividing dim0 by prod r_k! counts set partitions of each block-size type, Bell(6) = 203
    BigInt bell = 0;
    for (const Partition& lambda : partitions_of(6)) {
        BigInt sym = 1;
        const ExponentialForm e = exponential_form(lambda);
        for (int r : e.r) sym *= factorial(r);
        bell += dim0(lambda) / sym;
    }
    CHECK(bell == 203);
}

TEST_CASE("z_lambda, exponential form and partition counts") {
    CHECK(z_lambda(Partition{2}) == 2);
    CHECK(z_lambda(Partition{1, 1}) == 2);
    CHECK(z_lambda(Partition{2, 2, 1}) == 8);
    CHECK(exponential_form(Partition{2, 2, 1}).multiplicity(2) == 2);
    CHECK(partitions_of(10).size() == 42);
    CHECK(partitions_of(5).front() == Partition{5});
    // class sizes n!/z_lambda add up to n!
    BigInt total = 0;
    for (const Partition& lambda : partitions_of(7)) total += factorial(7) / z_lambda(lambda);
    CHECK(total == factorial(7));
}

TEST_CASE("Thoma simplex power sums") {
    ThomaPointT<Rational> w{{Rational(1, 2), Rational(1, 4)}, {Rational(1, 8)}, Rational(1, 8)};
    validate_thoma_point(w);
    CHECK(extended_power_sum(w, 1) == 1);
    CHECK(extended_power_sum(w, 2) == Rational(19, 64));
    ThomaPointT<Rational> g{{}, {}, Rational(1)};
    CHECK(extended_power_sum(g, 2) == 0);
    ThomaPointT<Rational> bad{{Rational(1, 4), Rational(1, 2)}, {}, Rational(1, 4)};
    CHECK_THROWS_AS(validate_thoma_point(bad), InvalidSimplexPoint);
    ThomaPoint off{{0.5}, {}, 0.4};
    CHECK_THROWS_AS(validate_thoma_point(off), InvalidSimplexPoint);
}
