#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zm/characters.hpp"
#include "zm/errors.hpp"

using namespace zm;

TEST_CASE("small character values") {
    CHECK(chi(Partition{2}, {2}) == 1);
    CHECK(chi(Partition{1, 1}, {2}) == -1);
    CHECK(chi(Partition{2, 1}, {1, 1, 1}) == 2);
    CHECK(chi(Partition{2, 1}, {3}) == -1);
    CHECK(chi(Partition{2, 1}, {2, 1}) == 0);
    CHECK(chi(Partition(), {}) == 1);
    CHECK_THROWS_AS(chi(Partition{2, 1}, {2}), SizeMismatch);
}

TEST_CASE("hook characters on a full cycle") {
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; q <= 5; ++q) {
            const Partition hook = from_frobenius(FrobeniusCoords{{p}, {q}});
            CHECK(chi(hook, {p + q + 1}) == (q % 2 == 0 ? 1 : -1));
        }
}

TEST_CASE("identity class gives the dimension and the table is orthogonal") {
    for (int n = 1; n <= 7; ++n) {
        const auto parts = partitions_of(n);
        for (const Partition& lambda : parts) CHECK(chi(lambda, CycleType(static_cast<std::size_t>(n), 1)) == dim(lambda));
        // column orthogonality: sum_lambda chi(lambda, rho)^2 = z_rho
        for (const Partition& rho : parts) {
            BigInt s = 0;
            for (const Partition& lambda : parts) {
                const BigInt c = chi(lambda, rho.parts());
                s += c * c;
            }
            CHECK(s == z_lambda(rho));
        }
    }
}

TEST_CASE("cycle order does not matter") {
    CHECK(chi(Partition{3, 2, 1}, {1, 2, 3}) == chi(Partition{3, 2, 1}, {3, 2, 1}));
}

TEST_CASE("vanishing criterion") {
    CHECK(chi_vanishing_check(Partition{2, 2}, 1));
    CHECK_FALSE(chi_vanishing_check(Partition{3, 1, 1}, 1));
    CHECK_FALSE(chi_vanishing_check(Partition{3, 3, 2}, 2));
    CHECK(chi(Partition{2, 2}, {4}) == 0);
    CHECK(chi(Partition{3, 3, 2}, {8}) == 0);
}
