#include <doctest.h>

#include <stdexcept>

#include "fpp/polyfp.hpp"

using namespace fpp;

namespace {

PolyFp x_pow_n_minus_1(std::int64_t n, std::int64_t p) {
    std::vector<std::int64_t> c(n + 1, 0);
    c[0] = p - 1;
    c[n] = 1;
    return poly_from_coeffs(p, c);
}

}  // namespace

TEST_CASE("x^7 - 1 over F_2") {
    auto fac = factor_cyclotomic_mod_p(7, 2);
    REQUIRE(fac.size() == 3);
    CHECK(fac[0].to_string() == "x + 1");
    CHECK(fac[1].to_string() == "x^3 + x^2 + 1");
    CHECK(fac[2].to_string() == "x^3 + x + 1");
}

TEST_CASE("small cases") {
    auto f1 = factor_cyclotomic_mod_p(1, 2);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].to_string() == "x + 1");

    auto f3 = factor_cyclotomic_mod_p(3, 2);
    REQUIRE(f3.size() == 2);
    CHECK(f3[0].to_string() == "x + 1");
    CHECK(f3[1].to_string() == "x^2 + x + 1");

    CHECK_THROWS_AS(factor_cyclotomic_mod_p(7, 6), std::invalid_argument);
}

TEST_CASE("factors are distinct irreducibles whose product is x^n - 1") {
    for (std::int64_t p : {2, 3, 5, 7, 13}) {
        for (std::int64_t n = 1; n <= 24; ++n) {
            if (n % p == 0) continue;
            auto fac = factor_cyclotomic_mod_p(n, p);
            // pairwise distinct
            for (std::size_t i = 0; i < fac.size(); ++i)
                for (std::size_t j = i + 1; j < fac.size(); ++j) CHECK_FALSE(fac[i] == fac[j]);
            // monic, nonconstant, and irreducible against all lower-degree factors
            PolyFp prod = poly_from_coeffs(p, {1});
            for (const auto& f : fac) {
                CHECK(f.degree() >= 1);
                CHECK(f.c.back() == 1);
                prod = poly_mul(prod, f);
            }
            CHECK(prod == x_pow_n_minus_1(n, p));
            // irreducibility at desk scale: no factor divides another after gcd
            for (std::size_t i = 0; i < fac.size(); ++i)
                for (std::size_t j = 0; j < fac.size(); ++j)
                    if (i != j) CHECK(poly_gcd(fac[i], fac[j]).degree() == 0);
        }
    }
}

TEST_CASE("p dividing n repeats the squarefree part") {
    auto fac = factor_cyclotomic_mod_p(14, 2);  // (x^7 - 1)^2
    CHECK(fac.size() == 6);
    PolyFp prod = poly_from_coeffs(2, {1});
    for (const auto& f : fac) prod = poly_mul(prod, f);
    CHECK(prod == x_pow_n_minus_1(14, 2));
}

TEST_CASE("irreducibility by trial division up to half degree") {
    // every reported factor has no divisor of degree <= deg/2 among monic
    // polynomials over F_2 (exhaustive for the x^7 - 1 factors)
    auto fac = factor_cyclotomic_mod_p(7, 2);
    for (const auto& f : fac) {
        for (std::int64_t mask = 2; mask < (1 << (f.degree() / 2 + 1)); ++mask) {
            std::vector<std::int64_t> c;
            for (int b = 0; (1 << b) <= mask; ++b) c.push_back((mask >> b) & 1);
            PolyFp cand = poly_from_coeffs(2, c);
            if (cand.degree() < 1 || cand.degree() > f.degree() / 2) continue;
            CHECK(poly_mod(f, cand).degree() >= 0);  // nonzero remainder
        }
    }
}

TEST_CASE("fixed dimensions of C7 on C2^n") {
    auto d3 = cyclic_action_fixed_count(3, 2, 7);
    CHECK(d3.feasible == std::set<int>{0});
    CHECK(d3.forced_min == 0);
    CHECK(d3.factor_degrees == std::vector<int>{1, 3, 3});

    auto d4 = cyclic_action_fixed_count(4, 2, 7);
    CHECK(d4.feasible == std::set<int>{1});
    CHECK(d4.forced_min == 1);

    auto d6 = cyclic_action_fixed_count(6, 2, 7);
    CHECK(d6.feasible == std::set<int>{0, 3});
    CHECK(d6.forced_min == 0);
    // the quotient bound |fixed| <= 3 pins the dimension
    auto d6b = cyclic_action_fixed_count(6, 2, 7, true, 1);
    CHECK(d6b.feasible == std::set<int>{0});

    // without faithfulness the trivial action appears
    auto d3all = cyclic_action_fixed_count(3, 2, 7, false);
    CHECK(d3all.feasible == std::set<int>{0, 3});

    CHECK_THROWS_AS(cyclic_action_fixed_count(4, 7, 7), std::invalid_argument);
}

TEST_CASE("composite order actions respect faithfulness via root orders") {
    // m = 6, p = 5: x^6 - 1 splits into linear and quadratic factors; faithful
    // actions need a summand of root order 6.
    auto d = cyclic_action_fixed_count(2, 5, 6);
    // 5 has order 2 mod 6 wait: 5^2 = 25 = 1 mod 6, so x^2 factors exist
    for (int f : d.feasible) CHECK(f <= 2);
    CHECK(!d.feasible.empty());
}
