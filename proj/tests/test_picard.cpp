#include <doctest.h>

#include <numeric>
#include <set>

#include "fpp/picard.hpp"

using namespace fpp;

TEST_CASE("registry shape") {
    const auto& rows = registry();
    REQUIRE(rows.size() == 10);
    int c3 = 0, c3xc3 = 0;
    for (const auto& d : rows) {
        CHECK(d.lifts_to_su21);
        if (d.aut_type == AutType::C3) {
            CHECK(d.aut_generators.size() == 1);
            ++c3;
        } else {
            CHECK(d.aut_generators.size() == 4);
            ++c3xc3;
        }
        CHECK(d.aut_generators.size() == d.quotient_pi1.size());
    }
    CHECK(c3 == 7);
    CHECK(c3xc3 == 3);
}

TEST_CASE("registry lookups") {
    const FppDescriptor& row7 = find_descriptor("(C2, p=2, ∅, d_3D_3)");
    CHECK(row7.aut_type == AutType::C3xC3);
    CHECK(row7.h1 == FinAbGroup({14}));
    REQUIRE(row7.quotient_pi1.size() == 4);
    CHECK(row7.quotient_pi1[0].label == "C_14");
    CHECK(row7.quotient_pi1[1].label == "S_3");
    CHECK(row7.quotient_pi1[2].label == "C_2");
    CHECK(row7.quotient_pi1[3].label == "C_2");

    // normalized lookup without underscores
    CHECK(&find_descriptor("(C2, p=2, ∅, d3D3)") == &row7);

    const FppDescriptor& c6 = find_descriptor("(C18, p=3, {2}, (dD)_3)");
    CHECK(c6.h1 == FinAbGroup({6}));
    CHECK(c6.quotient_pi1[0].label == "C_6");

    CHECK_THROWS_AS(find_descriptor("(C99, p=2, {}, X_3)"), std::out_of_range);
}

TEST_CASE("intersection numbers and genus") {
    FinAbGroup tor({14});
    DivisorClass k = canonical_class(tor);
    CHECK(intersection(k, k) == 9);
    DivisorClass d{1, tor.reduce(GroupElement{{5}})};
    CHECK(intersection(d, d) == 1);
    CHECK(intersection(k, d) == 3);
    CHECK(intersection(DivisorClass{2, tor.zero()}, d) == 2);
    // symmetry and bilinearity in degrees
    for (std::int64_t a : {-2, 1, 3})
        for (std::int64_t b : {1, 2, 5}) {
            DivisorClass da{a, tor.zero()}, db{b, tor.zero()};
            CHECK(intersection(da, db) == intersection(db, da));
            CHECK(intersection(divisor_add(tor, da, db), d) ==
                  intersection(da, d) + intersection(db, d));
        }

    CHECK(arithmetic_genus(d) == 3);
    CHECK(arithmetic_genus(k) == 10);
    CHECK(arithmetic_genus(DivisorClass{2, tor.zero()}) == 6);
    CHECK_THROWS_AS(arithmetic_genus(DivisorClass{0, tor.zero()}), std::invalid_argument);
}

TEST_CASE("automorphism action on divisor classes") {
    const FppDescriptor& row7 = find_descriptor("(C2, p=2, ∅, d_3D_3)");
    const FinAbGroup& tor = row7.h1;
    const PicAutomorphism& sigma = row7.aut_generators[1];

    // K is fixed by every registered automorphism of every surface
    for (const auto& row : registry())
        for (const auto& g : row.aut_generators)
            CHECK(act(g, canonical_class(row.h1)) == canonical_class(row.h1));

    // the 7-torsion part is doubled
    GroupElement t7;
    for (const auto& e : tor.elements())
        if (tor.element_order(e) == 7) {
            t7 = e;
            break;
        }
    DivisorClass l{1, t7};
    CHECK(act(sigma, l) == DivisorClass{1, tor.scalar_mul(2, t7)});

    // torsion coordinates from a group of different rank are an error
    FinAbGroup other({2, 2});
    CHECK_THROWS_AS(act(sigma, DivisorClass{1, other.zero()}), std::invalid_argument);
}

TEST_CASE("order-3 action on the full torsion group, all rows") {
    for (const auto& row : registry()) {
        for (const auto& g : row.aut_generators) {
            for (const auto& t : row.h1.elements()) {
                DivisorClass d{1, t};
                CHECK(act(g, act(g, act(g, d))) == d);
            }
        }
    }
}

TEST_CASE("nonzero cube-root offsets still act with order 3") {
    const FppDescriptor& row1 = find_descriptor("(a=15, p=2, {3,5}, D_3)");
    const PicAutomorphism& sigma = row1.aut_generators[0];
    auto offsets = admissible_cube_root_offsets(row1.h1, sigma);
    CHECK(offsets.size() == 3);  // all 3-torsion elements of C21
    for (const auto& off : offsets) {
        PicAutomorphism phi = with_offset(sigma, off);
        for (const auto& t : row1.h1.elements()) {
            DivisorClass d{1, t};
            CHECK(act(phi, act(phi, act(phi, d))) == d);
        }
        // orbit sums always land on K
        DivisorClass l{1, row1.h1.zero()};
        DivisorClass sum = divisor_add(row1.h1, l, divisor_add(row1.h1, act(phi, l),
                                                               act(phi, act(phi, l))));
        CHECK(sum == canonical_class(row1.h1));
    }
    CHECK_THROWS_AS(with_offset(sigma, GroupElement{{1}}), std::invalid_argument);
}

TEST_CASE("registry consistency against the quotient fundamental groups") {
    for (const auto& row : registry_consistency()) {
        INFO(row.label, " generator ", row.generator_index);
        CHECK(row.divisibility_ok);
        CHECK(row.equality_ok);
        if (row.coprime_case) CHECK(row.coinvariant_order == row.pi1_abelianization_order);
    }
}

TEST_CASE("torsion restriction axiom") {
    FinAbGroup tor({14});
    DivisorClass d1{1, tor.reduce(GroupElement{{1}})};
    GroupElement t2{{7}};
    CHECK(torsion_restriction_nonvanishing(tor, d1, t2) == RestrictionVerdict::Nontrivial);
    CHECK(torsion_restriction_nonvanishing(tor, d1, tor.zero()) == RestrictionVerdict::Trivial);
    GroupElement mixed{{12}};  // t2 + 5 t7 in some coordinates: any nonzero class
    CHECK(torsion_restriction_nonvanishing(tor, d1, mixed) == RestrictionVerdict::Nontrivial);
    CHECK_THROWS_AS(torsion_restriction_nonvanishing(tor, DivisorClass{0, tor.zero()}, t2),
                    std::invalid_argument);
}

TEST_CASE("registry export is stable and round-trips") {
    auto j1 = registry_to_json();
    auto j2 = registry_to_json();
    CHECK(j1.dump() == j2.dump());
    auto rows = registry_from_json(nlohmann::json::parse(j1.dump()));
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].label == registry()[i].label);
        CHECK(rows[i].h1 == registry()[i].h1);
        CHECK(rows[i].aut_generators.size() == registry()[i].aut_generators.size());
        for (std::size_t g = 0; g < rows[i].aut_generators.size(); ++g)
            CHECK(rows[i].aut_generators[g].torsion_action ==
                  registry()[i].aut_generators[g].torsion_action);
    }
}
