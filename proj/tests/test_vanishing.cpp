#include <doctest.h>

#include <algorithm>
#include <set>

#include "fpp/vanishing.hpp"

using namespace fpp;

namespace {

const FppDescriptor& row(int i) { return registry().at(i); }

GroupElement two_torsion(const FinAbGroup& tor) {
    for (const auto& e : tor.elements())
        if (tor.element_order(e) == 2) return e;
    throw std::logic_error("no 2-torsion");
}

}  // namespace

TEST_CASE("orbit sum rule") {
    // H1 = C7 with x2: candidates die against K
    const FppDescriptor& r5 = find_descriptor("(C10, p=2, {17-}, D_3)");
    AxiomSet axioms = default_axioms(r5);
    DivisorClass l{1, r5.h1.reduce(GroupElement{{1}})};
    auto proof = orbit_sum_rule(r5.h1, l, r5.aut_generators[0], axioms);
    REQUIRE(proof.has_value());
    CHECK(proof->tag == ProofTag::OrbitSum);
    CHECK(proof->obstruction == canonical_class(r5.h1));
    CHECK(proof->axiom_source == AxiomSource::PgZero);

    // C14 surface: (1, 0) dies under the trivial generator
    const FppDescriptor& r7 = row(6);
    AxiomSet ax7 = default_axioms(r7);
    DivisorClass l0{1, r7.h1.zero()};
    auto p0 = orbit_sum_rule(r7.h1, l0, r7.aut_generators[0], ax7);
    REQUIRE(p0.has_value());
    CHECK(p0->obstruction == canonical_class(r7.h1));

    // but the t2 + t7 classes escape the rule
    GroupElement t2 = two_torsion(r7.h1);
    GroupElement odd = r7.h1.add(t2, GroupElement{{2}});  // t2 + a 7-torsion element
    DivisorClass survivor{1, odd};
    for (const auto& g : r7.aut_generators)
        CHECK_FALSE(orbit_sum_rule(r7.h1, survivor, g, ax7).has_value());
}

TEST_CASE("pairing rule") {
    const FppDescriptor& r7 = row(6);
    const FinAbGroup& tor = r7.h1;
    AxiomSet axioms = default_axioms(r7);
    GroupElement t2 = two_torsion(tor);

    // distinct classes summing to 2L0: mutual exclusion
    GroupElement t7{{2}};
    DivisorClass a{1, tor.add(t2, t7)};
    DivisorClass b{1, tor.sub(t2, t7)};  // t2 + (7-a) t7 since 2 t2 = 0
    auto res = pairing_rule(tor, a, b, axioms);
    CHECK_FALSE(res.proof.has_value());
    REQUIRE(res.exclusion.has_value());
    CHECK(res.exclusion->obstruction == DivisorClass{2, tor.zero()});

    // (1, t) with (2, -t): sums to K, excluded via p_g = 0
    DivisorClass c{2, tor.neg(a.torsion)};
    auto res2 = pairing_rule(tor, a, c, axioms);
    REQUIRE(res2.exclusion.has_value());
    CHECK(res2.exclusion->obstruction == canonical_class(tor));

    // self-pairing upgrades to a proof: 2 (1, t2) = 2L0
    DivisorClass d{1, t2};
    auto res3 = pairing_rule(tor, d, d, axioms);
    REQUIRE(res3.proof.has_value());
    CHECK(res3.proof->tag == ProofTag::Pairing);
    CHECK(res3.proof->obstruction == DivisorClass{2, tor.zero()});

    // nothing happens when the sum is unknown
    auto res4 = pairing_rule(tor, a, DivisorClass{1, tor.zero()}, axioms);
    CHECK_FALSE(res4.proof.has_value());
    CHECK_FALSE(res4.exclusion.has_value());
}

TEST_CASE("pairing upgrade against a known-effective class") {
    FinAbGroup tor({6});
    AxiomSet axioms(tor);
    axioms.add(DivisorClass{3, tor.zero()}, AxiomSource::PgZero);
    axioms.add_effective(DivisorClass{2, tor.zero()});
    auto res = pairing_rule(tor, DivisorClass{1, tor.zero()}, DivisorClass{2, tor.zero()}, axioms);
    REQUIRE(res.proof.has_value());
    CHECK(res.proof->cls == DivisorClass{1, tor.zero()});
}

TEST_CASE("vanishing on the first six rows is complete in every branch") {
    for (int i = 0; i < 6; ++i) {
        VanishingReport rep = run_vanishing(row(i));
        INFO(rep.surface);
        CHECK(rep.undetermined.empty());
        CHECK(rep.proved.size() == rep.candidates.size());
        CHECK(rep.branch_independent);
        bool has_3_torsion = row(i).h1.order() % 3 == 0;
        CHECK(rep.offsets_checked.size() == (has_3_torsion ? 3 : 1));
        CHECK(rep.max_simultaneously_effective == 0);
    }
}

TEST_CASE("vanishing on the C14 surface") {
    VanishingReport rep = run_vanishing(row(6));
    CHECK(rep.candidates.size() == 14);
    CHECK(rep.proved.size() == 8);
    CHECK(rep.undetermined.size() == 6);
    REQUIRE(rep.undetermined_orbits.size() == 2);
    CHECK(rep.undetermined_orbits[0].classes.size() == 3);
    CHECK(rep.undetermined_orbits[1].classes.size() == 3);
    CHECK(rep.orbit_exclusions.size() == 1);
    CHECK(rep.max_simultaneously_effective == 3);

    // the undetermined classes are exactly the six order-14 torsion twists
    const FinAbGroup& tor = row(6).h1;
    for (const auto& c : rep.undetermined) CHECK(tor.element_order(c.torsion) == 14);

    // exclusion graph between the two orbits is complete bipartite
    std::set<std::pair<DivisorClass, DivisorClass>> edges;
    for (const auto& e : rep.exclusions) {
        edges.insert({std::min(e.a, e.b), std::max(e.a, e.b)});
    }
    CHECK(edges.size() == 9);
    for (const auto& a : rep.undetermined_orbits[0].classes)
        for (const auto& b : rep.undetermined_orbits[1].classes)
            CHECK(edges.count({std::min(a, b), std::max(a, b)}) == 1);

    // proof tags: seven orbit sums and one pairing
    int orbit_sums = 0, pairings = 0;
    for (const auto& p : rep.proved) {
        if (p.tag == ProofTag::OrbitSum) ++orbit_sums;
        if (p.tag == ProofTag::Pairing) ++pairings;
    }
    CHECK(orbit_sums == 7);
    CHECK(pairings == 1);
}

TEST_CASE("proofs replay from scratch") {
    for (const auto& surface : registry()) {
        VanishingReport rep = run_vanishing(surface);
        CHECK(replay_proofs(surface, rep));
    }
}

TEST_CASE("proved and undetermined sets are unions of orbits") {
    for (const auto& surface : registry()) {
        VanishingReport rep = run_vanishing(surface);
        std::set<DivisorClass> undet(rep.undetermined.begin(), rep.undetermined.end());
        for (const auto& g : surface.aut_generators) {
            for (const auto& c : rep.undetermined) CHECK(undet.count(act(g, c)) == 1);
            for (const auto& p : rep.proved) CHECK(undet.count(act(g, p.cls)) == 0);
        }
    }
}

TEST_CASE("monotonicity: extra axioms never shrink the proved set") {
    const FppDescriptor& r7 = row(6);
    VanishingReport before = run_vanishing(r7);
    // Declaring one undetermined class non-effective removes its whole orbit
    // (propagation) and only ever grows the proved set.
    DivisorClass extra = before.undetermined.front();
    VanishingReport after = run_vanishing(r7, {{extra, AxiomSource::Derived}});
    CHECK(after.proved.size() > before.proved.size());
    std::set<DivisorClass> after_proved;
    for (const auto& p : after.proved) after_proved.insert(p.cls);
    for (const auto& p : before.proved) CHECK(after_proved.count(p.cls) == 1);
    // the orbit of the new axiom is gone from the undetermined set
    CHECK(after.undetermined.size() == before.undetermined.size() - 3);

    // and on every surface, adding an axiom that is already derivable
    // changes nothing
    for (const auto& surface : registry()) {
        VanishingReport base = run_vanishing(surface);
        if (base.proved.empty()) continue;
        VanishingReport again =
            run_vanishing(surface, {{base.proved.front().cls, AxiomSource::Derived}});
        CHECK(again.undetermined == base.undetermined);
        CHECK(again.proved.size() == base.proved.size());
    }
}

TEST_CASE("separation obstruction certificates") {
    const FppDescriptor& r7 = row(6);
    const FinAbGroup& tor = r7.h1;
    const PicAutomorphism* sigma = nullptr;
    for (const auto& g : r7.aut_generators)
        if (!is_identity(g.torsion_action)) sigma = &g;
    REQUIRE(sigma != nullptr);

    VanishingReport rep = run_vanishing(r7);
    GroupElement t2 = two_torsion(tor);
    for (const auto& orbit : rep.undetermined_orbits) {
        DivisorClass d1 = orbit.classes.front();
        GroupElement t7 = tor.sub(d1.torsion, t2);
        std::vector<DivisorClass> ordered{d1, act(*sigma, d1), act(*sigma, act(*sigma, d1))};

        auto distinct = separation_obstruction(tor, ordered, *sigma, PairCase::Distinct);
        CHECK(distinct.delta == t2);
        CHECK(distinct.verdict == ObstructionVerdict::Contradicted);

        GroupElement expected = tor.add(t2, tor.scalar_mul(5, t7));
        auto near1 = separation_obstruction(tor, ordered, *sigma, PairCase::InfinitelyNear1);
        CHECK((near1.delta == expected || near1.delta == tor.neg(expected)));
        CHECK(near1.verdict == ObstructionVerdict::Contradicted);
        auto near2 = separation_obstruction(tor, ordered, *sigma, PairCase::InfinitelyNear2);
        CHECK((near2.delta == expected || near2.delta == tor.neg(expected)));
        CHECK(near2.verdict == ObstructionVerdict::Contradicted);
    }

    // torsion-free surface: delta vanishes, inconclusive
    FinAbGroup trivial;
    FppDescriptor fake;
    fake.label = "synthetic";
    fake.aut_type = AutType::C3;
    fake.h1 = trivial;
    PicAutomorphism id{GroupEndo::identity(trivial), trivial.zero()};
    std::vector<DivisorClass> orb{DivisorClass{1, trivial.zero()}, DivisorClass{1, trivial.zero()},
                                  DivisorClass{1, trivial.zero()}};
    auto cert = separation_obstruction(trivial, orb, id, PairCase::Distinct);
    CHECK(cert.verdict == ObstructionVerdict::Inconclusive);

    // an orbit not closed under sigma is rejected
    std::vector<DivisorClass> bad{DivisorClass{1, tor.zero()},
                                  DivisorClass{1, tor.reduce(GroupElement{{1}})},
                                  DivisorClass{1, tor.reduce(GroupElement{{2}})}};
    CHECK_THROWS_AS(separation_obstruction(tor, bad, *sigma, PairCase::Distinct),
                    std::invalid_argument);
}

TEST_CASE("bicanonical verdicts") {
    for (int i = 0; i < 7; ++i) {
        BicanonicalReport rep = bicanonical_verdict(row(i));
        INFO(rep.surface);
        CHECK(rep.verdict == BicanonicalVerdict::Embedding);
        CHECK(rep.exceptional_points_max == 0);
        REQUIRE(rep.separation_cases.size() == 1);
        CHECK(rep.separation_cases[0].case_id == ReiderCase::SEP_D);
    }
    for (int i = 7; i < 10; ++i) {
        BicanonicalReport rep = bicanonical_verdict(row(i));
        INFO(rep.surface);
        CHECK(rep.verdict == BicanonicalVerdict::EmbeddingOutsideFixedPoints);
        CHECK(rep.exceptional_points_max <= 3);
        CHECK(rep.vanishing.undetermined.size() == 2);
        CHECK(rep.vanishing.max_simultaneously_effective == 2);
    }

    // surfaces outside the registry scope are rejected
    FppDescriptor g21;
    g21.label = "synthetic G21";
    g21.aut_type = AutType::G21;
    g21.h1 = FinAbGroup({2, 2, 2});
    CHECK_THROWS_AS(bicanonical_verdict(g21), std::invalid_argument);

    FppDescriptor nolift = row(0);
    nolift.lifts_to_su21 = false;
    CHECK_THROWS_AS(run_vanishing(nolift), std::invalid_argument);
}

TEST_CASE("explanations name the rule used") {
    const FppDescriptor& r7 = row(6);
    VanishingReport rep = run_vanishing(r7);
    std::string s = explain_class(r7, rep, DivisorClass{1, r7.h1.zero()});
    CHECK(s.find("orbit-sum") != std::string::npos);
    std::string t2s = explain_class(r7, rep, DivisorClass{1, two_torsion(r7.h1)});
    CHECK(t2s.find("pairing") != std::string::npos);
    std::string undet = explain_class(r7, rep, rep.undetermined.front());
    CHECK(undet.find("undetermined") != std::string::npos);
    CHECK(undet.find("exclusion") != std::string::npos);
}

TEST_CASE("report JSON is stable") {
    VanishingReport rep = run_vanishing(row(6));
    CHECK(to_json(rep).dump() == to_json(run_vanishing(row(6))).dump());
}

TEST_CASE("candidates split exactly into proved and undetermined") {
    for (const auto& surface : registry()) {
        VanishingReport rep = run_vanishing(surface);
        CHECK(rep.proved.size() + rep.undetermined.size() == rep.candidates.size());
        std::set<DivisorClass> seen;
        for (const auto& p : rep.proved) CHECK(seen.insert(p.cls).second);
        for (const auto& c : rep.undetermined) CHECK(seen.insert(c).second);
        for (const auto& c : rep.candidates) CHECK(seen.count(c) == 1);
    }
}

TEST_CASE("row 7 report notes the orbit-exchanging relabeling") {
    VanishingReport rep = run_vanishing(row(6));
    bool noted = false;
    for (const auto& n : rep.notes) noted = noted || n.find("relabeling") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("invariant-torsion axioms match the registry structure") {
    // only the C14 surface has a nontrivial Aut-invariant torsion class
    auto degree2_axioms = [](const FppDescriptor& d) {
        int n = 0;
        for (const auto& a : default_axioms(d).axioms())
            if (a.cls.degree == 2) ++n;
        return n;
    };
    CHECK(degree2_axioms(find_descriptor("(C2, p=2, {3}, d_3D_3)")) == 1);
    CHECK(degree2_axioms(find_descriptor("(C18, p=3, ∅, d_3D_3)")) == 1);
    CHECK(degree2_axioms(find_descriptor("(C2, p=2, ∅, d_3D_3)")) == 2);
    // C3 rows never receive the invariant-root axiom
    CHECK(degree2_axioms(find_descriptor("(C10, p=2, {17-}, D_3)")) == 0);
}

TEST_CASE("many unconstrained orbits stay fast and unbounded") {
    // a synthetic trivial action leaves everything but (1, 0) undetermined,
    // with no exclusions; the simultaneity bound must not enumerate 2^51 sets
    auto can = canonicalize_moduli({2, 26});
    FppDescriptor synthetic;
    synthetic.label = "synthetic trivial action";
    synthetic.aut_type = AutType::C3;
    synthetic.h1 = can.group;
    synthetic.aut_generators = {
        PicAutomorphism{GroupEndo::identity(can.group), can.group.zero()}};
    synthetic.quotient_pi1 = {{"C_52", 52}};
    VanishingReport rep = run_vanishing(synthetic);
    CHECK(rep.undetermined.size() == 51);
    CHECK(rep.undetermined_orbits.size() == 51);
    CHECK(rep.max_simultaneously_effective == 51);
    CHECK(rep.exclusions.empty());
}
