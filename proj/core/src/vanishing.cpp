#include "fpp/vanishing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fpp {

namespace {
using i64 = std::int64_t;
}

std::string axiom_source_name(AxiomSource s) {
    switch (s) {
        case AxiomSource::PgZero: return "pg_zero";
        case AxiomSource::InvariantBicanonicalRoot: return "invariant_2L0";
        case AxiomSource::NegativeDegree: return "negative_degree";
        case AxiomSource::TorsionDegreeZero: return "torsion_deg0";
        case AxiomSource::TwoTorsionCurveBound: return "two_torsion_curve_bound";
        case AxiomSource::Derived: return "derived";
    }
    return "?";
}

std::string proof_tag_name(ProofTag t) {
    switch (t) {
        case ProofTag::OrbitSum: return "ORBIT_SUM";
        case ProofTag::Pairing: return "PAIRING";
        case ProofTag::Axiom: return "AXIOM";
    }
    return "?";
}

void AxiomSet::add(DivisorClass cls, AxiomSource source) {
    cls.torsion = torsion_.reduce(cls.torsion);
    axioms_.push_back({cls, source});
}

void AxiomSet::add_effective(DivisorClass cls) {
    cls.torsion = torsion_.reduce(cls.torsion);
    effective_.push_back(cls);
}

std::optional<AxiomSource> AxiomSet::known_noneffective(const DivisorClass& d) const {
    if (d.degree < 0) return AxiomSource::NegativeDegree;
    if (d.degree == 0 && !(torsion_.reduce(d.torsion) == torsion_.zero()))
        return AxiomSource::TorsionDegreeZero;
    for (const auto& a : axioms_)
        if (a.cls == d) return a.source;
    return std::nullopt;
}

bool AxiomSet::known_effective(const DivisorClass& d) const {
    if (d.degree == 0 && torsion_.reduce(d.torsion) == torsion_.zero()) return true;
    for (const auto& e : effective_)
        if (e == d) return true;
    return false;
}

AxiomSet default_axioms(const FppDescriptor& surface) {
    AxiomSet axioms(surface.h1);
    const FinAbGroup& tor = surface.h1;
    axioms.add(canonical_class(tor), AxiomSource::PgZero);

    if (surface.aut_type == AutType::C3xC3) {
        // h^0(2 L0 + t) = 0 for every Aut-invariant torsion class t.
        for (const auto& t : tor.elements()) {
            bool invariant = true;
            for (const auto& g : surface.aut_generators)
                invariant = invariant && g.torsion_action.apply(t) == t;
            if (invariant) axioms.add(DivisorClass{2, t}, AxiomSource::InvariantBicanonicalRoot);
        }
    }
    if (surface.h1_is_c6) {
        // The at-most-two-curves bound for the H1 = C6 surfaces, recorded as
        // the non-effectivity of the two-torsion twist of the cube root.
        for (const auto& t : tor.elements())
            if (tor.element_order(t) == 2)
                axioms.add(DivisorClass{1, t}, AxiomSource::TwoTorsionCurveBound);
    }
    return axioms;
}

std::optional<NonEffectivityProof> orbit_sum_rule(const FinAbGroup& tor, const DivisorClass& l,
                                                  const PicAutomorphism& sigma,
                                                  const AxiomSet& axioms) {
    DivisorClass l1 = act(sigma, l);
    DivisorClass l2 = act(sigma, l1);
    DivisorClass sum = divisor_add(tor, l, divisor_add(tor, l1, l2));
    if (auto src = axioms.known_noneffective(sum)) {
        NonEffectivityProof p;
        p.cls = l;
        p.tag = ProofTag::OrbitSum;
        p.offset_used = sigma.cube_root_offset;
        p.obstruction = sum;
        p.axiom_source = *src;
        return p;
    }
    return std::nullopt;
}

PairingResult pairing_rule(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b,
                           const AxiomSet& axioms) {
    PairingResult out;
    DivisorClass sum = divisor_add(tor, a, b);
    auto src = axioms.known_noneffective(sum);
    if (!src) return out;
    auto make_proof = [&](const DivisorClass& cls, const DivisorClass& partner) {
        NonEffectivityProof p;
        p.cls = cls;
        p.tag = ProofTag::Pairing;
        p.partner = partner;
        p.obstruction = sum;
        p.axiom_source = *src;
        return p;
    };
    if (a == b) {
        // 2A non-effective forces A non-effective.
        out.proof = make_proof(a, b);
        return out;
    }
    if (axioms.known_effective(a)) {
        out.proof = make_proof(b, a);
        return out;
    }
    if (axioms.known_effective(b)) {
        out.proof = make_proof(a, b);
        return out;
    }
    out.exclusion = ExclusionConstraint{a, b, sum};
    return out;
}

bool VanishingReport::contains_undetermined(const DivisorClass& d) const {
    return std::find(undetermined.begin(), undetermined.end(), d) != undetermined.end();
}

namespace {

struct BranchOutcome {
    std::map<DivisorClass, NonEffectivityProof> proved;
    std::vector<DivisorClass> undetermined;
    std::vector<ExclusionConstraint> raw_exclusions;
};

// One full fixed-point pass for a fixed choice of cube-root offsets.
BranchOutcome run_branch(const FppDescriptor& surface,
                         const std::vector<PicAutomorphism>& gens, const AxiomSet& axioms,
                         const std::vector<DivisorClass>& candidates) {
    const FinAbGroup& tor = surface.h1;
    BranchOutcome out;

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : candidates) {
            if (out.proved.count(c)) continue;
            if (auto src = axioms.known_noneffective(c)) {
                NonEffectivityProof p;
                p.cls = c;
                p.tag = ProofTag::Axiom;
                p.obstruction = c;
                p.axiom_source = *src;
                out.proved.emplace(c, std::move(p));
                changed = true;
                continue;
            }
            for (std::size_t gi = 0; gi < gens.size() && !out.proved.count(c); ++gi) {
                if (auto p = orbit_sum_rule(tor, c, gens[gi], axioms)) {
                    p->automorphism_index = static_cast<int>(gi);
                    out.proved.emplace(c, std::move(*p));
                    changed = true;
                }
            }
            if (out.proved.count(c)) continue;
            // Self-pairing: 2c known non-effective kills c outright.
            if (auto r = pairing_rule(tor, c, c, axioms); r.proof) {
                out.proved.emplace(c, std::move(*r.proof));
                changed = true;
            }
        }
        // Effectivity transports along automorphisms, so non-effectivity of
        // any orbit member spreads to the whole orbit.
        for (const auto& c : candidates) {
            if (out.proved.count(c)) continue;
            for (std::size_t gi = 0; gi < gens.size() && !out.proved.count(c); ++gi) {
                DivisorClass img = act(gens[gi], c);
                auto it = out.proved.find(img);
                if (it != out.proved.end()) {
                    NonEffectivityProof p = it->second;
                    p.cls = c;
                    out.proved.emplace(c, std::move(p));
                    changed = true;
                }
            }
        }
    }

    for (const auto& c : candidates)
        if (!out.proved.count(c)) out.undetermined.push_back(c);

    for (std::size_t i = 0; i < out.undetermined.size(); ++i)
        for (std::size_t j = i; j < out.undetermined.size(); ++j) {
            auto r = pairing_rule(tor, out.undetermined[i], out.undetermined[j], axioms);
            if (r.exclusion) out.raw_exclusions.push_back(*r.exclusion);
        }
    return out;
}

std::vector<PicAutomorphism> generators_with_offsets(const FppDescriptor& surface,
                                                     const GroupElement& offset) {
    std::vector<PicAutomorphism> gens;
    for (const auto& g : surface.aut_generators) {
        // The identity action keeps its own balanced offset; the chosen branch
        // offset is applied to every generator that admits it.
        std::vector<GroupElement> ok = admissible_cube_root_offsets(surface.h1, g);
        bool admissible = std::find(ok.begin(), ok.end(), offset) != ok.end();
        gens.push_back(with_offset(g, admissible ? offset : surface.h1.zero()));
    }
    return gens;
}

bool same_outcome(const BranchOutcome& a, const BranchOutcome& b) {
    if (a.undetermined != b.undetermined) return false;
    if (a.proved.size() != b.proved.size()) return false;
    for (const auto& [cls, proof] : a.proved) {
        auto it = b.proved.find(cls);
        if (it == b.proved.end()) return false;
        if (proof.tag != it->second.tag) return false;
    }
    auto key = [](const ExclusionConstraint& e) { return std::make_pair(e.a, e.b); };
    std::set<std::pair<DivisorClass, DivisorClass>> ea, eb;
    for (const auto& e : a.raw_exclusions) ea.insert(key(e));
    for (const auto& e : b.raw_exclusions) eb.insert(key(e));
    return ea == eb;
}

}  // namespace

VanishingReport run_vanishing(const FppDescriptor& surface,
                              const std::vector<NonEffectiveAxiom>& extra_axioms) {
    if (!surface.lifts_to_su21)
        throw std::invalid_argument(
            "surface has no cube root of the canonical class; the candidate lattice is undefined");
    if (surface.aut_type == AutType::G21)
        throw std::invalid_argument("G21 surfaces are outside the registry scope");

    const FinAbGroup& tor = surface.h1;
    AxiomSet axioms = default_axioms(surface);
    for (const auto& a : extra_axioms) axioms.add(a.cls, a.source);

    std::vector<DivisorClass> candidates;
    for (const auto& t : tor.elements()) candidates.push_back(DivisorClass{1, t});
    std::sort(candidates.begin(), candidates.end());

    // Branches: every admissible cube-root offset of the first generator; for
    // the surfaces without 3-torsion this is just the zero offset.
    std::vector<GroupElement> offsets = {tor.zero()};
    if (!surface.aut_generators.empty() && !surface.cube_root_fixed) {
        offsets = admissible_cube_root_offsets(surface.h1, surface.aut_generators.front());
        if (offsets.empty()) offsets = {tor.zero()};
    }

    std::vector<BranchOutcome> outcomes;
    for (const auto& off : offsets)
        outcomes.push_back(
            run_branch(surface, generators_with_offsets(surface, off), axioms, candidates));

    VanishingReport rep;
    rep.surface = surface.label;
    rep.candidates = candidates;
    rep.offsets_checked = offsets;
    rep.branch_independent = true;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        rep.branch_independent = rep.branch_independent && same_outcome(outcomes[0], outcomes[i]);

    // Report the default branch (zero offset first in the admissible list).
    const BranchOutcome& main = outcomes.front();
    for (const auto& c : candidates) {
        auto it = main.proved.find(c);
        if (it != main.proved.end()) rep.proved.push_back(it->second);
    }
    rep.undetermined = main.undetermined;

    // Orbits of the undetermined classes under the full generator set.
    std::set<DivisorClass> seen;
    auto gens = generators_with_offsets(surface, offsets.front());
    for (const auto& c : rep.undetermined) {
        if (seen.count(c)) continue;
        ClassOrbit orbit;
        std::vector<DivisorClass> stack{c};
        seen.insert(c);
        while (!stack.empty()) {
            DivisorClass cur = stack.back();
            stack.pop_back();
            orbit.classes.push_back(cur);
            for (const auto& g : gens) {
                DivisorClass img = act(g, cur);
                if (!seen.count(img) && rep.contains_undetermined(img)) {
                    seen.insert(img);
                    stack.push_back(img);
                }
            }
        }
        std::sort(orbit.classes.begin(), orbit.classes.end());
        rep.undetermined_orbits.push_back(std::move(orbit));
    }
    std::sort(rep.undetermined_orbits.begin(), rep.undetermined_orbits.end(),
              [](const ClassOrbit& a, const ClassOrbit& b) { return a.classes < b.classes; });

    auto orbit_of = [&](const DivisorClass& c) -> int {
        for (std::size_t i = 0; i < rep.undetermined_orbits.size(); ++i) {
            const auto& cl = rep.undetermined_orbits[i].classes;
            if (std::find(cl.begin(), cl.end(), c) != cl.end()) return static_cast<int>(i);
        }
        return -1;
    };

    // Exclusions hold orbit-wide: if any member of one orbit excludes a member
    // of another, no member of the first can coexist with any of the second.
    std::set<std::pair<int, int>> orbit_edges;
    for (const auto& e : main.raw_exclusions) {
        int oa = orbit_of(e.a), ob = orbit_of(e.b);
        if (oa < 0 || ob < 0) continue;
        orbit_edges.insert({std::min(oa, ob), std::max(oa, ob)});
        rep.exclusions.push_back(e);
    }
    for (auto [oa, ob] : orbit_edges) {
        rep.orbit_exclusions.emplace_back(oa, ob);
        // Effectivity transports along orbits, so one directly-pairing pair of
        // translates excludes the whole orbit pair; it serves as the witness
        // for every saturated edge.
        std::optional<DivisorClass> witness;
        for (const auto& a2 : rep.undetermined_orbits[oa].classes)
            for (const auto& b2 : rep.undetermined_orbits[ob].classes) {
                DivisorClass sum = divisor_add(tor, a2, b2);
                if (!witness && axioms.known_noneffective(sum)) witness = sum;
            }
        if (!witness) continue;
        for (const auto& a : rep.undetermined_orbits[oa].classes)
            for (const auto& b : rep.undetermined_orbits[ob].classes) {
                bool already = false;
                for (const auto& e : rep.exclusions)
                    already = already || (e.a == a && e.b == b) || (e.a == b && e.b == a);
                if (!already) rep.exclusions.push_back(ExclusionConstraint{a, b, *witness});
            }
    }

    // Independent-set bound over orbits: pick orbits, no two joined by an
    // exclusion edge, maximizing the number of classes. Orbits without any
    // edge are always included; only the edge-touching ones are enumerated.
    std::vector<int> constrained;
    int base = 0;
    {
        std::set<int> touched;
        for (auto [a, b] : orbit_edges) {
            touched.insert(a);
            touched.insert(b);
        }
        for (std::size_t i = 0; i < rep.undetermined_orbits.size(); ++i) {
            if (touched.count(static_cast<int>(i)))
                constrained.push_back(static_cast<int>(i));
            else
                base += static_cast<int>(rep.undetermined_orbits[i].classes.size());
        }
    }
    if (constrained.size() > 25)
        throw std::runtime_error("exclusion graph too large for the exact independent-set bound");
    int best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << constrained.size()); ++mask) {
        bool ok = true;
        for (auto [a, b] : orbit_edges) {
            auto ia = std::find(constrained.begin(), constrained.end(), a) - constrained.begin();
            auto ib = std::find(constrained.begin(), constrained.end(), b) - constrained.begin();
            if ((mask >> ia & 1) && (mask >> ib & 1)) ok = false;
        }
        if (!ok) continue;
        int size = 0;
        for (std::size_t i = 0; i < constrained.size(); ++i)
            if (mask >> i & 1)
                size += static_cast<int>(rep.undetermined_orbits[constrained[i]].classes.size());
        best = std::max(best, size);
    }
    rep.max_simultaneously_effective = base + best;

    std::set<std::string> used;
    for (const auto& p : rep.proved) used.insert(axiom_source_name(p.axiom_source));
    for (const auto& e : rep.exclusions) used.insert("pairing vs " + divisor_to_string(e.obstruction));
    rep.axioms_used.assign(used.begin(), used.end());

    // When two cross-excluded orbits are exchanged by relabeling the torsion
    // generator, at most one orbit (a single generator choice) is effective.
    if (rep.undetermined_orbits.size() == 2 && !rep.orbit_exclusions.empty()) {
        auto torsion_set = [&](const ClassOrbit& o) {
            std::set<GroupElement> s;
            for (const auto& cl : o.classes) s.insert(cl.torsion);
            return s;
        };
        std::set<GroupElement> o0 = torsion_set(rep.undetermined_orbits[0]);
        std::set<GroupElement> o1 = torsion_set(rep.undetermined_orbits[1]);
        for (i64 k = 2; k < tor.exponent(); ++k) {
            if (std::gcd(k, tor.exponent()) != 1) continue;
            std::set<GroupElement> image;
            for (const auto& t : o0) image.insert(tor.scalar_mul(k, t));
            if (image == o1) {
                rep.notes.push_back(
                    "the two undetermined orbits are exchanged by the torsion relabeling t -> " +
                    std::to_string(k) +
                    "t, so up to a generator choice at most one orbit of three classes can be "
                    "effective");
                break;
            }
        }
    }
    return rep;
}

bool replay_proofs(const FppDescriptor& surface, const VanishingReport& report) {
    const FinAbGroup& tor = surface.h1;
    AxiomSet axioms = default_axioms(surface);
    for (const auto& p : report.proved) {
        switch (p.tag) {
            case ProofTag::Axiom: {
                if (!axioms.known_noneffective(p.cls)) return false;
                break;
            }
            case ProofTag::OrbitSum: {
                // The recorded generator with the recorded offset must
                // reproduce the obstruction for some orbit member, because
                // transported proofs keep their source witness.
                bool ok = false;
                for (const auto& base : surface.aut_generators) {
                    std::vector<GroupElement> adm = admissible_cube_root_offsets(tor, base);
                    if (std::find(adm.begin(), adm.end(), p.offset_used) == adm.end()) continue;
                    PicAutomorphism sigma = with_offset(base, p.offset_used);
                    auto q = orbit_sum_rule(tor, p.cls, sigma, axioms);
                    ok = ok || (q && q->obstruction == p.obstruction);
                }
                if (!ok) return false;
                break;
            }
            case ProofTag::Pairing: {
                if (!p.partner) return false;
                auto r = pairing_rule(tor, p.cls, *p.partner, axioms);
                if (!r.proof || !(r.proof->cls == p.cls)) return false;
                DivisorClass sum = divisor_add(tor, p.cls, *p.partner);
                if (!(sum == p.obstruction)) return false;
                break;
            }
        }
    }
    for (const auto& e : report.exclusions) {
        DivisorClass sum = divisor_add(tor, e.a, e.b);
        bool direct = axioms.known_noneffective(sum).has_value();
        if (!direct) {
            // Saturated edges replay through orbit transport: some generator
            // power pair of (a, b) must pair directly.
            bool found = false;
            auto gens = surface.aut_generators;
            std::vector<DivisorClass> ia{e.a}, ib{e.b};
            for (const auto& g : gens) {
                DivisorClass x = e.a, y = e.b;
                for (int i = 0; i < 3; ++i) {
                    x = act(g, x);
                    for (const auto& yy : ib) {
                        DivisorClass s = divisor_add(tor, x, yy);
                        found = found || axioms.known_noneffective(s).has_value();
                    }
                    ia.push_back(x);
                }
                for (int i = 0; i < 3; ++i) {
                    y = act(g, y);
                    for (const auto& xx : ia) {
                        DivisorClass s = divisor_add(tor, xx, y);
                        found = found || axioms.known_noneffective(s).has_value();
                    }
                    ib.push_back(y);
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

SeparationCertificate separation_obstruction(const FinAbGroup& tor,
                                             const std::vector<DivisorClass>& sigma_orbit,
                                             const PicAutomorphism& sigma, PairCase pair_case) {
    if (sigma_orbit.size() != 3)
        throw std::invalid_argument("expected the three members of a sigma-orbit");
    const DivisorClass &d1 = sigma_orbit[0], &d2 = sigma_orbit[1], &d3 = sigma_orbit[2];
    if (!(act(sigma, d1) == d2 && act(sigma, d2) == d3 && act(sigma, d3) == d1))
        throw std::invalid_argument("orbit is not closed under sigma");

    DivisorClass k = canonical_class(tor);
    DivisorClass residual = divisor_sub(tor, k, d1);  // K - D1, the class of the unseparated pair
    DivisorClass cut;
    switch (pair_case) {
        case PairCase::Distinct:
            cut = divisor_add(tor, d2, d3);
            break;
        case PairCase::InfinitelyNear1:
            cut = divisor_scalar(tor, 2, d2);
            break;
        case PairCase::InfinitelyNear2:
            cut = divisor_scalar(tor, 2, d3);
            break;
    }
    DivisorClass delta = divisor_sub(tor, cut, residual);
    if (delta.degree != 0) throw std::logic_error("separation certificate must be a torsion class");

    SeparationCertificate cert;
    cert.pair_case = pair_case;
    cert.delta = delta.torsion;
    cert.verdict = torsion_restriction_nonvanishing(tor, d1, delta.torsion) ==
                           RestrictionVerdict::Nontrivial
                       ? ObstructionVerdict::Contradicted
                       : ObstructionVerdict::Inconclusive;
    return cert;
}

BicanonicalReport bicanonical_verdict(const FppDescriptor& surface) {
    if (surface.aut_type == AutType::G21)
        throw std::invalid_argument("G21 surfaces are outside the registry scope");

    BicanonicalReport rep;
    rep.surface = surface.label;
    rep.vanishing = run_vanishing(surface);

    // Base points never occur; separation can only fail along a curve D with
    // K = 3D, i.e. a degree-1 class.
    auto bp = reider_filter(9, 1, 3, ReiderMode::BasePoint);
    if (!bp.empty()) throw std::logic_error("bicanonical system unexpectedly has base points");
    rep.separation_cases = reider_filter(9, 1, 3, ReiderMode::Separation);

    const FinAbGroup& tor = surface.h1;

    // A pair of unseparated points on a curve D1 in an orbit {D1, D2, D3} is
    // contradicted when an automorphism fixing every divisor class pins the
    // pair to the fixed points cut by D2 and D3.
    bool has_class_fixing_generator = false;
    for (const auto& g : surface.aut_generators)
        has_class_fixing_generator =
            has_class_fixing_generator ||
            (is_identity(g.torsion_action) && g.cube_root_offset == tor.zero() &&
             surface.aut_generators.size() > 1);

    bool all_obstructed = !rep.vanishing.undetermined_orbits.empty();
    for (const auto& orbit : rep.vanishing.undetermined_orbits) {
        if (orbit.classes.size() != 3 || !has_class_fixing_generator) {
            all_obstructed = false;
            rep.orbit_obstructions.emplace_back();
            continue;
        }
        // Order the orbit as D1, sigma*D1, sigma^2*D1 under a rotating generator.
        const PicAutomorphism* rot = nullptr;
        for (const auto& g : surface.aut_generators)
            if (!(act(g, orbit.classes[0]) == orbit.classes[0])) {
                rot = &g;
                break;
            }
        if (!rot) {
            all_obstructed = false;
            rep.orbit_obstructions.emplace_back();
            continue;
        }
        std::vector<DivisorClass> ordered{orbit.classes[0], act(*rot, orbit.classes[0])};
        ordered.push_back(act(*rot, ordered[1]));

        std::vector<SeparationCertificate> certs;
        bool orbit_ok = true;
        for (PairCase pc : {PairCase::Distinct, PairCase::InfinitelyNear1, PairCase::InfinitelyNear2}) {
            SeparationCertificate c = separation_obstruction(tor, ordered, *rot, pc);
            orbit_ok = orbit_ok && c.verdict == ObstructionVerdict::Contradicted;
            certs.push_back(c);
        }
        rep.orbit_obstructions.push_back(std::move(certs));
        all_obstructed = all_obstructed && orbit_ok;
    }

    if (rep.vanishing.undetermined.empty() || all_obstructed) {
        rep.verdict = BicanonicalVerdict::Embedding;
        rep.exceptional_points_max = 0;
    } else {
        rep.verdict = BicanonicalVerdict::EmbeddingOutsideFixedPoints;
        // One possible curve pins two fixed points, two curves pin three.
        int curves = rep.vanishing.max_simultaneously_effective;
        rep.exceptional_points_max = curves >= 2 ? 3 : 2;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// JSON and explanation
// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const VanishingReport& r) {
    nlohmann::ordered_json proved = nlohmann::ordered_json::array();
    for (const auto& p : r.proved) {
        nlohmann::ordered_json jp = {{"class", to_json(p.cls)},
                                     {"tag", proof_tag_name(p.tag)},
                                     {"axiom", axiom_source_name(p.axiom_source)},
                                     {"obstruction", to_json(p.obstruction)}};
        if (p.tag == ProofTag::OrbitSum) {
            jp["automorphism_index"] = p.automorphism_index;
            jp["cube_root_offset"] = p.offset_used.coords;
        }
        if (p.partner) jp["partner"] = to_json(*p.partner);
        proved.push_back(jp);
    }
    nlohmann::ordered_json undet = nlohmann::ordered_json::array();
    for (const auto& c : r.undetermined) undet.push_back(to_json(c));
    nlohmann::ordered_json orbits = nlohmann::ordered_json::array();
    for (const auto& o : r.undetermined_orbits) {
        nlohmann::ordered_json jo = nlohmann::ordered_json::array();
        for (const auto& c : o.classes) jo.push_back(to_json(c));
        orbits.push_back(jo);
    }
    nlohmann::ordered_json excl = nlohmann::ordered_json::array();
    for (const auto& e : r.exclusions)
        excl.push_back({{"a", to_json(e.a)}, {"b", to_json(e.b)}, {"sum", to_json(e.obstruction)}});
    nlohmann::ordered_json offsets = nlohmann::ordered_json::array();
    for (const auto& o : r.offsets_checked) offsets.push_back(o.coords);
    return {{"surface", r.surface},
            {"candidates", r.candidates.size()},
            {"proved_noneffective", proved},
            {"undetermined", undet},
            {"undetermined_orbits", orbits},
            {"exclusions", excl},
            {"orbit_exclusions", r.orbit_exclusions},
            {"max_simultaneously_effective", r.max_simultaneously_effective},
            {"cube_root_branches", offsets},
            {"branch_independent", r.branch_independent},
            {"axioms_used", r.axioms_used},
            {"notes", r.notes}};
}

nlohmann::ordered_json to_json(const BicanonicalReport& r) {
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const auto& c : r.separation_cases)
        cases.push_back({{"case", reider_case_name(c.case_id)},
                         {"witness_multiple", c.witness_multiple},
                         {"D2", c.d_square},
                         {"DL", c.d_dot_l},
                         {"KD", c.k_dot_d},
                         {"p_a", c.p_a}});
    nlohmann::ordered_json obstructions = nlohmann::ordered_json::array();
    for (const auto& certs : r.orbit_obstructions) {
        nlohmann::ordered_json jo = nlohmann::ordered_json::array();
        for (const auto& c : certs) {
            const char* pc = c.pair_case == PairCase::Distinct
                                 ? "DISTINCT"
                                 : (c.pair_case == PairCase::InfinitelyNear1 ? "INFINITELY_NEAR_1"
                                                                             : "INFINITELY_NEAR_2");
            jo.push_back({{"pair_case", pc},
                          {"delta", c.delta.coords},
                          {"verdict", c.verdict == ObstructionVerdict::Contradicted
                                          ? "CONTRADICTED"
                                          : "INCONCLUSIVE"}});
        }
        obstructions.push_back(jo);
    }
    return {{"surface", r.surface},
            {"verdict", r.verdict == BicanonicalVerdict::Embedding
                            ? "EMBEDDING"
                            : "EMBEDDING_OUTSIDE_FIXED_POINTS"},
            {"exceptional_points_max", r.exceptional_points_max},
            {"reider_separation_cases", cases},
            {"orbit_obstructions", obstructions},
            {"vanishing", to_json(r.vanishing)}};
}

std::string explain_class(const FppDescriptor& surface, const VanishingReport& report,
                          const DivisorClass& cls) {
    const FinAbGroup& tor = surface.h1;
    std::string out = "class " + divisor_to_string(cls) + " on " + surface.label + ":\n";
    for (const auto& p : report.proved) {
        if (!(p.cls == cls)) continue;
        switch (p.tag) {
            case ProofTag::OrbitSum: {
                out += "  non-effective by the orbit-sum rule: L + s*L + s^2*L = " +
                       divisor_to_string(p.obstruction) +
                       ", which is known non-effective (" + axiom_source_name(p.axiom_source) +
                       ").\n  If L were effective all three orbit members would be, making the "
                       "sum effective.\n";
                return out;
            }
            case ProofTag::Pairing: {
                out += "  non-effective by the pairing rule: together with " +
                       divisor_to_string(*p.partner) + " it sums to " +
                       divisor_to_string(p.obstruction) + ", known non-effective (" +
                       axiom_source_name(p.axiom_source) + ").\n";
                if (*p.partner == p.cls)
                    out += "  The partner is the class itself: twice an effective class is "
                           "effective.\n";
                return out;
            }
            case ProofTag::Axiom: {
                out += "  non-effective by axiom: " + axiom_source_name(p.axiom_source) + ".\n";
                return out;
            }
        }
    }
    if (report.contains_undetermined(cls)) {
        out += "  undetermined: no rule applies.\n";
        for (const auto& e : report.exclusions)
            if (e.a == cls || e.b == cls)
                out += "  exclusion: not simultaneously effective with " +
                       divisor_to_string(e.a == cls ? e.b : e.a) + " (sum " +
                       divisor_to_string(e.obstruction) + " is non-effective).\n";
        return out;
    }
    if (std::find(report.candidates.begin(), report.candidates.end(),
                  DivisorClass{cls.degree, tor.reduce(cls.torsion)}) == report.candidates.end())
        out += "  not a degree-1 candidate class on this surface.\n";
    return out;
}

}  // namespace fpp
