#include "fpp/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "fpp/geometry.hpp"
#include "fpp/polyfp.hpp"
#include "fpp/simplicial.hpp"
#include "fpp/vanishing.hpp"

namespace fpp {

namespace {
using i64 = std::int64_t;
}

int VerificationRun::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (!c.pass) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Group sampling
// ---------------------------------------------------------------------------

namespace {

void partitions_of(int n, std::vector<std::vector<int>>& out, std::vector<int> cur = {},
                   int max_part = 0) {
    if (max_part == 0) max_part = n;
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, out, cur, p);
        cur.pop_back();
    }
}

}  // namespace

std::vector<FinAbGroup> abelian_groups_up_to(i64 max_order) {
    std::vector<FinAbGroup> out;
    for (i64 n = 1; n <= max_order; ++n) {
        // factor n
        std::vector<std::pair<i64, int>> fact;
        i64 m = n;
        for (i64 p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                fact.push_back({p, e});
            }
        if (m > 1) fact.push_back({m, 1});

        std::vector<std::vector<std::vector<int>>> parts(fact.size());
        for (std::size_t i = 0; i < fact.size(); ++i) partitions_of(fact[i].second, parts[i]);

        std::vector<std::size_t> idx(fact.size(), 0);
        for (;;) {
            std::vector<i64> moduli;
            for (std::size_t i = 0; i < fact.size(); ++i)
                for (int e : parts[i][idx[i]]) {
                    i64 pw = 1;
                    for (int t = 0; t < e; ++t) pw *= fact[i].first;
                    moduli.push_back(pw);
                }
            out.push_back(canonicalize_moduli(moduli).group);
            std::size_t c = 0;
            while (c < fact.size() && ++idx[c] == parts[c].size()) idx[c++] = 0;
            if (c == fact.size()) break;
            if (fact.empty()) break;
        }
    }
    return out;
}

namespace {

// Random well-defined endomorphism matrix entry at (i, j): a multiple of
// d_i / gcd(d_i, d_j).
GroupEndo random_endo(std::mt19937_64& rng, const FinAbGroup& g) {
    std::size_t k = g.rank();
    const auto& d = g.invariant_factors();
    std::vector<std::vector<i64>> m(k, std::vector<i64>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            i64 step = d[i] / std::gcd(d[i], d[j]);
            i64 slots = d[i] / step;
            m[i][j] = step * static_cast<i64>(rng() % static_cast<std::uint64_t>(slots));
        }
    return GroupEndo(g, std::move(m));
}

std::optional<GroupEndo> random_automorphism(std::mt19937_64& rng, const FinAbGroup& g,
                                             int tries = 40) {
    for (int t = 0; t < tries; ++t) {
        GroupEndo e = random_endo(rng, g);
        if (inverse_endo(e)) return e;
    }
    return std::nullopt;
}

}  // namespace

std::vector<SampledAut> sample_coprime_automorphisms(std::uint64_t seed, int count, i64 max_order) {
    std::mt19937_64 rng(seed);
    std::vector<FinAbGroup> groups = abelian_groups_up_to(max_order);
    std::vector<SampledAut> out;
    std::int64_t budget = std::int64_t{2000} * count;
    while (static_cast<int>(out.size()) < count) {
        if (--budget < 0)
            throw std::runtime_error("no coprime-order automorphisms found within the draw budget");
        const FinAbGroup& g = groups[rng() % groups.size()];
        if (g.is_trivial()) continue;
        auto a = random_automorphism(rng, g);
        if (!a) continue;
        auto ord = endo_order(*a, 4096);
        if (!ord) continue;
        // strip the primes dividing exp(H) out of the order
        i64 coprime_part = *ord;
        while (std::gcd(coprime_part, g.exponent()) != 1)
            coprime_part /= std::gcd(coprime_part, g.exponent());
        GroupEndo power = endo_pow(*a, *ord / coprime_part);
        if (coprime_part < 2) continue;
        out.push_back(SampledAut{g, power, coprime_part});
    }
    return out;
}

std::vector<GroupEndo> sample_order3_automorphisms(std::mt19937_64& rng, const FinAbGroup& g,
                                                   int want, int tries) {
    std::vector<GroupEndo> picked;
    for (int t = 0; t < tries && static_cast<int>(picked.size()) < want; ++t) {
        auto a = random_automorphism(rng, g, 4);
        if (!a) continue;
        auto ord = endo_order(*a, 512);
        if (!ord || *ord % 3 != 0) continue;
        GroupEndo sigma = endo_pow(*a, *ord / 3);
        if (std::find(picked.begin(), picked.end(), sigma) == picked.end())
            picked.push_back(std::move(sigma));
    }
    return picked;
}

int pinned_fixed_dimension(int n, i64 p, i64 m, i64 max_fixed_order) {
    int bound = 0;
    i64 size = 1;
    while (size * p <= max_fixed_order) {
        size *= p;
        ++bound;
    }
    CyclicFixedDims dims = cyclic_action_fixed_count(n, p, m, true, bound);
    if (dims.feasible.size() != 1)
        throw std::logic_error("fixed dimension not pinned by the constraints");
    return *dims.feasible.begin();
}

// ---------------------------------------------------------------------------
// The checks
// ---------------------------------------------------------------------------

namespace {

CheckResult check_registry_consistency(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"registry.consistency",
                  "for every surface and order-3 subgroup, |H1_sigma| matches the abelianization "
                  "order of pi_1 of the quotient",
                  true,
                  ""};
    std::ostringstream detail;
    for (const auto& row : registry_consistency(rows)) {
        bool ok = row.coprime_case ? row.equality_ok : (row.divisibility_ok && row.equality_ok);
        if (!ok) {
            r.pass = false;
            detail << row.label << "#" << row.generator_index << ": |H1_sigma|="
                   << row.coinvariant_order << " vs |pi1^ab|=" << row.pi1_abelianization_order
                   << "; ";
        }
    }
    std::ostringstream counts;
    counts << registry_consistency(rows).size() << " subgroup columns checked";
    r.detail = r.pass ? counts.str() : detail.str();
    return r;
}

CheckResult check_cyclotomic() {
    CheckResult r{"cyclotomic.x7_mod2",
                  "x^7 - 1 factors over F_2 as (x+1)(x^3+x^2+1)(x^3+x+1)", true, ""};
    auto fac = factor_cyclotomic_mod_p(7, 2);
    std::vector<std::string> got;
    for (const auto& f : fac) got.push_back(f.to_string());
    std::vector<std::string> want{"x + 1", "x^3 + x^2 + 1", "x^3 + x + 1"};
    r.pass = got == want;
    std::ostringstream d;
    for (const auto& s : got) d << "(" << s << ")";
    r.detail = d.str();
    // product must reconstruct x^7 - 1
    PolyFp prod = poly_from_coeffs(2, {1});
    for (const auto& f : fac) prod = poly_mul(prod, f);
    PolyFp target = poly_from_coeffs(2, {1, 0, 0, 0, 0, 0, 0, 1});
    r.pass = r.pass && prod == target;
    return r;
}

CheckResult check_c7_fixed_dims() {
    CheckResult r{"cyclotomic.c7_fixed_dims",
                  "a faithful C7-action on C2^n with fixed subgroup of order <= 3 fixes a "
                  "subspace of dimension 0, 1, 0 for n = 3, 4, 6",
                  true,
                  ""};
    int d3 = pinned_fixed_dimension(3, 2, 7, 3);
    int d4 = pinned_fixed_dimension(4, 2, 7, 3);
    int d6 = pinned_fixed_dimension(6, 2, 7, 3);
    r.pass = d3 == 0 && d4 == 1 && d6 == 0;

    // Cross-check through explicit companion-block actions and the invariant
    // subgroup computation.
    auto companions = factor_cyclotomic_mod_p(7, 2);
    auto block = [&](const PolyFp& f) {
        int deg = f.degree();
        std::vector<std::vector<i64>> m(deg, std::vector<i64>(deg, 0));
        for (int j = 0; j + 1 < deg; ++j) m[j + 1][j] = 1;
        for (int i = 0; i < deg; ++i) m[i][deg - 1] = (2 - f.c[i]) % 2;  // -c_i mod 2
        return m;
    };
    auto embed = [&](const std::vector<std::vector<std::vector<i64>>>& blocks) {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.size();
        std::vector<std::vector<i64>> m(n, std::vector<i64>(n, 0));
        std::size_t off = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) m[off + i][off + j] = b[i][j];
            off += b.size();
        }
        return m;
    };
    const PolyFp& c3a = companions[1];  // x^3+x^2+1
    const PolyFp& c3b = companions[2];  // x^3+x+1
    FinAbGroup c2_3({2, 2, 2}), c2_4({2, 2, 2, 2}), c2_6({2, 2, 2, 2, 2, 2});
    i64 f3 = invariants(c2_3, GroupEndo(c2_3, embed({block(c3b)}))).order();
    i64 f4 = invariants(c2_4, GroupEndo(c2_4, embed({block(c3b), {{1}}}))).order();
    i64 f6 = invariants(c2_6, GroupEndo(c2_6, embed({block(c3b), block(c3a)}))).order();
    r.pass = r.pass && f3 == 1 && f4 == 2 && f6 == 1;

    std::ostringstream d;
    d << "fixed dims " << d3 << "," << d4 << "," << d6 << "; companion-action fixed orders " << f3
      << "," << f4 << "," << f6;
    r.detail = d.str();
    return r;
}

CheckResult check_trace_oracle(std::uint64_t seed) {
    CheckResult r{"trace.oracle_equivalence",
                  "for coprime-order automorphisms, Im(Tr) = Ker(g-1) and Im(g-1) = Ker(Tr), by "
                  "exhaustive enumeration on >= 500 samples",
                  true,
                  ""};
    auto samples = sample_coprime_automorphisms(seed, 500, 200);
    int failures = 0;
    for (const auto& s : samples) {
        auto cert = coinv_inv_isomorphism_check(s.group, s.aut, s.order);
        bool ok = cert.precondition_ok && cert.ok() &&
                  cert.coinvariants_order == cert.invariants_order;
        if (!ok) ++failures;
    }
    r.pass = failures == 0;
    std::ostringstream d;
    d << samples.size() << " samples, " << failures << " failures";
    r.detail = d.str();
    return r;
}

CheckResult check_orbit_sum_identity(std::uint64_t seed) {
    CheckResult r{"orbit_sum.identity_scan",
                  "t + s(t) + s^2(t) = 0 for every order-3 automorphism with coinvariants 0 or C3 "
                  "on every abelian group of order <= 500 prime to 9",
                  true,
                  ""};
    std::mt19937_64 rng(seed);
    int groups_hit = 0, auts_checked = 0, failures = 0;
    for (const auto& g : abelian_groups_up_to(500)) {
        if (g.order() % 9 == 0 || g.is_trivial()) continue;
        bool hit = false;
        for (const auto& sigma : sample_order3_automorphisms(rng, g, 20, 200)) {
            i64 co = coinvariants(g, sigma).quotient.order();
            if (co != 1 && co != 3) continue;  // outside the lemma's hypothesis
            hit = true;
            ++auts_checked;
            auto rep = little_lemma_check(g, sigma, 1000);
            if (!rep.preconditions_ok() || !rep.identity_holds) ++failures;
        }
        if (hit) ++groups_hit;
    }
    r.pass = failures == 0 && groups_hit > 0;
    std::ostringstream d;
    d << groups_hit << " groups, " << auts_checked << " qualifying automorphisms, " << failures
      << " failures";
    r.detail = d.str();
    return r;
}

CheckResult check_vanishing_rows_1_6(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"vanishing.rows_1_6",
                  "no degree-1 class is effective on the first six table-1 surfaces, in every "
                  "cube-root branch",
                  true,
                  ""};
    std::ostringstream d;
    for (std::size_t i = 0; i < 6 && i < rows.size(); ++i) {
        VanishingReport rep = run_vanishing(rows[i]);
        bool ok = rep.undetermined.empty() && rep.branch_independent;
        if (!ok) {
            r.pass = false;
            d << rows[i].label << ": " << rep.undetermined.size() << " undetermined; ";
        } else {
            d << rows[i].label << ": " << rep.proved.size() << " proved ("
              << rep.offsets_checked.size() << " branches); ";
        }
    }
    r.detail = d.str();
    return r;
}

CheckResult check_vanishing_row7(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"vanishing.row7",
                  "on the H1 = C14 surface exactly 8 degree-1 classes are proved non-effective "
                  "and 6 remain, in two cross-excluded orbits of three",
                  true,
                  ""};
    const FppDescriptor& row7 = rows.at(6);
    VanishingReport rep = run_vanishing(row7);
    bool counts = rep.proved.size() == 8 && rep.undetermined.size() == 6;
    bool orbits = rep.undetermined_orbits.size() == 2 &&
                  rep.undetermined_orbits[0].classes.size() == 3 &&
                  rep.undetermined_orbits[1].classes.size() == 3;
    bool excl = rep.orbit_exclusions.size() == 1 && rep.exclusions.size() == 9 &&
                rep.max_simultaneously_effective == 3;
    r.pass = counts && orbits && excl && rep.branch_independent;
    std::ostringstream d;
    d << rep.proved.size() << " proved, " << rep.undetermined.size() << " undetermined, "
      << rep.exclusions.size() << " exclusion pairs, at most "
      << rep.max_simultaneously_effective << " simultaneously effective";
    r.detail = d.str();
    return r;
}

CheckResult check_separation_row7(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"separation.row7",
                  "each non-separation scenario on the C14 surface forces a nonzero torsion "
                  "class to restrict trivially: t2 (distinct) and +-(t2 + 5 t7) (infinitely near)",
                  true,
                  ""};
    const FppDescriptor& row7 = rows.at(6);
    const FinAbGroup& tor = row7.h1;
    VanishingReport rep = run_vanishing(row7);
    // t2 and t7 in canonical coordinates
    GroupElement t2 = tor.zero(), t7 = tor.zero();
    for (const auto& e : tor.elements()) {
        if (tor.element_order(e) == 2) t2 = e;
    }
    const PicAutomorphism* sigma = nullptr;
    for (const auto& g : row7.aut_generators)
        if (!is_identity(g.torsion_action)) sigma = &g;
    if (!sigma || rep.undetermined_orbits.empty()) {
        r.pass = false;
        r.detail = "missing rotating automorphism or undetermined orbit";
        return r;
    }
    std::ostringstream d;
    for (const auto& orbit : rep.undetermined_orbits) {
        DivisorClass d1 = orbit.classes.front();
        t7 = tor.sub(d1.torsion, t2);
        std::vector<DivisorClass> ordered{d1, act(*sigma, d1), act(*sigma, act(*sigma, d1))};
        auto distinct = separation_obstruction(tor, ordered, *sigma, PairCase::Distinct);
        auto near1 = separation_obstruction(tor, ordered, *sigma, PairCase::InfinitelyNear1);
        auto near2 = separation_obstruction(tor, ordered, *sigma, PairCase::InfinitelyNear2);
        GroupElement expected_near = tor.add(t2, tor.scalar_mul(5, t7));
        bool ok = distinct.delta == t2 &&
                  (near1.delta == expected_near || near1.delta == tor.neg(expected_near)) &&
                  (near2.delta == expected_near || near2.delta == tor.neg(expected_near)) &&
                  distinct.verdict == ObstructionVerdict::Contradicted &&
                  near1.verdict == ObstructionVerdict::Contradicted &&
                  near2.verdict == ObstructionVerdict::Contradicted;
        r.pass = r.pass && ok;
        d << divisor_to_string(d1) << ": delta(distinct)=" << divisor_to_string({0, distinct.delta})
          << " delta(near)=" << divisor_to_string({0, near1.delta}) << "; ";
    }
    r.detail = d.str();
    return r;
}

CheckResult check_bicanonical_table1(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"bicanonical.table1",
                  "the bicanonical map is an embedding for all seven table-1 surfaces", true, ""};
    std::ostringstream d;
    for (std::size_t i = 0; i < 7 && i < rows.size(); ++i) {
        BicanonicalReport rep = bicanonical_verdict(rows[i]);
        if (rep.verdict != BicanonicalVerdict::Embedding) {
            r.pass = false;
            d << rows[i].label << ": not an embedding; ";
        }
    }
    if (r.pass) d << "7 surfaces, verdict EMBEDDING";
    r.detail = d.str();
    return r;
}

CheckResult check_vanishing_c6(const std::vector<FppDescriptor>& rows) {
    CheckResult r{"vanishing.c6_rows",
                  "the H1 = C6 surfaces carry a forced trivial action, at most two undetermined "
                  "degree-1 classes, and embed outside at most 3 fixed points",
                  true,
                  ""};
    std::ostringstream d;
    for (const auto& row : rows) {
        if (!row.h1_is_c6) continue;
        bool trivial = true;
        for (const auto& g : row.aut_generators) trivial = trivial && is_identity(g.torsion_action);
        BicanonicalReport rep = bicanonical_verdict(row);
        bool ok = trivial && rep.vanishing.undetermined.size() <= 2 &&
                  rep.vanishing.max_simultaneously_effective <= 2 &&
                  rep.verdict == BicanonicalVerdict::EmbeddingOutsideFixedPoints &&
                  rep.exceptional_points_max <= 3 && rep.vanishing.branch_independent;
        r.pass = r.pass && ok;
        d << row.label << ": " << rep.vanishing.undetermined.size() << " undetermined, "
          << rep.exceptional_points_max << " exceptional points; ";
    }
    r.detail = d.str();
    return r;
}

CheckResult check_reider() {
    CheckResult r{"reider.bicanonical_filter",
                  "for L = K with L^2 = 9 on a rank-1 unimodular lattice the separation filter "
                  "leaves exactly the K = 3D case with D^2 = 1, K.D = 3, p_a = 3, and the "
                  "base-point filter is empty",
                  true,
                  ""};
    auto sep = reider_filter(9, 1, 3, ReiderMode::Separation);
    auto bp = reider_filter(9, 1, 3, ReiderMode::BasePoint);
    r.pass = sep.size() == 1 && sep[0].case_id == ReiderCase::SEP_D && sep[0].d_square == 1 &&
             sep[0].d_dot_l == 3 && sep[0].k_dot_d == 3 && sep[0].p_a == 3 && bp.empty();
    std::ostringstream d;
    d << "separation cases: " << sep.size() << " (SEP_D), base-point cases: " << bp.size();
    r.detail = d.str();
    return r;
}

CheckResult check_genus() {
    CheckResult r{"genus.degree1",
                  "a degree-1 effective class is a smooth genus-3 curve once geodesic curves are "
                  "excluded",
                  true,
                  ""};
    FinAbGroup trivial;
    DivisorClass d1{1, trivial.zero()};
    auto cert = genus_certificate(d1, true);
    auto weak = genus_certificate(d1, false);
    r.pass = cert.p_a == 3 && cert.geometric_genus_lower_bound == 3 &&
             cert.verdict == SmoothnessVerdict::Smooth &&
             weak.verdict == SmoothnessVerdict::Inconclusive;
    std::ostringstream d;
    d << "p_a=" << cert.p_a << " bound=" << cert.geometric_genus_lower_bound;
    r.detail = d.str();
    return r;
}

CheckResult check_hj_pullback() {
    CheckResult r{"resolve.a2_pullback",
                  "1/3(1,2) resolves to the chain [2,2]; a curve through two such points with "
                  "incidence (1,0) pulls back with coefficients (2/3,1/3) and proper transform of "
                  "square -1; half-integer coefficients are impossible",
                  true,
                  ""};
    ResolutionGraph a2 = hirzebruch_jung(3, 2);
    bool chain = a2.hj == std::vector<i64>{2, 2} && a2.is_du_val() &&
                 a2.discrepancies == std::vector<Rational>{Rational(0), Rational(0)};
    auto pb = pullback_proper_transform({a2, a2}, {{1, 0}, {1, 0}}, Rational(1, 3));
    bool coeffs = pb.coefficients[0] == std::vector<Rational>{Rational(2, 3), Rational(1, 3)} &&
                  pb.coefficients[1] == pb.coefficients[0] &&
                  pb.proper_transform_square == Rational(-1);
    // The refuted half-coefficient variant: no incidence vector on an A2 chain
    // yields denominator 2.
    bool no_halves = true;
    for (i64 a = 0; a <= 2 && no_halves; ++a)
        for (i64 b = 0; b <= 2 && no_halves; ++b) {
            if (a == 0 && b == 0) continue;
            auto q = pullback_proper_transform({a2}, {{a, b}}, Rational(1, 3));
            for (const auto& c : q.coefficients[0]) no_halves = no_halves && denominator(c) != 2;
        }
    r.pass = chain && coeffs && no_halves;
    std::ostringstream d;
    d << "chain [2,2], coefficients (" << rational_to_string(pb.coefficients[0][0]) << ","
      << rational_to_string(pb.coefficients[0][1])
      << "), D'^2 = " << rational_to_string(pb.proper_transform_square);
    r.detail = d.str();
    return r;
}

CheckResult check_quotient(QuotientType t, const char* name, i64 k2, i64 e) {
    CheckResult r{std::string("quotsing.") + name, "", true, ""};
    std::ostringstream stmt;
    stmt << "the " << name << " quotient of a fake projective plane resolves to K^2 = " << k2
         << ", e = " << e << ", chi = 1";
    r.statement = stmt.str();
    QuotientInvariants q = quotient_invariants_for(t);
    r.pass = q.k2_resolution == Rational(k2) && q.euler_resolution == e && q.chi == 1;
    if (t == QuotientType::C7 || t == QuotientType::G21) {
        ResolutionGraph g = hirzebruch_jung(7, 5);
        r.pass = r.pass && g.hj == std::vector<i64>{2, 2, 3} &&
                 g.discrepancies == std::vector<Rational>{Rational(-1, 7), Rational(-2, 7),
                                                          Rational(-3, 7)};
        // elliptic-surface pi_1 possibilities: gcd of the multiple fibers
        r.pass = r.pass && elliptic_pi1_datum(2, 3) == 1 && elliptic_pi1_datum(2, 4) == 2 &&
                 elliptic_pi1_datum(3, 3) == 3;
    }
    std::ostringstream d;
    d << "K^2 = " << rational_to_string(q.k2_resolution) << ", e = " << q.euler_resolution
      << ", chi = " << q.chi;
    r.detail = d.str();
    return r;
}

// 4x4 diagonally triangulated torus with the point reflection (i,j) -> (-i,-j).
SimplicialComplex grid_torus(int n, SimplicialAction* reflection = nullptr) {
    auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    std::vector<std::vector<int>> simplices;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            simplices.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            simplices.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
        }
    SimplicialComplex k = closure(simplices);
    if (reflection) {
        std::map<int, int> g;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[vid(i, j)] = vid(-i, -j);
        reflection->generators = {g};
    }
    return k;
}

CheckResult check_torus_involution() {
    CheckResult r{"homology.torus_involution",
                  "the point reflection of a triangulated torus has coinvariants C2 x C2, trivial "
                  "quotient homology, and the coinvariant surjection holds",
                  true,
                  ""};
    SimplicialAction refl;
    SimplicialComplex torus = grid_torus(4, &refl);
    Homology1 h = h1(torus);
    bool torus_ok = h.free_rank == 2 && h.torsion.is_trivial();
    auto rep = coinvariant_surjection_check(torus, refl);
    bool ok = rep.stabilizers_generate && rep.coinvariants.free_rank == 0 &&
              rep.coinvariants.torsion == FinAbGroup({2, 2}) && rep.h1_quotient.is_trivial() &&
              rep.surjective && rep.kernel.free_rank == 0 &&
              rep.kernel.torsion == FinAbGroup({2, 2});
    r.pass = torus_ok && ok;
    std::ostringstream d;
    d << "H1(torus) = Z^" << h.free_rank << ", H_G = " << rep.coinvariants.to_string()
      << ", H1(quotient) = " << rep.h1_quotient.to_string() << ", kernel "
      << rep.kernel.to_string();
    r.detail = d.str();
    return r;
}

CheckResult check_circle_c3() {
    CheckResult r{"homology.circle_c3",
                  "a free C3-rotation of a circle realizes the exact sequence Z -> Z -> C3 -> 0 "
                  "with image of index 3",
                  true,
                  ""};
    // hexagon with rotation by two
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6});
    SimplicialComplex hexagon = closure(edges);
    SimplicialAction rot;
    {
        std::map<int, int> g;
        for (int i = 0; i < 6; ++i) g[i] = (i + 2) % 6;
        rot.generators = {g};
    }
    auto surj = coinvariant_surjection_check(hexagon, rot);
    auto seq = exact_sequence_ii_check(hexagon, rot);
    bool hypothesis_fails = !surj.stabilizers_generate && !surj.surjective;
    bool seq_ok = seq.coinvariants.free_rank == 1 && seq.h1_quotient.free_rank == 1 &&
                  seq.g_mod_k_ab.torsion == FinAbGroup({3}) && seq.right_map_surjective &&
                  seq.middle_exact && seq.middle_cokernel.torsion == FinAbGroup({3});
    r.pass = hypothesis_fails && seq_ok;
    std::ostringstream d;
    d << "H_G = " << seq.coinvariants.to_string() << ", H1(quotient) = "
      << seq.h1_quotient.to_string() << ", (G/K)^ab = " << seq.g_mod_k_ab.to_string()
      << ", cokernel " << seq.middle_cokernel.to_string();
    r.detail = d.str();
    return r;
}

}  // namespace

VerificationRun run_all_checks(std::uint64_t seed, const std::vector<FppDescriptor>& rows) {
    VerificationRun run;
    run.seed = seed;
    run.checks.push_back(check_registry_consistency(rows));
    run.checks.push_back(check_cyclotomic());
    run.checks.push_back(check_c7_fixed_dims());
    run.checks.push_back(check_trace_oracle(seed));
    run.checks.push_back(check_orbit_sum_identity(seed + 1));
    run.checks.push_back(check_vanishing_rows_1_6(rows));
    run.checks.push_back(check_vanishing_row7(rows));
    run.checks.push_back(check_separation_row7(rows));
    run.checks.push_back(check_bicanonical_table1(rows));
    run.checks.push_back(check_vanishing_c6(rows));
    run.checks.push_back(check_reider());
    run.checks.push_back(check_genus());
    run.checks.push_back(check_hj_pullback());
    run.checks.push_back(check_quotient(QuotientType::C3, "C3", 3, 9));
    run.checks.push_back(check_quotient(QuotientType::C3xC3, "C3xC3", 1, 11));
    run.checks.push_back(check_quotient(QuotientType::C7, "C7", 0, 12));
    run.checks.push_back(check_quotient(QuotientType::G21, "G21", 0, 12));
    run.checks.push_back(check_torus_involution());
    run.checks.push_back(check_circle_c3());
    return run;
}

std::vector<std::string> check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& c : run_all_checks(1).checks) out.push_back(c.name);
        return out;
    }();
    return names;
}

namespace {

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    return d[a.size()][b.size()];
}

}  // namespace

std::string explain_check(const std::string& name) {
    static const std::map<std::string, std::string> chains = {
        {"registry.consistency",
         "For each surface the pinned torsion action of every order-3 subgroup is an order-3\n"
         "automorphism of H1. The coinvariants H1_sigma = H1 / Im(sigma - 1) surject onto\n"
         "H1 of the quotient surface; when |H1| is prime to 3 the surjection is an\n"
         "isomorphism, so |H1_sigma| must equal the abelianization order of the listed\n"
         "quotient fundamental group. The check recomputes every coinvariant order from the\n"
         "Smith normal form of [A - I | diag(d)]."},
        {"cyclotomic.x7_mod2",
         "x^7 - 1 is squarefree over F_2 and factors as (x+1)(x^3+x^2+1)(x^3+x+1); the\n"
         "factorization is recomputed by deterministic Berlekamp splitting and the product\n"
         "is re-expanded and compared coefficient by coefficient."},
        {"cyclotomic.c7_fixed_dims",
         "Any C7-action on C2^n decomposes into irreducible summands matching the factors\n"
         "of x^7 - 1 over F_2, of degrees 1, 3, 3. Enumerating decompositions of n = 3, 4,\n"
         "6 under faithfulness and the order bound |fixed| <= 3 (the quotient is an\n"
         "elliptic surface whose pi_1 has order gcd(a,b) <= 3) pins the fixed dimensions\n"
         "to 0, 1, 0. Explicit companion-matrix actions cross-check via Ker(g - 1)."},
        {"trace.oracle_equivalence",
         "For g of order m with gcd(m, exp H) = 1 the trace Tr = 1 + g + ... + g^(m-1)\n"
         "satisfies Im(Tr) = Ker(g-1) and Im(g-1) = Ker(Tr): one inclusion from\n"
         "(g-1)Tr = Tr(g-1) = 0, the other from the witnesses h = Tr(a h) and\n"
         "h = (g-1)(sum i g^i(h)) with a m = 1 mod |h|. The check verifies both equalities\n"
         "by exhaustive element enumeration on 500 randomized samples, so the coinvariants\n"
         "and invariants have equal order and the trace induces the isomorphism."},
        {"orbit_sum.identity_scan",
         "If sigma^3 = 1 on F, |F| is prime to 9 and F_sigma is 0 or C3, then\n"
         "t + sigma(t) + sigma^2(t) = 0 for every t: on primary parts away from 3 the\n"
         "coinvariant condition makes sigma - 1 invertible, and on the 3-part sigma = 1\n"
         "with 3t = 0. The scan enumerates every abelian group of admissible order up to\n"
         "500 and checks the identity elementwise for sampled order-3 automorphisms."},
        {"vanishing.rows_1_6",
         "For each degree-1 class L = L0 + t the orbit sum L + s*L + s^2*L equals\n"
         "K + (t + s(t) + s^2(t)) + 3*tau3 = K, because the pinned actions have zero trace\n"
         "endomorphism and 3-torsion offsets cancel. Effectivity of L would make K\n"
         "effective, contradicting p_g = 0; hence every candidate is proved non-effective,\n"
         "in every admissible cube-root branch."},
        {"vanishing.row7",
         "On the C14 surface the rotating automorphism kills the seven classes with\n"
         "7-torsion part only; the two-torsion twist dies by self-pairing against the\n"
         "invariant-torsion bicanonical-root vanishing (2(L0 + t2) = 2L0). The six order-14\n"
         "twists survive in two orbits {t2+t7, t2+2t7, t2+4t7} and {t2+3t7, t2+5t7,\n"
         "t2+6t7}; each cross-orbit pair sums to 2L0, so at most one orbit of three can be\n"
         "effective."},
        {"separation.row7",
         "If two points were unseparated on an effective D1 = L0 + t2 + t7, they would be\n"
         "pinned to the fixed points of the class-preserving automorphism on D1, cut by D2\n"
         "and D3. Comparing O_D1(D2 + D3) (or 2D2, 2D3 for infinitely near pairs) with\n"
         "O_D1(K - D1) forces the torsion class t2 (resp. +-(t2 + 5 t7)) to restrict\n"
         "trivially to D1, contradicting the injectivity of torsion restriction to curves\n"
         "of positive square."},
        {"bicanonical.table1",
         "Base points never occur (the base-point filter is empty), separation can only\n"
         "fail along a curve D with K = 3D (the separation filter leaves SEP_D), the\n"
         "vanishing engine removes all such curves for the first six surfaces, and on the\n"
         "seventh every surviving orbit is contradicted by the separation obstruction;\n"
         "hence the bicanonical map embeds each of the seven surfaces."},
        {"vanishing.c6_rows",
         "Aut(C6) = C2 has no order-3 element, so the action on H1 = C6 is trivial and\n"
         "every degree-1 class is fixed. Orbit sums kill the three classes with 3t = 0;\n"
         "the two-torsion twist carries no curve (the curve-count bound), leaving the two\n"
         "order-6 twists. With at most two curves the fixed-point count of the action\n"
         "bounds the unseparated locus by 3 points, and the map embeds outside it."},
        {"reider.bicanonical_filter",
         "With L = K of square 9 on a lattice generated by a square-1 class, every\n"
         "alternative DL = 0, 1, 2 with D^2 <= 0 is unsatisfiable since D = m*generator\n"
         "has D^2 = m^2 > 0 and DL = 3m >= 3; only L = 3D remains, with witness m = 1,\n"
         "D^2 = 1, K.D = 3, p_a = 3."},
        {"genus.degree1",
         "Adjunction gives p_a = (1 + 3)/2 + 1 = 3; the ball-quotient bound\n"
         "3(2g' - 2) >= 2 K.D = 6 is strict in the absence of totally geodesic curves,\n"
         "forcing g' >= 3 = p_a, so the curve is smooth of genus 3."},
        {"resolve.a2_pullback",
         "3/2 = [2,2] as a ceiling continued fraction, so 1/3(1,2) is the A2 chain of two\n"
         "(-2)-curves with zero discrepancies. Solving M c = -(1,0) on the chain gives\n"
         "c = (2/3, 1/3); a curve of downstairs square 1/3 through two such points has\n"
         "proper transform square 1/3 - 2/3 - 2/3 = -1. The solver never produces\n"
         "denominator 2, refuting the half-coefficient variant."},
        {"quotsing.C3",
         "The C3 quotient has three 1/3(1,2) points: K^2 = 9/3 + 3*0 = 3, e = (3-3)/3 +\n"
         "3*(2+1) = 9, chi = (3+9)/12 = 1."},
        {"quotsing.C3xC3",
         "The C3xC3 quotient has four 1/3(1,2) points: K^2 = 9/9 + 4*0 = 1, e = (3-12)/9 +\n"
         "4*3 = 11, chi = (1+11)/12 = 1."},
        {"quotsing.C7",
         "7/5 = [2,2,3] with discrepancies (-1/7, -2/7, -3/7), so each 1/7(1,5) point\n"
         "corrects K^2 by a.(b-2) = -3/7: K^2 = 9/7 - 3*(3/7) = 0, e = (3-3)/7 + 3*4 = 12,\n"
         "chi = 1, consistent with an elliptic surface of pi_1 = gcd(a,b) <= 3."},
        {"quotsing.G21",
         "Three 1/3(1,2) points and one 1/7(1,5) point: K^2 = 9/21 - 3/7 = 0, e = (3-24)/21\n"
         "+ 3*3 + 4 = 12, chi = 1."},
        {"homology.torus_involution",
         "H1(torus) = Z^2 and the point reflection acts by -1, so the coinvariants are\n"
         "(Z/2)^2. The quotient is a sphere: its H1 vanishes, the stabilizers (four fixed\n"
         "vertices) generate the group, and the surjection H_G ->> H1(quotient) holds with\n"
         "kernel (Z/2)^2."},
        {"homology.circle_c3",
         "A free rotation has trivial stabilizers, so the surjection hypothesis fails and\n"
         "the exact sequence applies instead: H1(circle) = Z maps to H1(circle) = Z by\n"
         "degree 3 (the covering multiplies the fundamental cycle), with cokernel C3 =\n"
         "(G/K)^ab realized by the monodromy of the quotient loop."},
    };
    auto it = chains.find(name);
    if (it != chains.end()) return it->second;
    std::vector<std::pair<int, std::string>> scored;
    for (const auto& n : check_names()) scored.push_back({edit_distance(name, n), n});
    std::sort(scored.begin(), scored.end());
    std::string msg = "unknown check '" + name + "'; nearest:";
    for (std::size_t i = 0; i < scored.size() && i < 3; ++i) msg += " " + scored[i].second;
    throw std::out_of_range(msg);
}

nlohmann::ordered_json to_json(const VerificationRun& run) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : run.checks)
        checks.push_back({{"name", c.name},
                          {"statement", c.statement},
                          {"status", c.pass ? "pass" : "fail"},
                          {"detail", c.detail}});
    return {{"seed", run.seed},
            {"checks", checks},
            {"failures", run.failures()},
            {"ok", run.ok()}};
}

std::string format_text(const VerificationRun& run) {
    std::ostringstream out;
    for (const auto& c : run.checks)
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    out << (run.ok() ? "OK" : "FAILED") << " (" << run.checks.size() << " checks, "
        << run.failures() << " failures, seed " << run.seed << ")\n";
    return out.str();
}

}  // namespace fpp
