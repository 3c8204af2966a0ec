#include "fpp/picard.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fpp {

namespace {
using i64 = std::int64_t;
}

DivisorClass divisor_add(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b) {
    return DivisorClass{a.degree + b.degree, tor.add(a.torsion, b.torsion)};
}

DivisorClass divisor_sub(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b) {
    return DivisorClass{a.degree - b.degree, tor.sub(a.torsion, b.torsion)};
}

DivisorClass divisor_scalar(const FinAbGroup& tor, i64 k, const DivisorClass& a) {
    return DivisorClass{k * a.degree, tor.scalar_mul(k, a.torsion)};
}

DivisorClass canonical_class(const FinAbGroup& tor) { return DivisorClass{3, tor.zero()}; }

i64 intersection(const DivisorClass& a, const DivisorClass& b) { return a.degree * b.degree; }

i64 arithmetic_genus(const DivisorClass& d) {
    if (d.degree < 1) throw std::invalid_argument("arithmetic genus needs degree >= 1");
    i64 self = d.degree * d.degree;
    i64 kd = 3 * d.degree;
    if ((self + kd) % 2 != 0) throw std::logic_error("adjunction parity violated");
    return (self + kd) / 2 + 1;
}

DivisorClass act(const PicAutomorphism& phi, const DivisorClass& d) {
    const FinAbGroup& tor = phi.torsion_action.group();
    if (d.torsion.coords.size() != tor.rank())
        throw std::invalid_argument("divisor torsion lies in a different group");
    GroupElement t = tor.add(tor.scalar_mul(d.degree, phi.cube_root_offset),
                             phi.torsion_action.apply(d.torsion));
    return DivisorClass{d.degree, t};
}

PicAutomorphism with_offset(const PicAutomorphism& phi, GroupElement tau3) {
    const FinAbGroup& tor = phi.torsion_action.group();
    tau3 = tor.reduce(tau3);
    if (!(tor.scalar_mul(3, tau3) == tor.zero()))
        throw std::invalid_argument("cube root offset must be 3-torsion");
    return PicAutomorphism{phi.torsion_action, tau3};
}

RestrictionVerdict torsion_restriction_nonvanishing(const FinAbGroup& tor,
                                                    const DivisorClass& d_positive,
                                                    const GroupElement& tau) {
    if (d_positive.degree < 1)
        throw std::invalid_argument("restriction axiom needs a curve with positive square");
    return tor.reduce(tau) == tor.zero() ? RestrictionVerdict::Trivial
                                         : RestrictionVerdict::Nontrivial;
}

std::string aut_type_name(AutType t) {
    switch (t) {
        case AutType::C3: return "C3";
        case AutType::C3xC3: return "C3xC3";
        case AutType::G21: return "G21";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

PicAutomorphism make_aut(const CanonicalizedGroup& can,
                         const std::vector<std::vector<i64>>& product_matrix) {
    GroupEndo action = can.transport(product_matrix);
    return PicAutomorphism{action, can.group.zero()};
}

std::vector<std::vector<i64>> diag_matrix(const std::vector<i64>& d) {
    std::vector<std::vector<i64>> m(d.size(), std::vector<i64>(d.size(), 0));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return m;
}

// Order-3 companion block [[0,1],[1,1]] on a C2 x C2 pair placed at rows
// (i, i+1) of an otherwise diagonal matrix.
std::vector<std::vector<i64>> companion_at(std::vector<std::vector<i64>> m, std::size_t i) {
    m[i][i] = 0;
    m[i][i + 1] = 1;
    m[i + 1][i] = 1;
    m[i + 1][i + 1] = 1;
    return m;
}

std::vector<FppDescriptor> build_registry() {
    std::vector<FppDescriptor> rows;

    // Aut = C3, H1 = C3 x C7; sigma acts trivially on the 3-torsion part and
    // by multiplication by 2 on the 7-part.
    {
        auto can = canonicalize_moduli({3, 7});
        FppDescriptor d;
        d.label = "(a=15, p=2, {3,5}, D_3)";
        d.aut_type = AutType::C3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, {{1, 0}, {0, 2}})};
        d.quotient_pi1 = {{"C_3", 3}};
        rows.push_back(std::move(d));
    }
    // Aut = C3, H1 = C2^2 x C3; sigma rotates the C2^2 summand.
    {
        auto can = canonicalize_moduli({2, 2, 3});
        FppDescriptor d;
        d.label = "(a=15, p=2, {3,5}, 3_3)";
        d.aut_type = AutType::C3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, companion_at(diag_matrix({1, 1, 1}), 0))};
        d.quotient_pi1 = {{"C_3", 3}};
        rows.push_back(std::move(d));
    }
    // Aut = C3, H1 = C3; Aut(C3) = C2 has no order-3 element, so the action
    // is trivial.
    {
        auto can = canonicalize_moduli({3});
        FppDescriptor d;
        d.label = "(a=15, p=2, {3,5}, (D3)_3)";
        d.aut_type = AutType::C3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, {{1}})};
        d.quotient_pi1 = {{"C_3", 3}};
        rows.push_back(std::move(d));
    }
    // Aut = C3 x C3, H1 = C7: one subgroup acts trivially, the other three
    // multiply 7-torsion by 2.
    {
        auto can = canonicalize_moduli({7});
        FppDescriptor d;
        d.label = "(C2, p=2, {3}, d_3D_3)";
        d.aut_type = AutType::C3xC3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, {{1}}), make_aut(can, {{2}}), make_aut(can, {{2}}),
                            make_aut(can, {{2}})};
        d.quotient_pi1 = {{"C_7", 7}, {"{1}", 1}, {"{1}", 1}, {"{1}", 1}};
        rows.push_back(std::move(d));
    }
    // Aut = C3, H1 = C7.
    {
        auto can = canonicalize_moduli({7});
        FppDescriptor d;
        d.label = "(C10, p=2, {17-}, D_3)";
        d.aut_type = AutType::C3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, {{2}})};
        d.quotient_pi1 = {{"{1}", 1}};
        rows.push_back(std::move(d));
    }
    // Aut = C3 x C3, H1 = C2^2 x C13. The order-3 multipliers mod 13 are 3
    // and 9; multiplication by 3 realizes the quotient column.
    {
        auto can = canonicalize_moduli({2, 2, 13});
        FppDescriptor d;
        d.label = "(C18, p=3, ∅, d_3D_3)";
        d.aut_type = AutType::C3xC3;
        d.h1 = can.group;
        auto comp = companion_at(diag_matrix({1, 1, 1}), 0);
        auto comp2 = companion_at(diag_matrix({1, 1, 1}), 0);
        // square of the companion block: [[1,1],[1,0]]
        comp2[0][0] = 1; comp2[0][1] = 1; comp2[1][0] = 1; comp2[1][1] = 0;
        auto comp_x3 = comp;
        comp_x3[2][2] = 3;
        auto comp2_x3 = comp2;
        comp2_x3[2][2] = 3;
        d.aut_generators = {make_aut(can, comp), make_aut(can, diag_matrix({1, 1, 3})),
                            make_aut(can, comp_x3), make_aut(can, comp2_x3)};
        d.quotient_pi1 = {{"C_13", 13}, {"Q_8", 4}, {"{1}", 1}, {"{1}", 1}};
        rows.push_back(std::move(d));
    }
    // Aut = C3 x C3, H1 = C2 x C7 = C14: nu acts trivially on H1, sigma fixes
    // the 2-torsion and doubles 7-torsion; the remaining two subgroups act
    // like sigma.
    {
        auto can = canonicalize_moduli({2, 7});
        FppDescriptor d;
        d.label = "(C2, p=2, ∅, d_3D_3)";
        d.aut_type = AutType::C3xC3;
        d.h1 = can.group;
        auto sigma = diag_matrix({1, 2});
        d.aut_generators = {make_aut(can, diag_matrix({1, 1})), make_aut(can, sigma),
                            make_aut(can, sigma), make_aut(can, sigma)};
        d.quotient_pi1 = {{"C_14", 14}, {"S_3", 2}, {"C_2", 2}, {"C_2", 2}};
        rows.push_back(std::move(d));
    }
    // The three H1 = C6 rows: Aut(C6) = C2 forces the trivial action.
    for (const char* label : {"(a=15, p=2, {3}, (D3)_3)", "(C18, p=3, {2}, (dD)_3)",
                              "(C18, p=3, {2}, (d^2D)_3)"}) {
        auto can = canonicalize_moduli({6});
        FppDescriptor d;
        d.label = label;
        d.aut_type = AutType::C3;
        d.h1 = can.group;
        d.aut_generators = {make_aut(can, {{1}})};
        d.quotient_pi1 = {{"C_6", 6}};
        d.h1_is_c6 = true;
        d.cube_root_fixed = true;
        rows.push_back(std::move(d));
    }

    return rows;
}

std::string normalize_label(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == ' ') continue;
        out.push_back(c);
    }
    return out;
}

}  // namespace

const std::vector<FppDescriptor>& registry() {
    static const std::vector<FppDescriptor> rows = build_registry();
    return rows;
}

const FppDescriptor& find_descriptor(const std::string& label) {
    for (const auto& d : registry())
        if (d.label == label) return d;
    std::string norm = normalize_label(label);
    for (const auto& d : registry())
        if (normalize_label(d.label) == norm) return d;
    throw std::out_of_range("no registry entry with label " + label);
}

std::vector<GroupElement> admissible_cube_root_offsets(const FinAbGroup& h1,
                                                       const PicAutomorphism& sigma) {
    std::vector<GroupElement> out;
    const GroupEndo& a = sigma.torsion_action;
    for (const auto& t : h1.elements()) {
        if (!(h1.scalar_mul(3, t) == h1.zero())) continue;
        GroupElement s = h1.add(t, h1.add(a.apply(t), a.apply(a.apply(t))));
        if (s == h1.zero()) out.push_back(t);
    }
    return out;
}

std::vector<ConsistencyRow> registry_consistency(const std::vector<FppDescriptor>& rows) {
    std::vector<ConsistencyRow> out;
    for (const auto& d : rows) {
        for (std::size_t i = 0; i < d.aut_generators.size(); ++i) {
            ConsistencyRow r;
            r.label = d.label;
            r.generator_index = static_cast<int>(i);
            r.coinvariant_order = coinvariants(d.h1, d.aut_generators[i].torsion_action).quotient.order();
            r.pi1_abelianization_order = d.quotient_pi1.at(i).abelianization_order;
            r.coprime_case = std::gcd(d.h1.order(), i64{3}) == 1;
            r.divisibility_ok =
                r.pi1_abelianization_order != 0 && r.coinvariant_order % r.pi1_abelianization_order == 0;
            r.equality_ok = r.coinvariant_order == r.pi1_abelianization_order;
            out.push_back(std::move(r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const DivisorClass& d) {
    return {{"degree", d.degree}, {"torsion", d.torsion.coords}};
}

nlohmann::ordered_json to_json(const FppDescriptor& d) {
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < d.aut_generators.size(); ++i) {
        gens.push_back({{"torsion_action", d.aut_generators[i].torsion_action.matrix()},
                        {"cube_root_offset", d.aut_generators[i].cube_root_offset.coords},
                        {"quotient_pi1", d.quotient_pi1.at(i).label},
                        {"quotient_pi1_abelianization_order",
                         d.quotient_pi1.at(i).abelianization_order}});
    }
    return {{"label", d.label},
            {"aut_type", aut_type_name(d.aut_type)},
            {"h1", {{"invariant_factors", d.h1.invariant_factors()}}},
            {"order_3_subgroups", gens},
            {"lifts_to_su21", d.lifts_to_su21},
            {"h1_is_c6", d.h1_is_c6},
            {"cube_root_fixed", d.cube_root_fixed}};
}

nlohmann::ordered_json registry_to_json(const std::vector<FppDescriptor>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : rows) arr.push_back(to_json(d));
    return {{"fake_projective_planes", arr}};
}

FppDescriptor descriptor_from_json(const nlohmann::json& j) {
    FppDescriptor d;
    d.label = j.at("label").get<std::string>();
    std::string at = j.at("aut_type").get<std::string>();
    if (at == "C3")
        d.aut_type = AutType::C3;
    else if (at == "C3xC3")
        d.aut_type = AutType::C3xC3;
    else if (at == "G21")
        d.aut_type = AutType::G21;
    else
        throw std::invalid_argument("unknown aut_type " + at);
    d.h1 = group_from_json(j.at("h1"));
    for (const auto& g : j.at("order_3_subgroups")) {
        GroupEndo action(d.h1, g.at("torsion_action").get<std::vector<std::vector<i64>>>());
        GroupElement off{g.at("cube_root_offset").get<std::vector<i64>>()};
        d.aut_generators.push_back(PicAutomorphism{action, d.h1.reduce(off)});
        d.quotient_pi1.push_back({g.at("quotient_pi1").get<std::string>(),
                                  g.at("quotient_pi1_abelianization_order").get<i64>()});
    }
    d.lifts_to_su21 = j.value("lifts_to_su21", true);
    d.h1_is_c6 = j.value("h1_is_c6", false);
    d.cube_root_fixed = j.value("cube_root_fixed", false);
    return d;
}

std::vector<FppDescriptor> registry_from_json(const nlohmann::json& j) {
    std::vector<FppDescriptor> rows;
    for (const auto& r : j.at("fake_projective_planes")) rows.push_back(descriptor_from_json(r));
    return rows;
}

std::string divisor_to_string(const DivisorClass& d) {
    std::string s = "(" + std::to_string(d.degree) + ", [";
    for (std::size_t i = 0; i < d.torsion.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d.torsion.coords[i]);
    }
    s += "])";
    return s;
}

}  // namespace fpp
