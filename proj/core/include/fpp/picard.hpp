#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/abelian.hpp"

namespace fpp {

/// Element of Pic(X) = Z*L0 + Tor for a fake projective plane: the degree is
/// the coefficient of L0 (a cube root of K_X with L0^2 = 1), the torsion part
/// lives in the surface's torsion group.
struct DivisorClass {
    std::int64_t degree = 0;
    GroupElement torsion;

    bool operator==(const DivisorClass&) const = default;
    bool operator<(const DivisorClass& o) const {
        if (degree != o.degree) return degree < o.degree;
        return torsion < o.torsion;
    }
};

DivisorClass divisor_add(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b);
DivisorClass divisor_sub(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b);
DivisorClass divisor_scalar(const FinAbGroup& tor, std::int64_t k, const DivisorClass& a);
DivisorClass canonical_class(const FinAbGroup& tor);  // K_X = 3 L0

/// Numerical intersection: degrees multiply since L0^2 = 1 and torsion is
/// numerically trivial.
std::int64_t intersection(const DivisorClass& a, const DivisorClass& b);

/// Arithmetic genus by adjunction, (D^2 + K.D)/2 + 1. Requires degree >= 1.
std::int64_t arithmetic_genus(const DivisorClass& d);

/// Pullback action of an automorphism on Pic: (a, t) -> (a, a*tau3 + A(t)),
/// where tau3 = sigma*(L0) - L0 is a 3-torsion offset.
struct PicAutomorphism {
    GroupEndo torsion_action;
    GroupElement cube_root_offset;  // tau3, satisfies 3*tau3 = 0
};

DivisorClass act(const PicAutomorphism& phi, const DivisorClass& d);
PicAutomorphism with_offset(const PicAutomorphism& phi, GroupElement tau3);

enum class RestrictionVerdict { Nontrivial, Trivial };

/// Restriction of a torsion class to a curve of positive self-intersection is
/// trivial only for the zero class (injectivity of Tor Pic(X) -> Pic(C); used
/// as an axiom by the separation arguments).
RestrictionVerdict torsion_restriction_nonvanishing(const FinAbGroup& tor,
                                                    const DivisorClass& d_positive,
                                                    const GroupElement& tau);

enum class AutType { C3, C3xC3, G21 };

std::string aut_type_name(AutType t);

struct QuotientGroupDatum {
    std::string label;                  // e.g. "C_14", "S_3", "{1}"
    std::int64_t abelianization_order;  // only the abelianization enters the checks
};

/// One registry row: a complex-conjugate pair of fake projective planes with a
/// nontrivial C3 or C3xC3 automorphism group, its H1, the pinned action of
/// each order-3 subgroup on the torsion lattice, and the fundamental groups
/// of the corresponding quotients.
struct FppDescriptor {
    std::string label;
    AutType aut_type;
    FinAbGroup h1;
    std::vector<PicAutomorphism> aut_generators;   // one per order-3 subgroup
    std::vector<QuotientGroupDatum> quotient_pi1;  // aligned with aut_generators
    bool lifts_to_su21 = true;
    bool h1_is_c6 = false;  // the three H1 = C6 rows carry the curve-count datum
    /// Every automorphism fixes every cube root of K (asserted for the
    /// H1 = C6 rows, where the automorphisms preserve each square-1 class);
    /// when false and 3-torsion exists, the engine branches over offsets.
    bool cube_root_fixed = false;
};

/// The ten built-in descriptors, in table order.
const std::vector<FppDescriptor>& registry();

/// Lookup by label. Exact match first, then a normalized comparison that
/// ignores underscores and whitespace. Throws std::out_of_range when unknown.
const FppDescriptor& find_descriptor(const std::string& label);

/// 3-torsion offsets tau3 admissible for sigma: tau + A(tau) + A^2(tau) = 0,
/// so that the lifted action still has order 3 on Pic.
std::vector<GroupElement> admissible_cube_root_offsets(const FinAbGroup& h1,
                                                       const PicAutomorphism& sigma);

struct ConsistencyRow {
    std::string label;
    int generator_index;
    std::int64_t coinvariant_order;
    std::int64_t pi1_abelianization_order;
    bool coprime_case;  // gcd(|Tor|, 3) = 1: coinvariants = H1 of the quotient
    bool divisibility_ok;
    bool equality_ok;
};

/// Per-row, per-generator comparison of |H1_sigma| with the abelianization
/// order of the listed quotient fundamental group.
std::vector<ConsistencyRow> registry_consistency(const std::vector<FppDescriptor>& rows = registry());

nlohmann::ordered_json to_json(const DivisorClass& d);
nlohmann::ordered_json to_json(const FppDescriptor& d);
nlohmann::ordered_json registry_to_json(const std::vector<FppDescriptor>& rows = registry());
FppDescriptor descriptor_from_json(const nlohmann::json& j);
std::vector<FppDescriptor> registry_from_json(const nlohmann::json& j);

std::string divisor_to_string(const DivisorClass& d);

}  // namespace fpp
