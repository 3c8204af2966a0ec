#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/snf.hpp"

namespace fpp {

struct GroupElement {
    std::vector<std::int64_t> coords;  // one entry per invariant factor, in [0, d_i)

    bool operator==(const GroupElement&) const = default;
    bool operator<(const GroupElement& o) const { return coords < o.coords; }
};

/// Finite abelian group in invariant-factor form Z/d1 x ... x Z/dk with
/// d1 | d2 | ... | dk and every di >= 2. The empty list is the trivial group.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<std::int64_t> invariant_factors);

    static FinAbGroup cyclic(std::int64_t n);

    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_trivial() const { return factors_.empty(); }
    std::int64_t order() const;
    std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

    GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }
    GroupElement reduce(GroupElement e) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement scalar_mul(std::int64_t k, const GroupElement& a) const;
    std::int64_t element_order(const GroupElement& a) const;

    /// All elements in lexicographic coordinate order. Guards against orders
    /// past the cap; enumeration is meant for desk-scale groups only.
    std::vector<GroupElement> elements(std::int64_t cap = 1'000'000) const;

    bool operator==(const FinAbGroup&) const = default;

    std::string to_string() const;  // e.g. "C2 x C14", "0"

private:
    std::vector<std::int64_t> factors_;
};

/// Endomorphism of a FinAbGroup, an integer matrix acting on generator
/// coordinates. Well-definedness (d_i | A[i][j] * d_j) is checked on
/// construction; entries are normalized into [0, d_i) per row.
class GroupEndo {
public:
    GroupEndo(FinAbGroup group, std::vector<std::vector<std::int64_t>> matrix);

    static GroupEndo identity(const FinAbGroup& g);
    static GroupEndo zero(const FinAbGroup& g);
    /// Multiplication by an integer scalar.
    static GroupEndo scalar(const FinAbGroup& g, std::int64_t k);

    const FinAbGroup& group() const { return group_; }
    const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }

    GroupElement apply(const GroupElement& x) const;

    bool operator==(const GroupEndo&) const = default;

private:
    FinAbGroup group_;
    std::vector<std::vector<std::int64_t>> matrix_;
};

GroupEndo compose(const GroupEndo& f, const GroupEndo& g);  // f after g
GroupEndo endo_add(const GroupEndo& f, const GroupEndo& g);
GroupEndo endo_sub(const GroupEndo& f, const GroupEndo& g);
GroupEndo endo_pow(const GroupEndo& f, std::int64_t k);
bool is_identity(const GroupEndo& f);

/// Two-sided inverse matrix mod the invariant factors, if f is an automorphism.
std::optional<GroupEndo> inverse_endo(const GroupEndo& f);
/// Multiplicative order of f, if it is at most `cap`.
std::optional<std::int64_t> endo_order(const GroupEndo& f, std::int64_t cap = 4096);

/// Subgroup of a parent group: abstract invariant-factor structure together
/// with generators in parent coordinates (one per structure factor) and an
/// exact membership test.
class Subgroup {
public:
    Subgroup(FinAbGroup parent, std::vector<GroupElement> generators);

    const FinAbGroup& parent() const { return parent_; }
    const FinAbGroup& structure() const { return structure_; }
    /// Generators aligned with the structure's invariant factors.
    const std::vector<GroupElement>& generators() const { return generators_; }
    std::int64_t order() const { return structure_.order(); }

    bool contains(const GroupElement& x) const;
    /// Image in the parent of an element given in structure coordinates.
    GroupElement include(const GroupElement& abstract_coords) const;

private:
    FinAbGroup parent_;
    FinAbGroup structure_;
    std::vector<GroupElement> generators_;
    Mat span_;          // [raw generators | diag(d)] for membership solves
    SnfDecomposition span_snf_;
};

Subgroup image_subgroup(const GroupEndo& f);
Subgroup kernel_subgroup(const GroupEndo& f);
bool subgroup_equal(const Subgroup& a, const Subgroup& b);

/// Coinvariants H_G = H / Im(g - 1) for the cyclic group generated by g,
/// computed as the cokernel of [A - I | diag(d)]. `project` is the quotient
/// map on elements.
struct Coinvariants {
    FinAbGroup quotient;
    std::vector<std::vector<std::int64_t>> projection;  // quotient coords = P * parent coords

    GroupElement project(const GroupElement& x) const;
};

Coinvariants coinvariants(const FinAbGroup& h, const GroupEndo& g);

/// Invariants H^G = Ker(g - 1) as a subgroup of H.
Subgroup invariants(const FinAbGroup& h, const GroupEndo& g);

/// Trace endomorphism 1 + g + ... + g^(m-1). Throws if g^m != id.
GroupEndo trace_endo(const FinAbGroup& h, const GroupEndo& g, std::int64_t m);

/// Certificate that the trace homomorphism identifies coinvariants with
/// invariants when gcd(m, exp H) = 1: Im(Tr) = Ker(g-1) and
/// Im(g-1) = Ker(Tr), plus an explicit isomorphism H_G -> H^G.
struct TraceIsoCertificate {
    bool precondition_ok = false;  // gcd(m, exp H) == 1
    bool im_trace_equals_fixed = false;
    bool im_g1_equals_ker_trace = false;
    std::int64_t coinvariants_order = 0;
    std::int64_t invariants_order = 0;
    enum class Method { Enumeration, GeneratorWitness } method = Method::Enumeration;
    /// (preimage in H of a coinvariant generator, its trace image in H^G).
    std::vector<std::pair<GroupElement, GroupElement>> iso_on_generators;

    bool ok() const { return precondition_ok && im_trace_equals_fixed && im_g1_equals_ker_trace; }
};

TraceIsoCertificate coinv_inv_isomorphism_check(const FinAbGroup& h, const GroupEndo& g,
                                                std::int64_t m,
                                                std::int64_t enumeration_bound = 10'000);

/// Cyclic orbit [t, g t, g^2 t, ...] with no duplicates. g must be an
/// automorphism.
std::vector<GroupElement> orbit(const FinAbGroup& h, const GroupElement& t, const GroupEndo& g);

/// Check of the orbit-sum identity t + s(t) + s^2(t) = 0 for an order-3
/// automorphism with small coinvariants on a group of order prime to 9.
struct LittleLemmaReport {
    bool order3_ok = false;
    bool order_not_divisible_by_9 = false;
    bool coinvariants_small = false;  // F_sigma in {0, C3}
    bool identity_holds = false;
    std::optional<GroupElement> counterexample;

    bool preconditions_ok() const {
        return order3_ok && order_not_divisible_by_9 && coinvariants_small;
    }
};

LittleLemmaReport little_lemma_check(const FinAbGroup& f, const GroupEndo& sigma,
                                     std::int64_t enumeration_bound = 10'000);

/// Rewrites an arbitrary product of cyclic groups Z/m1 x ... x Z/mr in
/// canonical invariant-factor form, with coordinate maps both ways.
struct CanonicalizedGroup {
    FinAbGroup group;
    std::vector<std::vector<std::int64_t>> to_canonical;    // canonical = T * product coords
    std::vector<std::vector<std::int64_t>> from_canonical;  // product = F * canonical coords

    GroupElement from_product_coords(const std::vector<std::int64_t>& x) const;
    /// Transport an endomorphism given on the product presentation.
    GroupEndo transport(const std::vector<std::vector<std::int64_t>>& product_matrix) const;
};

CanonicalizedGroup canonicalize_moduli(const std::vector<std::int64_t>& moduli);

// JSON serialization: groups as invariant-factor lists, elements as
// coordinate lists, endomorphisms as matrix rows.
nlohmann::ordered_json to_json(const FinAbGroup& g);
nlohmann::ordered_json to_json(const GroupElement& e);
nlohmann::ordered_json to_json(const GroupEndo& f);
FinAbGroup group_from_json(const nlohmann::json& j);
GroupElement element_from_json(const nlohmann::json& j);
GroupEndo endo_from_json(const FinAbGroup& group, const nlohmann::json& j);

}  // namespace fpp
