#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/abelian.hpp"
#include "fpp/snf.hpp"

namespace fpp {

/// Simplicial complex of dimension <= 2 on integer vertex ids. Simplices are
/// stored as sorted tuples; validation enforces face closure and uniqueness.
struct SimplicialComplex {
    std::vector<int> vertices;                    // sorted, unique
    std::vector<std::array<int, 2>> edges;        // sorted pairs, sorted list
    std::vector<std::array<int, 3>> triangles;    // sorted triples, sorted list
};

/// Builds a complex from mixed simplex lists and validates closure.
/// Throws std::invalid_argument when a face is missing or a tuple repeats.
SimplicialComplex make_complex(const std::vector<std::vector<int>>& simplices);

/// Face closure of generating simplices (convenience for fixtures).
SimplicialComplex closure(const std::vector<std::vector<int>>& generators);

/// Group of simplicial automorphisms given by generator permutations on
/// vertices. Generators must map simplices to simplices.
struct SimplicialAction {
    std::vector<std::map<int, int>> generators;
};

/// All group elements (vertex permutations) generated, capped at 1000.
std::vector<std::map<int, int>> group_elements(const SimplicialComplex& k,
                                               const SimplicialAction& a);

/// Integer 1-chain indexed by the complex's edge list.
using Chain1 = std::vector<BigInt>;

/// First homology of a complex: free rank, torsion, and generating cycles
/// (torsion generators first, then free generators), plus the data needed to
/// express arbitrary cycles in these coordinates.
struct Homology1 {
    std::size_t free_rank = 0;
    FinAbGroup torsion;
    std::vector<Chain1> generating_cycles;  // aligned: torsion gens, then free gens

    // internals for coordinate computations
    Mat cycle_basis;            // E x z, basis of ker(boundary_1)
    SnfDecomposition cycle_snf; // SNF of cycle_basis for solving
    Mat rel_u;                  // U of the SNF of the im(d2) presentation
    std::vector<std::size_t> torsion_positions;
    std::vector<std::size_t> free_positions;

    std::size_t gens() const { return torsion_positions.size() + free_positions.size(); }
    /// Relation moduli aligned with generating_cycles (torsion factors, then 0s).
    std::vector<BigInt> relation_moduli() const;
};

/// H1 = ker d1 / im d2 via Smith normal form. Rejects non-closed complexes.
Homology1 h1(const SimplicialComplex& k);

/// Coordinates of a cycle in the generators of h; throws if the chain is not
/// a cycle of the complex.
std::vector<BigInt> h1_coords(const SimplicialComplex& k, const Homology1& h, const Chain1& cycle);

/// Barycentric subdivision together with the chain map on 1-chains and the
/// extension of a group action.
struct Subdivision {
    SimplicialComplex complex;
    std::map<int, int> vertex_image;               // old vertex -> new vertex id
    std::map<std::array<int, 2>, int> edge_vertex; // old edge -> barycenter id
    std::map<std::array<int, 3>, int> tri_vertex;  // old triangle -> barycenter id
};

Subdivision barycentric_subdivision(const SimplicialComplex& k);
/// Push a 1-chain of k into its subdivision.
Chain1 subdivide_chain(const SimplicialComplex& k, const Subdivision& sd, const Chain1& c);
SimplicialAction extend_action(const SimplicialComplex& k, const Subdivision& sd,
                               const SimplicialAction& a);

/// Quotient of a complex by a simplicial action. When the action identifies
/// two faces of a simplex or two cells with the same image, barycentric
/// subdivision is applied first (at most twice); the returned domain is the
/// subdivided complex the quotient map actually goes from.
struct QuotientResult {
    SimplicialComplex domain;      // k after the applied subdivisions
    SimplicialAction domain_action;
    SimplicialComplex quotient;
    std::map<int, int> vertex_map;  // domain vertex -> quotient vertex (orbit id)
    int subdivisions_applied = 0;
    /// Chain map from 1-chains of the original complex into the domain.
    Chain1 lift_chain(const Chain1& original) const;

    // internal: composed subdivision chain maps
    std::vector<std::pair<SimplicialComplex, Subdivision>> stages;
};

QuotientResult quotient_complex(const SimplicialComplex& k, const SimplicialAction& a);

/// Quotient chain map on 1-chains of the domain.
Chain1 quotient_chain(const QuotientResult& q, const Chain1& c);

/// Finitely generated abelian invariants (free rank + torsion).
struct FgAbInvariants {
    std::size_t free_rank = 0;
    FinAbGroup torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.is_trivial(); }
    std::string to_string() const;
};

/// Report for the coinvariant surjection H1(X)_G ->> H1(X/G): valid whenever
/// the stabilizer subgroups generate the group.
struct CoinvariantSurjectionReport {
    bool stabilizers_generate = false;
    FgAbInvariants h1_domain;
    FgAbInvariants coinvariants;
    FgAbInvariants h1_quotient;
    bool surjective = false;
    FgAbInvariants kernel;
    int subdivisions_applied = 0;
    /// Some edge or triangle is fixed pointwise by a nontrivial element, so
    /// the fixed locus is not isolated points.
    bool pointwise_fixed_positive_dim = false;
};

CoinvariantSurjectionReport coinvariant_surjection_check(const SimplicialComplex& k,
                                                         const SimplicialAction& a);

/// Report for the exact sequence H1(X)_G -> H1(X/G) -> (G/K(X))^ab -> 0 with
/// K(X) the normal subgroup generated by stabilizers.
struct ExactSequenceIIReport {
    FgAbInvariants coinvariants;
    FgAbInvariants h1_quotient;
    FgAbInvariants g_mod_k_ab;
    bool right_map_surjective = false;
    bool middle_exact = false;
    FgAbInvariants middle_cokernel;  // H1(X/G) / im(H1_G), isomorphic to (G/K)^ab when exact
    int subdivisions_applied = 0;
};

ExactSequenceIIReport exact_sequence_ii_check(const SimplicialComplex& k,
                                              const SimplicialAction& a);

SimplicialComplex complex_from_json(const nlohmann::json& j);
SimplicialAction action_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SimplicialComplex& k);
nlohmann::ordered_json homology_to_json(const Homology1& h);

}  // namespace fpp
