#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/bigint.hpp"
#include "fpp/picard.hpp"

namespace fpp {

enum class ReiderMode { BasePoint, Separation };

/// The numerical alternatives of Reider's criterion on a rank-1 lattice:
/// base-point obstructions (a) DL=0, D^2=-1 and (b) DL=1, D^2=0; separation
/// obstructions (a)-(d) with (d) the L = 3D case specific to L^2 = 9.
enum class ReiderCase { BP_A, BP_B, SEP_A, SEP_B, SEP_C, SEP_D };

std::string reider_case_name(ReiderCase c);

struct ReiderFeasible {
    ReiderCase case_id;
    std::int64_t witness_multiple;  // D = m * generator
    std::int64_t d_square;
    std::int64_t d_dot_l;
    // Derived constraints reported for the L = 3D case.
    std::int64_t k_dot_d = 0;
    std::int64_t p_a = 0;
};

/// Enumerates candidate curves D = m * generator, m >= 1, against each
/// alternative. On a rank-1 lattice with generator^2 = 1 only SEP_D can
/// survive. Throws when L^2 is below the theorem's threshold for the mode.
std::vector<ReiderFeasible> reider_filter(std::int64_t l2, std::int64_t generator_square,
                                          std::int64_t l_degree, ReiderMode mode);

enum class SmoothnessVerdict { Smooth, Inconclusive };

struct GenusCertificate {
    std::int64_t p_a;
    std::int64_t geometric_genus_lower_bound;
    SmoothnessVerdict verdict;
};

/// Adjunction genus plus the ball-quotient genus bound 3(2g'-2) >= 2 K.D,
/// strict when totally geodesic curves are excluded. SMOOTH when the lower
/// bound meets the arithmetic genus.
GenusCertificate genus_certificate(const DivisorClass& d, bool no_geodesics);

/// Exceptional data of the cyclic quotient singularity 1/n(1,q): the
/// Hirzebruch-Jung chain, its intersection matrix and the discrepancies.
struct ResolutionGraph {
    std::int64_t n = 0, q = 0;
    std::vector<std::int64_t> hj;                 // continued-fraction entries b_i >= 2
    std::vector<std::int64_t> self_intersections; // -b_i
    std::vector<std::vector<std::int64_t>> intersection_matrix;
    std::vector<Rational> discrepancies;

    std::size_t length() const { return hj.size(); }
    bool is_du_val() const;
};

ResolutionGraph hirzebruch_jung(std::int64_t n, std::int64_t q);

/// Pullback bookkeeping on a resolution: solves for the exceptional
/// coefficients c with (pullback - sum c_i E_i) . E_j = incidence_j at each
/// singular point and returns the proper-transform self-intersection
/// down_square - sum c . incidence. All arithmetic exact.
struct PullbackResult {
    std::vector<std::vector<Rational>> coefficients;  // per singular point
    std::vector<Rational> corrections;                // c . incidence per point
    Rational proper_transform_square;
    /// Per point: the incidence hits exactly one end curve of a du Val chain
    /// once, the configuration with an external cross-check; other patterns
    /// are computed but unvalidated.
    std::vector<bool> validated_pattern;
};

PullbackResult pullback_proper_transform(const std::vector<ResolutionGraph>& graphs,
                                         const std::vector<std::vector<std::int64_t>>& incidence,
                                         const Rational& down_square);

struct SingularityCount {
    std::int64_t n, q;
    int count;
};

/// Invariants of the minimal resolution of a quotient of a fake projective
/// plane (e = 3, K^2 = 9) by a group acting freely outside finitely many
/// fixed points.
struct QuotientInvariants {
    std::int64_t group_order;
    std::vector<SingularityCount> singularities;
    Rational k2_resolution;
    std::int64_t euler_resolution;
    std::int64_t chi;
};

QuotientInvariants quotient_invariants(std::int64_t group_order,
                                       const std::vector<SingularityCount>& singularities,
                                       std::int64_t e_x, std::int64_t k2_x,
                                       std::int64_t fixed_points);

/// pi_1 of an (a,b)-elliptic surface is cyclic of order gcd(a,b).
std::int64_t elliptic_pi1_datum(std::int64_t a, std::int64_t b);

enum class QuotientType { C3, C3xC3, C7, G21 };

/// The four quotient configurations of a fake projective plane.
QuotientInvariants quotient_invariants_for(QuotientType t);

nlohmann::ordered_json to_json(const ResolutionGraph& g);
nlohmann::ordered_json to_json(const QuotientInvariants& q);

std::string rational_to_string(const Rational& r);

}  // namespace fpp
