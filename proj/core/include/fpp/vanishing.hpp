#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/geometry.hpp"
#include "fpp/picard.hpp"

namespace fpp {

/// Provenance of a non-effectivity fact. Cohomological inputs enter the
/// engine only as named axioms and are never recomputed:
///  - PgZero: K_X itself is not effective (p_g = 0);
///  - InvariantBicanonicalRoot: h^0(2 L0 + t) = 0 for Aut-invariant torsion t
///    on the C3 x C3 surfaces;
///  - TwoTorsionCurveBound: on the H1 = C6 surfaces the class L0 + t2 carries
///    no curve, the class-level content of the at-most-two-curves bound;
///  - NegativeDegree / TorsionDegreeZero: numerically forced vanishing;
///  - Derived: produced by the engine's rules.
enum class AxiomSource {
    PgZero,
    InvariantBicanonicalRoot,
    NegativeDegree,
    TorsionDegreeZero,
    TwoTorsionCurveBound,
    Derived
};

std::string axiom_source_name(AxiomSource s);

struct NonEffectiveAxiom {
    DivisorClass cls;
    AxiomSource source;
};

/// Three-valued effectivity knowledge: a class is known non-effective, known
/// effective (only the zero class by default), or unknown.
class AxiomSet {
public:
    explicit AxiomSet(FinAbGroup torsion) : torsion_(std::move(torsion)) {}

    const FinAbGroup& torsion() const { return torsion_; }
    void add(DivisorClass cls, AxiomSource source);
    void add_effective(DivisorClass cls);

    std::optional<AxiomSource> known_noneffective(const DivisorClass& d) const;
    bool known_effective(const DivisorClass& d) const;
    const std::vector<NonEffectiveAxiom>& axioms() const { return axioms_; }

private:
    FinAbGroup torsion_;
    std::vector<NonEffectiveAxiom> axioms_;
    std::vector<DivisorClass> effective_;
};

/// The axioms a registry surface starts from.
AxiomSet default_axioms(const FppDescriptor& surface);

enum class ProofTag { OrbitSum, Pairing, Axiom };

std::string proof_tag_name(ProofTag t);

/// Replayable witness for one non-effective class.
struct NonEffectivityProof {
    DivisorClass cls;
    ProofTag tag = ProofTag::Axiom;
    int automorphism_index = -1;        // orbit-sum: which generator
    GroupElement offset_used;           // orbit-sum: cube-root offset of the branch
    std::optional<DivisorClass> partner;  // pairing: the partner class (self allowed)
    DivisorClass obstruction;           // the known-non-effective class reached
    AxiomSource axiom_source = AxiomSource::Derived;
};

/// Orbit-sum rule: L is non-effective when L + s*L + s^2*L is known
/// non-effective, since pullback by an automorphism preserves effectivity.
std::optional<NonEffectivityProof> orbit_sum_rule(const FinAbGroup& tor, const DivisorClass& l,
                                                  const PicAutomorphism& sigma,
                                                  const AxiomSet& axioms);

struct ExclusionConstraint {
    DivisorClass a, b;
    DivisorClass obstruction;  // the known-non-effective sum
};

struct PairingResult {
    std::optional<NonEffectivityProof> proof;        // when upgraded
    std::optional<ExclusionConstraint> exclusion;    // "not both effective"
};

/// Pairing rule: when A + B is known non-effective, A and B cannot both be
/// effective; if one is known effective the other is proved non-effective,
/// and A = B upgrades immediately (twice an effective class is effective).
PairingResult pairing_rule(const FinAbGroup& tor, const DivisorClass& a, const DivisorClass& b,
                           const AxiomSet& axioms);

struct ClassOrbit {
    std::vector<DivisorClass> classes;  // closed under every registered generator
};

struct VanishingReport {
    std::string surface;
    std::vector<DivisorClass> candidates;            // all degree-1 classes
    std::vector<NonEffectivityProof> proved;         // canonical order
    std::vector<DivisorClass> undetermined;
    std::vector<ClassOrbit> undetermined_orbits;
    std::vector<ExclusionConstraint> exclusions;     // saturated under orbit closure
    std::vector<std::pair<int, int>> orbit_exclusions;
    /// Largest number of candidate classes that could be simultaneously
    /// effective given the exclusion constraints.
    int max_simultaneously_effective = 0;
    std::vector<GroupElement> offsets_checked;       // cube-root branches examined
    bool branch_independent = true;
    std::vector<std::string> axioms_used;
    std::vector<std::string> notes;

    bool contains_undetermined(const DivisorClass& d) const;
};

/// Fixed-point iteration of the orbit-sum and pairing rules over all degree-1
/// classes and registered automorphisms, across every admissible cube-root
/// branch. Deterministic: candidates are processed in (degree, torsion)
/// lexicographic order. Extra axioms extend the surface's default set.
VanishingReport run_vanishing(const FppDescriptor& surface,
                              const std::vector<NonEffectiveAxiom>& extra_axioms = {});

/// Re-derives every proof in a report from scratch; used by tests and the
/// explain command.
bool replay_proofs(const FppDescriptor& surface, const VanishingReport& report);

enum class PairCase { Distinct, InfinitelyNear1, InfinitelyNear2 };

enum class ObstructionVerdict { Contradicted, Inconclusive };

/// Torsion class that would restrict trivially to D1 if the non-separation
/// scenario held. Nonzero torsion contradicts the scenario by injectivity of
/// the restriction on torsion.
struct SeparationCertificate {
    PairCase pair_case;
    GroupElement delta;
    ObstructionVerdict verdict;
};

SeparationCertificate separation_obstruction(const FinAbGroup& tor,
                                             const std::vector<DivisorClass>& sigma_orbit,
                                             const PicAutomorphism& sigma, PairCase pair_case);

enum class BicanonicalVerdict { Embedding, EmbeddingOutsideFixedPoints };

struct BicanonicalReport {
    std::string surface;
    BicanonicalVerdict verdict;
    int exceptional_points_max = 0;  // bound on unseparated points (0, 2 or 3)
    VanishingReport vanishing;
    std::vector<ReiderFeasible> separation_cases;  // from the Reider filter
    /// Per undetermined orbit: the three separation certificates, when the
    /// obstruction argument applies.
    std::vector<std::vector<SeparationCertificate>> orbit_obstructions;
};

/// Combines the vanishing engine, the Reider filter and the separation
/// obstructions. Only surfaces from the registry scope (Aut = C3 or C3xC3,
/// lifting to SU(2,1)) are handled.
BicanonicalReport bicanonical_verdict(const FppDescriptor& surface);

nlohmann::ordered_json to_json(const VanishingReport& r);
nlohmann::ordered_json to_json(const BicanonicalReport& r);

/// Human-readable proof chain for one candidate class.
std::string explain_class(const FppDescriptor& surface, const VanishingReport& report,
                          const DivisorClass& cls);

}  // namespace fpp
