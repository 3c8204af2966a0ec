#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/picard.hpp"

namespace fpp {

struct CheckResult {
    std::string name;
    std::string statement;  // the mathematical claim being verified
    bool pass = false;
    std::string detail;     // computed values, counterexamples
};

struct VerificationRun {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    int failures() const;
    bool ok() const { return failures() == 0; }
};

/// Runs the whole named check suite against a registry (the builtin one by
/// default). Deterministic for a fixed seed.
VerificationRun run_all_checks(std::uint64_t seed,
                               const std::vector<FppDescriptor>& rows = registry());

/// Names of all checks, in execution order.
std::vector<std::string> check_names();

/// Derivation chain for a named check. Throws std::out_of_range with
/// suggestions when the name is unknown.
std::string explain_check(const std::string& name);

nlohmann::ordered_json to_json(const VerificationRun& run);
std::string format_text(const VerificationRun& run);

// Helpers shared with the acceptance suite.

/// All abelian groups of order <= max_order (by canonical invariant factors).
std::vector<FinAbGroup> abelian_groups_up_to(std::int64_t max_order);

/// Deterministic sample of automorphisms with g^m = id and gcd(m, exp H) = 1;
/// returns (automorphism, m) pairs. Used by the trace-isomorphism scan.
struct SampledAut {
    FinAbGroup group;
    GroupEndo aut;
    std::int64_t order;
};
std::vector<SampledAut> sample_coprime_automorphisms(std::uint64_t seed, int count,
                                                     std::int64_t max_order);

/// Up to `want` distinct order-3 automorphisms of g from randomized draws.
std::vector<GroupEndo> sample_order3_automorphisms(std::mt19937_64& rng, const FinAbGroup& g,
                                                   int want, int tries);

/// Fixed dimension of a faithful cyclic action of order m on (Z/p)^n when the
/// fixed subgroup is also bounded (order at most max_fixed_order).
int pinned_fixed_dimension(int n, std::int64_t p, std::int64_t m, std::int64_t max_fixed_order);

}  // namespace fpp
