#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fpp {

/// Monic-normalized dense polynomial over F_p, little-endian coefficients.
struct PolyFp {
    std::int64_t p = 2;
    std::vector<std::int64_t> c;  // c[i] coefficient of x^i, reduced mod p, no leading zeros

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c.empty(); }

    bool operator==(const PolyFp&) const = default;
    bool operator<(const PolyFp& o) const;  // by degree, then coefficients

    std::string to_string() const;  // e.g. "x^3 + x + 1"
};

bool is_prime(std::int64_t n);

PolyFp poly_from_coeffs(std::int64_t p, std::vector<std::int64_t> coeffs);
PolyFp poly_mul(const PolyFp& a, const PolyFp& b);
PolyFp poly_mod(const PolyFp& a, const PolyFp& m);
PolyFp poly_gcd(PolyFp a, PolyFp b);  // monic gcd
PolyFp poly_pow_x_mod(std::int64_t e, const PolyFp& m);  // x^e mod m

/// Complete factorization of x^n - 1 over F_p into monic irreducibles
/// (deterministic Berlekamp splitting), sorted, with repetitions when p | n.
/// The product reconstructs x^n - 1 exactly.
std::vector<PolyFp> factor_cyclotomic_mod_p(std::int64_t n, std::int64_t p);

/// Decomposition analysis for a linear action of a cyclic group of order m on
/// an n-dimensional vector space over F_p: every module is a direct sum of
/// irreducibles matching the factors of x^m - 1, so the fixed-subspace
/// dimension is the multiplicity of the (x - 1) summand.
struct CyclicFixedDims {
    std::vector<int> factor_degrees;   // degrees of the distinct irreducible factors
    std::set<int> feasible;            // attainable fixed dimensions
    int forced_min = 0;                // fixed dimension with no unforced trivial summand
};

CyclicFixedDims cyclic_action_fixed_count(int n_copies, std::int64_t p, std::int64_t m,
                                          bool require_faithful = true,
                                          std::optional<int> max_fixed_dim = std::nullopt);

}  // namespace fpp
