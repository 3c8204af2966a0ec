#pragma once

#include <optional>
#include <vector>

#include "fpp/matrix.hpp"

namespace fpp {

/// Smith normal form u*m*v = s with u, v unimodular and s diagonal,
/// diagonal entries nonnegative and forming a divisibility chain.
/// u_inv and v_inv are the exhibited integer inverses.
struct SnfDecomposition {
    Mat u, s, v;
    Mat u_inv, v_inv;

    std::size_t rank() const;
    /// Diagonal entry i, or 0 past the diagonal.
    BigInt diag(std::size_t i) const;
};

SnfDecomposition smith_normal_form(const Mat& m);

/// One integral solution of m*x = b, if any.
std::optional<std::vector<BigInt>> solve_integral(const SnfDecomposition& snf, const Mat& m,
                                                  const std::vector<BigInt>& b);
std::optional<std::vector<BigInt>> solve_integral(const Mat& m, const std::vector<BigInt>& b);

/// Basis of the integer kernel lattice {x : m*x = 0}, one column per basis vector.
Mat kernel_basis(const Mat& m);

}  // namespace fpp
