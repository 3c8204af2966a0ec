#include "fpp/snf.hpp"

#include <cstdlib>
#include <stdexcept>
#include <tuple>

namespace fpp {

BigInt determinant(Mat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::size_t SnfDecomposition::rank() const {
    std::size_t r = 0;
    std::size_t d = std::min(s.rows(), s.cols());
    for (std::size_t i = 0; i < d; ++i)
        if (s(i, i) != 0) ++r;
    return r;
}

BigInt SnfDecomposition::diag(std::size_t i) const {
    if (i < std::min(s.rows(), s.cols())) return s(i, i);
    return 0;
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? -x : x; }

// g = a*p + b*q with g = gcd(p, q) >= 0 and small Bezout coefficients.
std::tuple<BigInt, BigInt, BigInt> extgcd(const BigInt& p, const BigInt& q) {
    BigInt r0 = p, r1 = q, a0 = 1, a1 = 0, b0 = 0, b1 = 1;
    while (r1 != 0) {
        BigInt k = r0 / r1;  // truncated division keeps coefficients small
        r0 -= k * r1;
        a0 -= k * a1;
        b0 -= k * b1;
        std::swap(r0, r1);
        std::swap(a0, a1);
        std::swap(b0, b1);
    }
    if (r0 < 0) {
        r0 = -r0;
        a0 = -a0;
        b0 = -b0;
    }
    return {r0, a0, b0};
}

// Elementary unimodular operations applied to s are mirrored on the
// transforms so that u*m*v == s and u*u_inv == v*v_inv == I throughout.
struct Work {
    Mat s, u, v, u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
        for (std::size_t i = 0; i < u_inv.rows(); ++i) std::swap(u_inv(i, a), u_inv(i, b));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
        for (std::size_t j = 0; j < v_inv.cols(); ++j) std::swap(v_inv(a, j), v_inv(b, j));
    }
    // row b += c * row a
    void add_row(std::size_t b, std::size_t a, const BigInt& c) {
        if (c == 0) return;
        for (std::size_t j = 0; j < s.cols(); ++j) s(b, j) += c * s(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(b, j) += c * u(a, j);
        for (std::size_t i = 0; i < u_inv.rows(); ++i) u_inv(i, a) -= c * u_inv(i, b);
    }
    // col b += c * col a
    void add_col(std::size_t b, std::size_t a, const BigInt& c) {
        if (c == 0) return;
        for (std::size_t i = 0; i < s.rows(); ++i) s(i, b) += c * s(i, a);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, b) += c * v(i, a);
        for (std::size_t j = 0; j < v_inv.cols(); ++j) v_inv(a, j) -= c * v_inv(b, j);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < s.cols(); ++j) s(a, j) = -s(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(a, j) = -u(a, j);
        for (std::size_t i = 0; i < u_inv.rows(); ++i) u_inv(i, a) = -u_inv(i, a);
    }

    // Left-multiply rows (t, i) by [[a, b], [c, d]] with det 1; the inverse
    // [[d, -b], [-c, a]] is applied to the columns of u_inv.
    void rotate_rows(std::size_t t, std::size_t i, const BigInt& a, const BigInt& b,
                     const BigInt& c, const BigInt& d) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            BigInt x = s(t, j), y = s(i, j);
            s(t, j) = a * x + b * y;
            s(i, j) = c * x + d * y;
        }
        for (std::size_t j = 0; j < u.cols(); ++j) {
            BigInt x = u(t, j), y = u(i, j);
            u(t, j) = a * x + b * y;
            u(i, j) = c * x + d * y;
        }
        for (std::size_t r = 0; r < u_inv.rows(); ++r) {
            BigInt x = u_inv(r, t), y = u_inv(r, i);
            u_inv(r, t) = d * x - c * y;
            u_inv(r, i) = -b * x + a * y;
        }
    }
    // Right-multiply columns (t, j) by the transpose pattern, det 1.
    void rotate_cols(std::size_t t, std::size_t j, const BigInt& a, const BigInt& b,
                     const BigInt& c, const BigInt& d) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            BigInt x = s(i, t), y = s(i, j);
            s(i, t) = a * x + b * y;
            s(i, j) = c * x + d * y;
        }
        for (std::size_t i = 0; i < v.rows(); ++i) {
            BigInt x = v(i, t), y = v(i, j);
            v(i, t) = a * x + b * y;
            v(i, j) = c * x + d * y;
        }
        for (std::size_t cjj = 0; cjj < v_inv.cols(); ++cjj) {
            BigInt x = v_inv(t, cjj), y = v_inv(j, cjj);
            v_inv(t, cjj) = d * x - c * y;
            v_inv(j, cjj) = -b * x + a * y;
        }
    }

    // Clear s(i, t) against the pivot s(t, t): a plain subtraction when the
    // pivot divides it, otherwise one extended-gcd rotation that also shrinks
    // the pivot to the gcd.
    void clear_in_column(std::size_t t, std::size_t i) {
        if (s(i, t) == 0) return;
        if (s(i, t) % s(t, t) == 0) {
            add_row(i, t, -s(i, t) / s(t, t));
            return;
        }
        auto [g, a, b] = extgcd(s(t, t), s(i, t));
        rotate_rows(t, i, a, b, -s(i, t) / g, s(t, t) / g);
    }
    void clear_in_row(std::size_t t, std::size_t j) {
        if (s(t, j) == 0) return;
        if (s(t, j) % s(t, t) == 0) {
            add_col(j, t, -s(t, j) / s(t, t));
            return;
        }
        auto [g, a, b] = extgcd(s(t, t), s(t, j));
        rotate_cols(t, j, a, b, -s(t, j) / g, s(t, t) / g);
    }
};

}  // namespace

SnfDecomposition smith_normal_form(const Mat& m) {
    std::size_t r = m.rows(), c = m.cols();
    Work w{m, Mat::identity(r), Mat::identity(c), Mat::identity(r), Mat::identity(c)};

    std::size_t dim = std::min(r, c);
    for (std::size_t t = 0; t < dim; ++t) {
        // Pick the smallest nonzero entry of the trailing block as pivot.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (w.s(i, j) != 0 && (!found || abs_big(w.s(i, j)) < abs_big(w.s(pi, pj)))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            // Each gcd rotation leaves a zero behind and can only shrink the
            // pivot, so alternating the two sweeps terminates.
            for (std::size_t i = t + 1; i < r; ++i) w.clear_in_column(t, i);
            for (std::size_t j = t + 1; j < c; ++j) w.clear_in_row(t, j);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) clean = clean && w.s(i, t) == 0;
            for (std::size_t j = t + 1; j < c; ++j) clean = clean && w.s(t, j) == 0;
            if (!clean) continue;

            // Enforce divisibility of the trailing block by the pivot: pull
            // one offending column into column t and reduce again.
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j)
                    if (w.s(i, j) % w.s(t, t) != 0) {
                        w.add_col(t, j, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.s(t, t) < 0) w.negate_row(t);
    }

    return SnfDecomposition{w.u, w.s, w.v, w.u_inv, w.v_inv};
}

std::optional<std::vector<BigInt>> solve_integral(const SnfDecomposition& snf, const Mat& m,
                                                  const std::vector<BigInt>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_integral: size mismatch");
    std::vector<BigInt> ub = mul_vec(snf.u, b);
    std::vector<BigInt> y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt d = snf.diag(i);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            if (i < m.cols()) y[i] = ub[i] / d;
        }
    }
    return mul_vec(snf.v, y);
}

std::optional<std::vector<BigInt>> solve_integral(const Mat& m, const std::vector<BigInt>& b) {
    return solve_integral(smith_normal_form(m), m, b);
}

Mat kernel_basis(const Mat& m) {
    SnfDecomposition snf = smith_normal_form(m);
    std::size_t rank = snf.rank();
    std::size_t k = m.cols() - rank;
    Mat basis(m.cols(), k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) basis(i, j) = snf.v(i, rank + j);
    return basis;
}

}  // namespace fpp
