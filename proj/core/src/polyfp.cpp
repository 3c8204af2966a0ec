#include "fpp/polyfp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fpp {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 addm(i64 a, i64 b, i64 p) { return (a + b) % p; }
i64 subm(i64 a, i64 b, i64 p) { return ((a - b) % p + p) % p; }
i64 mulm(i64 a, i64 b, i64 p) { return static_cast<i64>(i128(a) * b % p); }

i64 invm(i64 a, i64 p) {
    // Fermat; p is prime.
    i64 r = 1, e = p - 2, b = a % p;
    while (e) {
        if (e & 1) r = mulm(r, b, p);
        b = mulm(b, b, p);
        e >>= 1;
    }
    return r;
}

void trim(std::vector<i64>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

bool PolyFp::operator<(const PolyFp& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return c < o.c;
}

std::string PolyFp::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) {
            if (c[i] != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PolyFp poly_from_coeffs(i64 p, std::vector<i64> coeffs) {
    for (auto& x : coeffs) x = ((x % p) + p) % p;
    trim(coeffs);
    return PolyFp{p, std::move(coeffs)};
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b) {
    if (a.is_zero() || b.is_zero()) return PolyFp{a.p, {}};
    std::vector<i64> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = addm(c[i + j], mulm(a.c[i], b.c[j], a.p), a.p);
    trim(c);
    return PolyFp{a.p, std::move(c)};
}

PolyFp poly_mod(const PolyFp& a, const PolyFp& m) {
    if (m.is_zero()) throw std::invalid_argument("modulus is zero");
    std::vector<i64> r = a.c;
    i64 p = m.p;
    i64 lead_inv = invm(m.c.back(), p);
    while (static_cast<int>(r.size()) - 1 >= m.degree()) {
        if (r.back() == 0) {
            r.pop_back();
            continue;
        }
        i64 q = mulm(r.back(), lead_inv, p);
        std::size_t shift = r.size() - m.c.size();
        for (std::size_t i = 0; i < m.c.size(); ++i)
            r[shift + i] = subm(r[shift + i], mulm(q, m.c[i], p), p);
        trim(r);
    }
    return PolyFp{p, std::move(r)};
}

PolyFp poly_gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.c.back() != 1) {
        i64 s = invm(a.c.back(), a.p);
        for (auto& x : a.c) x = mulm(x, s, a.p);
    }
    return a;
}

PolyFp poly_pow_x_mod(i64 e, const PolyFp& m) {
    PolyFp base = poly_mod(poly_from_coeffs(m.p, {0, 1}), m);
    PolyFp acc = poly_mod(poly_from_coeffs(m.p, {1}), m);
    while (e) {
        if (e & 1) acc = poly_mod(poly_mul(acc, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return acc;
}

namespace {

// Quotient of an exact division (remainder known to vanish).
PolyFp poly_div_exact(const PolyFp& num, const PolyFp& den) {
    i64 p = num.p;
    std::vector<i64> r = num.c;
    std::vector<i64> q(num.c.size() - den.c.size() + 1, 0);
    i64 li = invm(den.c.back(), p);
    for (int d = static_cast<int>(r.size()) - 1; d >= den.degree(); --d) {
        if (r[d] == 0) continue;
        i64 coef = mulm(r[d], li, p);
        q[d - den.degree()] = coef;
        for (std::size_t i = 0; i < den.c.size(); ++i)
            r[d - den.degree() + i] = subm(r[d - den.degree() + i], mulm(coef, den.c[i], p), p);
    }
    return poly_from_coeffs(p, std::move(q));
}

// Deterministic Berlekamp factorization of a squarefree monic f over F_p.
std::vector<PolyFp> berlekamp(const PolyFp& f) {
    int n = f.degree();
    i64 p = f.p;
    if (n <= 1) return {f};

    // Frobenius matrix: column j holds x^(j*p) mod f.
    std::vector<std::vector<i64>> q(n, std::vector<i64>(n, 0));
    PolyFp xp = poly_pow_x_mod(p, f);
    PolyFp cur = poly_from_coeffs(p, {1});
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= cur.degree(); ++i) q[i][j] = cur.c[i];
        cur = poly_mod(poly_mul(cur, xp), f);
    }
    for (int i = 0; i < n; ++i) q[i][i] = subm(q[i][i], 1, p);

    // Kernel of Q - I by Gaussian elimination over F_p.
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int row = rank; row < n; ++row)
            if (q[row][col] != 0) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        std::swap(q[piv], q[rank]);
        i64 s = invm(q[rank][col], p);
        for (int j = 0; j < n; ++j) q[rank][j] = mulm(q[rank][j], s, p);
        for (int row = 0; row < n; ++row) {
            if (row == rank || q[row][col] == 0) continue;
            i64 c = q[row][col];
            for (int j = 0; j < n; ++j) q[row][j] = subm(q[row][j], mulm(c, q[rank][j], p), p);
        }
        pivot_col[rank++] = col;
    }
    std::vector<PolyFp> basis;
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<i64> v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = subm(0, q[r][col], p);
        basis.push_back(poly_from_coeffs(p, v));
    }

    std::size_t target = basis.size();  // number of irreducible factors
    std::vector<PolyFp> factors{f};
    for (const PolyFp& v : basis) {
        if (factors.size() >= target) break;
        if (v.degree() < 1) continue;  // constants never split
        std::vector<PolyFp> next;
        for (const PolyFp& h : factors) {
            PolyFp rest = h;
            for (i64 s = 0; s < p && rest.degree() > 1; ++s) {
                PolyFp vs = v;
                vs.c[0] = subm(vs.c[0], s, p);
                trim(vs.c);
                PolyFp g = poly_gcd(rest, vs);
                if (g.degree() >= 1 && g.degree() < rest.degree()) {
                    next.push_back(g);
                    rest = poly_div_exact(rest, g);
                }
            }
            if (rest.degree() >= 1) next.push_back(rest);
        }
        factors = std::move(next);
    }
    return factors;
}

}  // namespace

std::vector<PolyFp> factor_cyclotomic_mod_p(i64 n, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (n < 1) throw std::invalid_argument("n must be positive");

    // Split off the p-part: x^n - 1 = (x^m - 1)^(p^e) with p not dividing m.
    i64 mult = 1, m = n;
    while (m % p == 0) {
        m /= p;
        mult *= p;
    }

    std::vector<i64> coeffs(m + 1, 0);
    coeffs[0] = p - 1;  // -1 mod p
    coeffs[m] = 1;
    PolyFp f = poly_from_coeffs(p, coeffs);

    std::vector<PolyFp> irred = berlekamp(f);
    std::sort(irred.begin(), irred.end());

    std::vector<PolyFp> out;
    for (const auto& g : irred)
        for (i64 i = 0; i < mult; ++i) out.push_back(g);
    return out;
}

CyclicFixedDims cyclic_action_fixed_count(int n_copies, i64 p, i64 m, bool require_faithful,
                                          std::optional<int> max_fixed_dim) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (m < 1 || n_copies < 0) throw std::invalid_argument("bad dimensions");
    if (m % p == 0)
        throw std::invalid_argument("p divides m: the group algebra is not semisimple");

    std::vector<PolyFp> factors = factor_cyclotomic_mod_p(m, p);
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());

    PolyFp x_minus_1 = poly_from_coeffs(p, {p - 1, 1});

    // Multiplicative order of the roots of each factor: least d | m with
    // factor | x^d - 1.
    std::vector<i64> root_order(factors.size());
    std::vector<int> degs(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        degs[i] = factors[i].degree();
        for (i64 d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            if (poly_pow_x_mod(d, factors[i]) == poly_mod(poly_from_coeffs(p, {1}), factors[i])) {
                root_order[i] = d;
                break;
            }
        }
    }

    CyclicFixedDims out;
    out.factor_degrees = degs;

    // Enumerate direct-sum decompositions n = sum of factor degrees; the fixed
    // dimension is the multiplicity of the (x - 1) summand.
    std::set<std::tuple<std::size_t, int, int, i64>> seen;
    auto dfs = [&](auto&& self, std::size_t idx, int remaining, int fixed, i64 lcm_ord) -> void {
        if (remaining == 0) {
            if (!require_faithful || lcm_ord == m) out.feasible.insert(fixed);
            return;
        }
        if (idx == factors.size()) return;
        if (!seen.insert({idx, remaining, fixed, lcm_ord}).second) return;
        self(self, idx + 1, remaining, fixed, lcm_ord);
        if (degs[idx] <= remaining) {
            bool trivial = factors[idx] == x_minus_1;
            self(self, idx, remaining - degs[idx], fixed + (trivial ? 1 : 0),
                 std::lcm(lcm_ord, root_order[idx]));
        }
    };
    dfs(dfs, 0, n_copies, 0, 1);

    if (max_fixed_dim) {
        std::set<int> filtered;
        for (int f : out.feasible)
            if (f <= *max_fixed_dim) filtered.insert(f);
        out.feasible = filtered;
    }
    out.forced_min = out.feasible.empty() ? -1 : *out.feasible.begin();
    return out;
}

}  // namespace fpp
