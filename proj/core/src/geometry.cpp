#include "fpp/geometry.hpp"

#include <numeric>
#include <stdexcept>

namespace fpp {

namespace {
using i64 = std::int64_t;
}

std::string reider_case_name(ReiderCase c) {
    switch (c) {
        case ReiderCase::BP_A: return "BP_A";
        case ReiderCase::BP_B: return "BP_B";
        case ReiderCase::SEP_A: return "SEP_A";
        case ReiderCase::SEP_B: return "SEP_B";
        case ReiderCase::SEP_C: return "SEP_C";
        case ReiderCase::SEP_D: return "SEP_D";
    }
    return "?";
}

std::vector<ReiderFeasible> reider_filter(i64 l2, i64 generator_square, i64 l_degree,
                                          ReiderMode mode) {
    if (generator_square != 1)
        throw std::invalid_argument("reider_filter models rank-1 lattices with generator^2 = 1");
    if (l2 != l_degree * l_degree)
        throw std::invalid_argument("L^2 must equal L_degree^2 on this lattice");
    if (mode == ReiderMode::BasePoint && l2 < 5)
        throw std::invalid_argument("base point criterion needs L^2 >= 5");
    if (mode == ReiderMode::Separation && l2 < 9)
        throw std::invalid_argument("separation criterion needs L^2 >= 9");

    std::vector<ReiderFeasible> out;
    // Effective D = m * generator with m >= 1, so D^2 = m^2 and DL = m * deg L.
    for (i64 m = 1; m <= std::max<i64>(l_degree, 3); ++m) {
        i64 d2 = m * m;
        i64 dl = m * l_degree;
        auto emit = [&](ReiderCase c) {
            ReiderFeasible f{c, m, d2, dl, 0, 0};
            if (c == ReiderCase::SEP_D) {
                f.k_dot_d = 3 * m;
                f.p_a = (d2 + 3 * m) / 2 + 1;
            }
            out.push_back(f);
        };
        if (mode == ReiderMode::BasePoint) {
            if (dl == 0 && d2 == -1) emit(ReiderCase::BP_A);
            if (dl == 1 && d2 == 0) emit(ReiderCase::BP_B);
        } else {
            if (dl == 0 && (d2 == -2 || d2 == -1)) emit(ReiderCase::SEP_A);
            if (dl == 1 && (d2 == -1 || d2 == 0)) emit(ReiderCase::SEP_B);
            if (dl == 2 && d2 == 0) emit(ReiderCase::SEP_C);
            if (l2 == 9 && l_degree == 3 * m) emit(ReiderCase::SEP_D);
        }
    }
    return out;
}

GenusCertificate genus_certificate(const DivisorClass& d, bool no_geodesics) {
    i64 pa = arithmetic_genus(d);
    i64 kd = 3 * d.degree;
    // 3(2g'-2) >= 2 K.D, with equality only for totally geodesic curves.
    // Smallest integer g' with 6g' - 6 >= 2kd, strict when geodesics are excluded.
    i64 bound = (2 * kd + 6 + 5) / 6;  // ceil((2kd+6)/6)
    if (no_geodesics && (2 * kd + 6) % 6 == 0) bound += 1;
    return GenusCertificate{pa, bound,
                            bound == pa ? SmoothnessVerdict::Smooth : SmoothnessVerdict::Inconclusive};
}

bool ResolutionGraph::is_du_val() const {
    for (i64 b : hj)
        if (b != 2) return false;
    return true;
}

namespace {

// Solve the tridiagonal system M x = rhs with M the intersection matrix
// (diagonal -b_i, off-diagonal 1). Exact forward elimination.
std::vector<Rational> solve_chain(const std::vector<i64>& b, const std::vector<Rational>& rhs) {
    std::size_t n = b.size();
    std::vector<Rational> diag(n), r(rhs);
    for (std::size_t i = 0; i < n; ++i) diag[i] = Rational(-b[i]);
    for (std::size_t i = 1; i < n; ++i) {
        Rational f = Rational(1) / diag[i - 1];
        diag[i] -= f;           // subtract (1/diag) * 1 from the sub-diagonal pivot
        r[i] -= f * r[i - 1];
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational t = r[i];
        if (i + 1 < n) t -= x[i + 1];
        x[i] = t / diag[i];
    }
    return x;
}

}  // namespace

ResolutionGraph hirzebruch_jung(i64 n, i64 q) {
    if (!(0 < q && q < n) || std::gcd(n, q) != 1)
        throw std::invalid_argument("need 0 < q < n with gcd(n, q) = 1");

    ResolutionGraph g;
    g.n = n;
    g.q = q;
    i64 a = n, c = q;
    while (c > 0) {
        i64 b = (a + c - 1) / c;  // ceil(a/c)
        g.hj.push_back(b);
        i64 next = b * c - a;
        a = c;
        c = next;
    }
    std::size_t k = g.hj.size();
    g.self_intersections.resize(k);
    g.intersection_matrix.assign(k, std::vector<i64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        g.self_intersections[i] = -g.hj[i];
        g.intersection_matrix[i][i] = -g.hj[i];
        if (i + 1 < k) {
            g.intersection_matrix[i][i + 1] = 1;
            g.intersection_matrix[i + 1][i] = 1;
        }
    }
    // Discrepancies from adjunction: (K + E_i) . E_i = -2, i.e. M a = b - 2.
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = Rational(g.hj[i] - 2);
    g.discrepancies = solve_chain(g.hj, rhs);
    return g;
}

PullbackResult pullback_proper_transform(const std::vector<ResolutionGraph>& graphs,
                                         const std::vector<std::vector<i64>>& incidence,
                                         const Rational& down_square) {
    if (graphs.size() != incidence.size())
        throw std::invalid_argument("one incidence vector per resolution graph required");
    PullbackResult out;
    out.proper_transform_square = down_square;
    for (std::size_t p = 0; p < graphs.size(); ++p) {
        const auto& g = graphs[p];
        const auto& inc = incidence[p];
        if (inc.size() != g.length())
            throw std::invalid_argument("incidence vector length mismatch");
        for (i64 v : inc)
            if (v < 0) throw std::invalid_argument("incidence multiplicities must be nonnegative");
        // D' = pullback - sum c_i E_i with D'.E_j = inc_j, hence M c = -inc.
        std::vector<Rational> rhs(g.length());
        for (std::size_t i = 0; i < g.length(); ++i) rhs[i] = Rational(-inc[i]);
        std::vector<Rational> c = solve_chain(g.hj, rhs);
        // The defining property (pullback . E_j = 0) re-checked exactly.
        for (std::size_t j = 0; j < g.length(); ++j) {
            Rational dot(0);
            for (std::size_t i = 0; i < g.length(); ++i)
                dot += Rational(g.intersection_matrix[j][i]) * c[i];
            if (dot + Rational(inc[j]) != 0)
                throw std::logic_error("pullback coefficients failed verification");
        }
        Rational corr(0);
        for (std::size_t i = 0; i < g.length(); ++i) corr += c[i] * Rational(inc[i]);
        i64 hits = 0, end_hits = 0;
        for (std::size_t i = 0; i < g.length(); ++i) {
            hits += inc[i];
            if (i == 0 || i + 1 == g.length()) end_hits += inc[i];
        }
        out.validated_pattern.push_back(g.is_du_val() && hits == 1 && end_hits == 1);
        out.coefficients.push_back(std::move(c));
        out.corrections.push_back(corr);
        out.proper_transform_square -= corr;
    }
    return out;
}

QuotientInvariants quotient_invariants(i64 group_order,
                                       const std::vector<SingularityCount>& singularities,
                                       i64 e_x, i64 k2_x, i64 fixed_points) {
    if (group_order < 1) throw std::invalid_argument("group order must be positive");
    QuotientInvariants out;
    out.group_order = group_order;
    out.singularities = singularities;

    Rational k2 = Rational(k2_x) / Rational(group_order);
    Rational e = Rational(e_x - fixed_points) / Rational(group_order);
    for (const auto& s : singularities) {
        ResolutionGraph g = hirzebruch_jung(s.n, s.q);
        // K_Y^2 correction: a . (M a) = a . (b - 2); a length-k chain replaces
        // a point by k curves, adding k + 1 to the Euler number.
        Rational corr(0);
        for (std::size_t i = 0; i < g.length(); ++i)
            corr += g.discrepancies[i] * Rational(g.hj[i] - 2);
        k2 += Rational(s.count) * corr;
        e += Rational(s.count) * Rational(static_cast<i64>(g.length()) + 1);
    }
    Rational chi = (k2 + e) / Rational(12);
    if (denominator(chi) != 1 || chi <= 0)
        throw std::invalid_argument("inconsistent quotient data: chi is not a positive integer");
    if (denominator(e) != 1)
        throw std::invalid_argument("inconsistent quotient data: e is not an integer");
    out.k2_resolution = k2;
    out.euler_resolution = to_i64(numerator(e));
    out.chi = to_i64(numerator(chi));
    return out;
}

i64 elliptic_pi1_datum(i64 a, i64 b) {
    if (a < 2 || b < 2) throw std::invalid_argument("multiple fibers need multiplicity >= 2");
    return std::gcd(a, b);
}

QuotientInvariants quotient_invariants_for(QuotientType t) {
    switch (t) {
        case QuotientType::C3:
            return quotient_invariants(3, {{3, 2, 3}}, 3, 9, 3);
        case QuotientType::C3xC3:
            return quotient_invariants(9, {{3, 2, 4}}, 3, 9, 12);
        case QuotientType::C7:
            return quotient_invariants(7, {{7, 5, 3}}, 3, 9, 3);
        case QuotientType::G21:
            return quotient_invariants(21, {{3, 2, 3}, {7, 5, 1}}, 3, 9, 24);
    }
    throw std::invalid_argument("unknown quotient type");
}

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

nlohmann::ordered_json to_json(const ResolutionGraph& g) {
    nlohmann::ordered_json disc = nlohmann::ordered_json::array();
    for (const auto& d : g.discrepancies) disc.push_back(rational_to_string(d));
    return {{"n", g.n},
            {"q", g.q},
            {"hirzebruch_jung", g.hj},
            {"self_intersections", g.self_intersections},
            {"intersection_matrix", g.intersection_matrix},
            {"discrepancies", disc},
            {"du_val", g.is_du_val()}};
}

nlohmann::ordered_json to_json(const QuotientInvariants& q) {
    nlohmann::ordered_json sings = nlohmann::ordered_json::array();
    for (const auto& s : q.singularities)
        sings.push_back({{"n", s.n}, {"q", s.q}, {"count", s.count}});
    return {{"group_order", q.group_order},
            {"singularities", sings},
            {"K2_resolution", rational_to_string(q.k2_resolution)},
            {"euler_resolution", q.euler_resolution},
            {"chi", q.chi}};
}

}  // namespace fpp
