#include "fpp/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fpp {

namespace {

using i64 = std::int64_t;

std::array<int, 2> sorted2(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

std::array<int, 3> sorted3(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

// Index lookup tables for a complex.
struct Ctx {
    const SimplicialComplex& k;
    std::map<int, int> vidx;
    std::map<std::array<int, 2>, int> eidx;

    explicit Ctx(const SimplicialComplex& kk) : k(kk) {
        for (std::size_t i = 0; i < k.vertices.size(); ++i) vidx[k.vertices[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < k.edges.size(); ++i) eidx[k.edges[i]] = static_cast<int>(i);
    }
};

// Permutations are stored on vertex ids.
using Perm = std::map<int, int>;

Perm compose_perm(const Perm& f, const Perm& g) {  // f after g
    Perm out;
    for (const auto& [v, gv] : g) out[v] = f.at(gv);
    return out;
}

Perm identity_perm(const SimplicialComplex& k) {
    Perm p;
    for (int v : k.vertices) p[v] = v;
    return p;
}

void validate_generator(const SimplicialComplex& k, const Perm& g) {
    std::set<int> image;
    for (int v : k.vertices) {
        auto it = g.find(v);
        if (it == g.end()) throw std::invalid_argument("generator does not cover every vertex");
        image.insert(it->second);
    }
    if (image.size() != k.vertices.size() ||
        !std::includes(image.begin(), image.end(), k.vertices.begin(), k.vertices.end()))
        throw std::invalid_argument("generator is not a vertex permutation");
    std::set<std::array<int, 2>> edges(k.edges.begin(), k.edges.end());
    for (const auto& e : k.edges)
        if (!edges.count(sorted2(g.at(e[0]), g.at(e[1]))))
            throw std::invalid_argument("generator does not map edges to edges");
    std::set<std::array<int, 3>> tris(k.triangles.begin(), k.triangles.end());
    for (const auto& t : k.triangles)
        if (!tris.count(sorted3(g.at(t[0]), g.at(t[1]), g.at(t[2]))))
            throw std::invalid_argument("generator does not map triangles to triangles");
}

}  // namespace

SimplicialComplex make_complex(const std::vector<std::vector<int>>& simplices) {
    SimplicialComplex k;
    std::set<int> vs;
    std::set<std::array<int, 2>> es;
    std::set<std::array<int, 3>> ts;
    for (const auto& s : simplices) {
        std::vector<int> t = s;
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            throw std::invalid_argument("simplex with repeated vertex");
        switch (t.size()) {
            case 1: vs.insert(t[0]); break;
            case 2:
                if (!es.insert({t[0], t[1]}).second)
                    throw std::invalid_argument("duplicate edge");
                break;
            case 3:
                if (!ts.insert({t[0], t[1], t[2]}).second)
                    throw std::invalid_argument("duplicate triangle");
                break;
            default: throw std::invalid_argument("only dimensions 0..2 supported");
        }
    }
    for (const auto& t : ts)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!es.count({t[i], t[j]}))
                    throw std::invalid_argument("complex not closed: triangle face missing");
    for (const auto& e : es)
        for (int v : e)
            if (!vs.count(v)) throw std::invalid_argument("complex not closed: edge vertex missing");
    k.vertices.assign(vs.begin(), vs.end());
    k.edges.assign(es.begin(), es.end());
    k.triangles.assign(ts.begin(), ts.end());
    return k;
}

SimplicialComplex closure(const std::vector<std::vector<int>>& generators) {
    std::vector<std::vector<int>> all;
    for (const auto& s : generators) {
        std::vector<int> t = s;
        std::sort(t.begin(), t.end());
        all.push_back(t);
        if (t.size() >= 2)
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    all.push_back({t[i], t[j]});
        for (int v : t) all.push_back({v});
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return make_complex(all);
}

std::vector<Perm> group_elements(const SimplicialComplex& k, const SimplicialAction& a) {
    for (const auto& g : a.generators) validate_generator(k, g);
    std::vector<Perm> elems{identity_perm(k)};
    std::set<std::vector<int>> seen;
    auto key = [&](const Perm& p) {
        std::vector<int> v;
        for (int u : k.vertices) v.push_back(p.at(u));
        return v;
    };
    seen.insert(key(elems[0]));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : a.generators) {
            Perm n = compose_perm(g, elems[i]);
            if (seen.insert(key(n)).second) {
                elems.push_back(std::move(n));
                if (elems.size() > 1000) throw std::invalid_argument("group order cap exceeded");
            }
        }
    }
    return elems;
}

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

std::vector<BigInt> Homology1::relation_moduli() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < torsion_positions.size(); ++i)
        out.push_back(torsion.invariant_factors()[i]);
    for (std::size_t i = 0; i < free_positions.size(); ++i) out.push_back(0);
    return out;
}

Homology1 h1(const SimplicialComplex& k) {
    // Validation doubles as the closedness check.
    std::vector<std::vector<int>> all;
    for (int v : k.vertices) all.push_back({v});
    for (const auto& e : k.edges) all.push_back({e[0], e[1]});
    for (const auto& t : k.triangles) all.push_back({t[0], t[1], t[2]});
    make_complex(all);

    Ctx ctx(k);
    std::size_t nv = k.vertices.size(), ne = k.edges.size(), nt = k.triangles.size();

    Mat d1(nv, ne);
    for (std::size_t j = 0; j < ne; ++j) {
        d1(ctx.vidx.at(k.edges[j][0]), j) -= 1;
        d1(ctx.vidx.at(k.edges[j][1]), j) += 1;
    }
    Mat d2(ne, nt);
    for (std::size_t j = 0; j < nt; ++j) {
        const auto& t = k.triangles[j];
        d2(ctx.eidx.at({t[1], t[2]}), j) += 1;
        d2(ctx.eidx.at({t[0], t[2]}), j) -= 1;
        d2(ctx.eidx.at({t[0], t[1]}), j) += 1;
    }

    Homology1 h;
    h.cycle_basis = kernel_basis(d1);
    h.cycle_snf = smith_normal_form(h.cycle_basis);
    std::size_t z = h.cycle_basis.cols();

    // Express the boundary image in the cycle basis and take the cokernel.
    Mat x(z, nt);
    for (std::size_t j = 0; j < nt; ++j) {
        std::vector<BigInt> col(ne);
        for (std::size_t i = 0; i < ne; ++i) col[i] = d2(i, j);
        auto sol = solve_integral(h.cycle_snf, h.cycle_basis, col);
        if (!sol) throw std::logic_error("boundary is not a cycle");
        for (std::size_t i = 0; i < z; ++i) x(i, j) = (*sol)[i];
    }
    SnfDecomposition xs = smith_normal_form(x);
    h.rel_u = xs.u;

    std::vector<i64> torsion_factors;
    for (std::size_t i = 0; i < z; ++i) {
        BigInt s = xs.diag(i);
        if (s == 0)
            h.free_positions.push_back(i);
        else if (s > 1) {
            torsion_factors.push_back(to_i64(s));
            h.torsion_positions.push_back(i);
        }
    }
    h.torsion = FinAbGroup(torsion_factors);
    h.free_rank = h.free_positions.size();

    auto make_cycle = [&](std::size_t pos) {
        std::vector<BigInt> y(z);
        for (std::size_t i = 0; i < z; ++i) y[i] = xs.u_inv(i, pos);
        std::vector<BigInt> cyc = mul_vec(h.cycle_basis, y);
        return cyc;
    };
    for (std::size_t pos : h.torsion_positions) h.generating_cycles.push_back(make_cycle(pos));
    for (std::size_t pos : h.free_positions) h.generating_cycles.push_back(make_cycle(pos));
    return h;
}

std::vector<BigInt> h1_coords(const SimplicialComplex& k, const Homology1& h, const Chain1& cycle) {
    if (cycle.size() != k.edges.size()) throw std::invalid_argument("chain length mismatch");
    // Must be a cycle: solvable against the cycle basis.
    auto y = solve_integral(h.cycle_snf, h.cycle_basis, cycle);
    if (!y) throw std::invalid_argument("chain is not a 1-cycle");
    std::vector<BigInt> uy = mul_vec(h.rel_u, *y);
    std::vector<BigInt> coords;
    for (std::size_t i = 0; i < h.torsion_positions.size(); ++i)
        coords.push_back(pos_mod(uy[h.torsion_positions[i]], h.torsion.invariant_factors()[i]));
    for (std::size_t pos : h.free_positions) coords.push_back(uy[pos]);
    return coords;
}

// ---------------------------------------------------------------------------
// Subdivision
// ---------------------------------------------------------------------------

Subdivision barycentric_subdivision(const SimplicialComplex& k) {
    Subdivision sd;
    int next = 0;
    for (int v : k.vertices) sd.vertex_image[v] = next++;
    for (const auto& e : k.edges) sd.edge_vertex[e] = next++;
    for (const auto& t : k.triangles) sd.tri_vertex[t] = next++;

    std::vector<std::vector<int>> simplices;
    for (int v : k.vertices) simplices.push_back({sd.vertex_image[v]});
    for (const auto& e : k.edges) simplices.push_back({sd.edge_vertex[e]});
    for (const auto& t : k.triangles) simplices.push_back({sd.tri_vertex[t]});
    for (const auto& e : k.edges) {
        int b = sd.edge_vertex[e];
        simplices.push_back({sd.vertex_image[e[0]], b});
        simplices.push_back({sd.vertex_image[e[1]], b});
    }
    for (const auto& t : k.triangles) {
        int bt = sd.tri_vertex[t];
        std::array<std::array<int, 2>, 3> faces{sorted2(t[0], t[1]), sorted2(t[0], t[2]),
                                                sorted2(t[1], t[2])};
        for (const auto& f : faces) {
            int bf = sd.edge_vertex[f];
            simplices.push_back({bt, bf});
            simplices.push_back({bt, sd.vertex_image[f[0]], bf});
            simplices.push_back({bt, sd.vertex_image[f[1]], bf});
        }
        for (int v : t) simplices.push_back({bt, sd.vertex_image[v]});
    }
    sd.complex = make_complex(simplices);
    return sd;
}

Chain1 subdivide_chain(const SimplicialComplex& k, const Subdivision& sd, const Chain1& c) {
    Ctx nctx(sd.complex);
    Chain1 out(sd.complex.edges.size(), 0);
    auto step = [&](int from, int to, const BigInt& coeff) {
        auto e = sorted2(from, to);
        int idx = nctx.eidx.at(e);
        out[idx] += (from < to ? coeff : -coeff);
    };
    for (std::size_t j = 0; j < k.edges.size(); ++j) {
        if (c[j] == 0) continue;
        const auto& e = k.edges[j];
        int b = sd.edge_vertex.at(e);
        // oriented e[0] -> e[1] passes through the barycenter
        step(sd.vertex_image.at(e[0]), b, c[j]);
        step(b, sd.vertex_image.at(e[1]), c[j]);
    }
    return out;
}

SimplicialAction extend_action(const SimplicialComplex& k, const Subdivision& sd,
                               const SimplicialAction& a) {
    SimplicialAction out;
    for (const auto& g : a.generators) {
        Perm n;
        for (int v : k.vertices) n[sd.vertex_image.at(v)] = sd.vertex_image.at(g.at(v));
        for (const auto& e : k.edges)
            n[sd.edge_vertex.at(e)] = sd.edge_vertex.at(sorted2(g.at(e[0]), g.at(e[1])));
        for (const auto& t : k.triangles)
            n[sd.tri_vertex.at(t)] = sd.tri_vertex.at(sorted3(g.at(t[0]), g.at(t[1]), g.at(t[2])));
        out.generators.push_back(std::move(n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quotient
// ---------------------------------------------------------------------------

namespace {

struct OrbitData {
    std::map<int, int> vertex_orbit;  // vertex -> orbit id
    int orbit_count = 0;
};

OrbitData vertex_orbits(const SimplicialComplex& k, const std::vector<Perm>& group) {
    OrbitData od;
    std::map<int, int> rep;
    for (int v : k.vertices) rep[v] = v;
    // union-find by minimum representative under the full group
    for (int v : k.vertices) {
        int r = v;
        for (const auto& g : group) r = std::min(r, g.at(v));
        rep[v] = r;
    }
    // representatives are minima of their orbit, stable under the group
    std::map<int, int> ids;
    for (int v : k.vertices) {
        int r = rep[v];
        if (!ids.count(r)) ids[r] = od.orbit_count++;
        od.vertex_orbit[v] = ids[r];
    }
    return od;
}

// Regularity of the action: no cell has two vertices in one orbit, and cells
// with the same orbit image lie in the same group orbit.
bool action_regular(const SimplicialComplex& k, const std::vector<Perm>& group,
                    const OrbitData& od) {
    auto degenerate2 = [&](const std::array<int, 2>& e) {
        return od.vertex_orbit.at(e[0]) == od.vertex_orbit.at(e[1]);
    };
    for (const auto& e : k.edges)
        if (degenerate2(e)) return false;
    for (const auto& t : k.triangles) {
        std::set<int> img{od.vertex_orbit.at(t[0]), od.vertex_orbit.at(t[1]),
                          od.vertex_orbit.at(t[2])};
        if (img.size() != 3) return false;
    }

    std::map<std::array<int, 2>, std::array<int, 2>> edge_bucket;  // image -> orbit rep
    for (const auto& e : k.edges) {
        std::array<int, 2> img = sorted2(od.vertex_orbit.at(e[0]), od.vertex_orbit.at(e[1]));
        std::array<int, 2> rep = e;
        for (const auto& g : group) rep = std::min(rep, sorted2(g.at(e[0]), g.at(e[1])));
        auto [it, inserted] = edge_bucket.emplace(img, rep);
        if (!inserted && it->second != rep) return false;
    }
    std::map<std::array<int, 3>, std::array<int, 3>> tri_bucket;
    for (const auto& t : k.triangles) {
        std::array<int, 3> img =
            sorted3(od.vertex_orbit.at(t[0]), od.vertex_orbit.at(t[1]), od.vertex_orbit.at(t[2]));
        std::array<int, 3> rep = t;
        for (const auto& g : group) rep = std::min(rep, sorted3(g.at(t[0]), g.at(t[1]), g.at(t[2])));
        auto [it, inserted] = tri_bucket.emplace(img, rep);
        if (!inserted && it->second != rep) return false;
    }
    return true;
}

}  // namespace

Chain1 QuotientResult::lift_chain(const Chain1& original) const {
    Chain1 c = original;
    for (const auto& [complex, sd] : stages) c = subdivide_chain(complex, sd, c);
    return c;
}

QuotientResult quotient_complex(const SimplicialComplex& k, const SimplicialAction& a) {
    QuotientResult out;
    out.domain = k;
    out.domain_action = a;
    for (int attempt = 0; attempt <= 2; ++attempt) {
        std::vector<Perm> group = group_elements(out.domain, out.domain_action);
        OrbitData od = vertex_orbits(out.domain, group);
        if (action_regular(out.domain, group, od)) {
            out.vertex_map = od.vertex_orbit;
            std::set<int> vs;
            std::set<std::array<int, 2>> es;
            std::set<std::array<int, 3>> ts;
            for (int v : out.domain.vertices) vs.insert(od.vertex_orbit.at(v));
            for (const auto& e : out.domain.edges)
                es.insert(sorted2(od.vertex_orbit.at(e[0]), od.vertex_orbit.at(e[1])));
            for (const auto& t : out.domain.triangles)
                ts.insert(sorted3(od.vertex_orbit.at(t[0]), od.vertex_orbit.at(t[1]),
                                  od.vertex_orbit.at(t[2])));
            out.quotient.vertices.assign(vs.begin(), vs.end());
            out.quotient.edges.assign(es.begin(), es.end());
            out.quotient.triangles.assign(ts.begin(), ts.end());
            out.subdivisions_applied = attempt;
            return out;
        }
        if (attempt == 2) break;
        Subdivision sd = barycentric_subdivision(out.domain);
        SimplicialAction next_action = extend_action(out.domain, sd, out.domain_action);
        out.stages.emplace_back(out.domain, sd);
        out.domain = sd.complex;
        out.domain_action = next_action;
    }
    throw std::logic_error("action not regular after two barycentric subdivisions");
}

Chain1 quotient_chain(const QuotientResult& q, const Chain1& c) {
    Ctx qctx(q.quotient);
    Chain1 out(q.quotient.edges.size(), 0);
    for (std::size_t j = 0; j < q.domain.edges.size(); ++j) {
        if (c[j] == 0) continue;
        const auto& e = q.domain.edges[j];
        int a = q.vertex_map.at(e[0]);
        int b = q.vertex_map.at(e[1]);
        auto img = sorted2(a, b);
        out[qctx.eidx.at(img)] += (a < b ? c[j] : -c[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Presented finitely generated abelian groups (internal helpers)
// ---------------------------------------------------------------------------

namespace {

FgAbInvariants invariants_of_presentation(std::size_t gens, const Mat& relations) {
    SnfDecomposition s = smith_normal_form(relations);
    FgAbInvariants out;
    std::vector<i64> tors;
    for (std::size_t i = 0; i < gens; ++i) {
        BigInt d = s.diag(i);
        if (d == 0)
            ++out.free_rank;
        else if (d > 1)
            tors.push_back(to_i64(d));
    }
    out.torsion = FinAbGroup(tors);
    return out;
}

// Basis of the column span of m (columns may be redundant).
Mat image_lattice_basis(const Mat& m) {
    SnfDecomposition s = smith_normal_form(m);
    std::size_t r = s.rank();
    Mat basis(m.rows(), r);
    // im(m) = u_inv * im(s); column i of s is s_ii * e_i for i < r.
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) basis(i, j) = s.u_inv(i, j) * s.diag(j);
    return basis;
}

Mat hstack(const Mat& a, const Mat& b) {
    Mat out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

Mat diag_mat(const std::vector<BigInt>& d) {
    Mat out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
}

// Kernel of a homomorphism between presented groups, as abstract invariants:
// the map sends generator j of the source to column j of f in the target.
FgAbInvariants hom_kernel(const Mat& f, const Mat& src_relations, const Mat& dst_relations) {
    // Lattice L = {x : f x lies in the target relation lattice}.
    Mat big = hstack(f, dst_relations);
    Mat ker = kernel_basis(big);
    Mat gen(f.cols(), ker.cols());
    for (std::size_t i = 0; i < f.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) gen(i, j) = ker(i, j);
    Mat lbasis = image_lattice_basis(hstack(gen, src_relations));
    // Kernel group = L / source relations: express the relations in the basis.
    SnfDecomposition lsnf = smith_normal_form(lbasis);
    Mat x(lbasis.cols(), src_relations.cols());
    for (std::size_t j = 0; j < src_relations.cols(); ++j) {
        std::vector<BigInt> col(src_relations.rows());
        for (std::size_t i = 0; i < src_relations.rows(); ++i) col[i] = src_relations(i, j);
        auto sol = solve_integral(lsnf, lbasis, col);
        if (!sol) throw std::logic_error("relations escape the kernel lattice");
        for (std::size_t i = 0; i < lbasis.cols(); ++i) x(i, j) = (*sol)[i];
    }
    return invariants_of_presentation(lbasis.cols(), x);
}

std::string fg_to_string(const FgAbInvariants& g) {
    std::string s;
    if (g.free_rank > 0) s = "Z^" + std::to_string(g.free_rank);
    if (!g.torsion.is_trivial()) s += (s.empty() ? "" : " x ") + g.torsion.to_string();
    return s.empty() ? "0" : s;
}

// Concrete finite group with a multiplication table (indices into elems).
struct ConcreteGroup {
    std::vector<Perm> elems;
    std::vector<std::vector<int>> mult;
    int identity = 0;

    int order(int a) const {
        int x = a, n = 1;
        while (x != identity) {
            x = mult[a][x];
            ++n;
        }
        return n;
    }
};

ConcreteGroup make_concrete(const std::vector<Perm>& elems, const std::vector<int>& vertices) {
    ConcreteGroup g;
    g.elems = elems;
    auto key = [&](const Perm& p) {
        std::vector<int> v;
        for (int u : vertices) v.push_back(p.at(u));
        return v;
    };
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[key(elems[i])] = static_cast<int>(i);
    g.mult.assign(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            g.mult[i][j] = index.at(key(compose_perm(elems[i], elems[j])));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        bool id = true;
        for (int v : vertices) id = id && elems[i].at(v) == v;
        if (id) g.identity = static_cast<int>(i);
    }
    return g;
}

std::set<int> generated_subgroup(const ConcreteGroup& g, std::set<int> seed) {
    seed.insert(g.identity);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(seed.begin(), seed.end());
        for (int a : cur)
            for (int b : cur)
                if (seed.insert(g.mult[a][b]).second) changed = true;
    }
    return seed;
}

std::set<int> normal_closure(const ConcreteGroup& g, const std::set<int>& seed) {
    std::set<int> current = generated_subgroup(g, seed);
    for (;;) {
        std::set<int> conj = current;
        for (int a = 0; a < static_cast<int>(g.elems.size()); ++a) {
            // find inverse of a
            int ainv = 0;
            for (int x = 0; x < static_cast<int>(g.elems.size()); ++x)
                if (g.mult[a][x] == g.identity) ainv = x;
            for (int h : current) conj.insert(g.mult[g.mult[a][h]][ainv]);
        }
        std::set<int> next = generated_subgroup(g, conj);
        if (next == current) return current;
        current = std::move(next);
    }
}

// Quotient group G/N as indices with multiplication, for normal N.
struct QuotientGroup {
    std::vector<int> reps;               // one element index per coset
    std::map<int, int> coset_of_element; // element index -> coset index
    std::vector<std::vector<int>> mult;
    int identity = 0;
};

QuotientGroup quotient_group(const ConcreteGroup& g, const std::set<int>& n) {
    QuotientGroup q;
    std::vector<int> coset(g.elems.size(), -1);
    for (std::size_t a = 0; a < g.elems.size(); ++a) {
        if (coset[a] >= 0) continue;
        int id = static_cast<int>(q.reps.size());
        q.reps.push_back(static_cast<int>(a));
        for (int h : n) coset[g.mult[static_cast<int>(a)][h]] = id;
    }
    for (std::size_t a = 0; a < g.elems.size(); ++a) q.coset_of_element[static_cast<int>(a)] = coset[a];
    q.mult.assign(q.reps.size(), std::vector<int>(q.reps.size()));
    for (std::size_t i = 0; i < q.reps.size(); ++i)
        for (std::size_t j = 0; j < q.reps.size(); ++j)
            q.mult[i][j] = coset[g.mult[q.reps[i]][q.reps[j]]];
    q.identity = coset[g.identity];
    return q;
}

int q_order(const QuotientGroup& q, int a) {
    int x = a, n = 1;
    while (x != q.identity) {
        x = q.mult[a][x];
        ++n;
    }
    return n;
}

// Invariant factors of a finite abelian group given concretely, from the
// order statistics of its elements: for each prime, the counts of elements
// killed by p^k determine the conjugate of the exponent partition.
std::vector<i64> abelian_invariants(const QuotientGroup& q) {
    std::size_t n = q.reps.size();
    std::vector<i64> orders(n);
    for (std::size_t i = 0; i < n; ++i) orders[i] = q_order(q, static_cast<int>(i));

    std::vector<i64> primes;
    {
        i64 s = static_cast<i64>(n);
        for (i64 p = 2; p * p <= s; ++p)
            if (s % p == 0) {
                primes.push_back(p);
                while (s % p == 0) s /= p;
            }
        if (s > 1) primes.push_back(s);
    }

    std::map<i64, std::vector<int>> partitions;  // prime -> exponents, decreasing
    for (i64 p : primes) {
        std::vector<int> m;  // m[k] = log_p #{a : p-part of ord(a) <= p^k}
        i64 pk = 1;
        for (;;) {
            i64 count = 0;
            for (i64 o : orders) {
                i64 opart = 1;
                while (o % p == 0) {
                    o /= p;
                    opart *= p;
                }
                if (opart <= pk) ++count;
            }
            int logc = 0;
            while (count > 1) {
                count /= p;
                ++logc;
            }
            m.push_back(logc);
            if (m.size() > 1 && m.back() == m[m.size() - 2]) break;
            pk *= p;
        }
        std::vector<int> delta;  // delta[k] = #{i : lambda_i >= k+1}
        for (std::size_t k = 1; k < m.size(); ++k) delta.push_back(m[k] - m[k - 1]);
        std::vector<int> lambda;
        for (int i = 1; !delta.empty() && i <= delta[0]; ++i) {
            int cnt = 0;
            for (int d : delta)
                if (d >= i) ++cnt;
            lambda.push_back(cnt);
        }
        if (!lambda.empty()) partitions[p] = lambda;
    }

    std::size_t len = 0;
    for (const auto& [p, part] : partitions) len = std::max(len, part.size());
    std::vector<i64> factors(len, 1);  // factors[0] is the largest
    for (const auto& [p, part] : partitions)
        for (std::size_t i = 0; i < part.size(); ++i) {
            i64 pw = 1;
            for (int e = 0; e < part[i]; ++e) pw *= p;
            factors[i] *= pw;
        }
    std::vector<i64> out;  // ascending invariant factors
    for (std::size_t i = len; i-- > 0;)
        if (factors[i] > 1) out.push_back(factors[i]);
    return out;
}

}  // namespace

std::string FgAbInvariants::to_string() const { return fg_to_string(*this); }

// ---------------------------------------------------------------------------
// The quotient homology context shared by both checks
// ---------------------------------------------------------------------------

namespace {

struct QuotientHomologyContext {
    QuotientResult q;
    Homology1 hx;   // of the (subdivided) domain
    Homology1 hy;   // of the quotient
    Mat rel_x;      // relation matrix of H1(domain)
    Mat rel_y;
    Mat induced_quotient_map;  // columns: images of hx generators in hy coords

    // coinvariant data
    FgAbInvariants coinv;
    Mat coinv_section;   // hx-coords of each coinvariant generator
    Mat coinv_rel;       // relation matrix of the coinvariant presentation
    Mat map_from_coinv;  // columns: images of coinvariant generators in hy coords

    std::vector<Perm> group;
    ConcreteGroup concrete;
    std::set<int> stabilizer_elements;  // indices into concrete.elems
    bool pointwise_fixed_positive_dim = false;
};

// Induced endomorphism of hx from a vertex permutation.
Mat induced_endo(const SimplicialComplex& k, const Homology1& h, const Perm& g) {
    Ctx ctx(k);
    Mat f(h.gens(), h.gens());
    for (std::size_t j = 0; j < h.gens(); ++j) {
        Chain1 image(k.edges.size(), 0);
        for (std::size_t e = 0; e < k.edges.size(); ++e) {
            if (h.generating_cycles[j][e] == 0) continue;
            int a = g.at(k.edges[e][0]);
            int b = g.at(k.edges[e][1]);
            auto img = sorted2(a, b);
            image[ctx.eidx.at(img)] += (a < b ? h.generating_cycles[j][e]
                                              : -h.generating_cycles[j][e]);
        }
        std::vector<BigInt> coords = h1_coords(k, h, image);
        for (std::size_t i = 0; i < h.gens(); ++i) f(i, j) = coords[i];
    }
    return f;
}

QuotientHomologyContext build_context(const SimplicialComplex& k, const SimplicialAction& a) {
    QuotientHomologyContext c;
    c.q = quotient_complex(k, a);
    c.hx = h1(c.q.domain);
    c.hy = h1(c.q.quotient);
    c.rel_x = diag_mat(c.hx.relation_moduli());
    c.rel_y = diag_mat(c.hy.relation_moduli());

    // Induced map on H1 from the quotient chain map.
    c.induced_quotient_map = Mat(c.hy.gens(), c.hx.gens());
    for (std::size_t j = 0; j < c.hx.gens(); ++j) {
        Chain1 img = quotient_chain(c.q, c.hx.generating_cycles[j]);
        std::vector<BigInt> coords = h1_coords(c.q.quotient, c.hy, img);
        for (std::size_t i = 0; i < c.hy.gens(); ++i) c.induced_quotient_map(i, j) = coords[i];
    }

    // Coinvariants of H1(domain) under the action generators.
    Mat rel = c.rel_x;
    for (const auto& g : c.q.domain_action.generators) {
        Mat f = induced_endo(c.q.domain, c.hx, g);
        for (std::size_t i = 0; i < c.hx.gens(); ++i) f(i, i) -= 1;
        rel = hstack(rel, f);
    }
    SnfDecomposition rsnf = smith_normal_form(rel);
    std::vector<i64> tors;
    std::vector<std::size_t> positions;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < c.hx.gens(); ++i) {
        BigInt d = rsnf.diag(i);
        if (d == 0) {
            positions.push_back(i);
            ++free_count;
        } else if (d > 1) {
            tors.push_back(to_i64(d));
            positions.push_back(i);
        }
    }
    // order the section/relations torsion-first to match FgAbInvariants
    std::vector<std::size_t> ordered;
    std::vector<BigInt> moduli;
    for (std::size_t i : positions)
        if (rsnf.diag(i) > 1) {
            ordered.push_back(i);
            moduli.push_back(rsnf.diag(i));
        }
    for (std::size_t i : positions)
        if (rsnf.diag(i) == 0) {
            ordered.push_back(i);
            moduli.push_back(0);
        }
    c.coinv.free_rank = free_count;
    c.coinv.torsion = FinAbGroup(tors);
    c.coinv_rel = diag_mat(moduli);
    c.coinv_section = Mat(c.hx.gens(), ordered.size());
    for (std::size_t t = 0; t < ordered.size(); ++t)
        for (std::size_t i = 0; i < c.hx.gens(); ++i)
            c.coinv_section(i, t) = rsnf.u_inv(i, ordered[t]);
    c.map_from_coinv = mul(c.induced_quotient_map, c.coinv_section);

    c.group = group_elements(c.q.domain, c.q.domain_action);
    c.concrete = make_concrete(c.group, c.q.domain.vertices);

    // Setwise stabilizers of every cell of the domain; pointwise-fixed cells
    // of positive dimension are flagged (the fixed locus is then not isolated).
    for (std::size_t gi = 0; gi < c.group.size(); ++gi) {
        const Perm& g = c.group[gi];
        bool identity = gi == static_cast<std::size_t>(c.concrete.identity);
        bool stabilizes_something = false;
        for (int v : c.q.domain.vertices)
            if (g.at(v) == v) stabilizes_something = true;
        for (const auto& e : c.q.domain.edges)
            if (sorted2(g.at(e[0]), g.at(e[1])) == e) {
                stabilizes_something = true;
                if (!identity && g.at(e[0]) == e[0] && g.at(e[1]) == e[1])
                    c.pointwise_fixed_positive_dim = true;
            }
        for (const auto& t : c.q.domain.triangles)
            if (sorted3(g.at(t[0]), g.at(t[1]), g.at(t[2])) == t) stabilizes_something = true;
        if (stabilizes_something) c.stabilizer_elements.insert(static_cast<int>(gi));
    }
    return c;
}

FgAbInvariants homology_invariants(const Homology1& h) {
    return FgAbInvariants{h.free_rank, h.torsion};
}

}  // namespace

CoinvariantSurjectionReport coinvariant_surjection_check(const SimplicialComplex& k,
                                                         const SimplicialAction& a) {
    QuotientHomologyContext c = build_context(k, a);
    CoinvariantSurjectionReport rep;
    rep.subdivisions_applied = c.q.subdivisions_applied;
    rep.h1_domain = homology_invariants(c.hx);
    rep.h1_quotient = homology_invariants(c.hy);
    rep.coinvariants = c.coinv;

    std::set<int> generated = generated_subgroup(c.concrete, c.stabilizer_elements);
    rep.stabilizers_generate = generated.size() == c.group.size();

    // Surjective iff the cokernel of [map | relations of H1(Y)] is trivial.
    FgAbInvariants coker = invariants_of_presentation(
        c.hy.gens(), hstack(c.map_from_coinv, c.rel_y));
    rep.surjective = coker.is_trivial();
    rep.kernel = hom_kernel(c.map_from_coinv, c.coinv_rel, c.rel_y);
    rep.pointwise_fixed_positive_dim = c.pointwise_fixed_positive_dim;
    return rep;
}

ExactSequenceIIReport exact_sequence_ii_check(const SimplicialComplex& k,
                                              const SimplicialAction& a) {
    QuotientHomologyContext c = build_context(k, a);
    ExactSequenceIIReport rep;
    rep.subdivisions_applied = c.q.subdivisions_applied;
    rep.coinvariants = c.coinv;
    rep.h1_quotient = homology_invariants(c.hy);

    // (G/K)^ab with K the normal closure of the stabilizers.
    std::set<int> kx = normal_closure(c.concrete, c.stabilizer_elements);
    QuotientGroup q = quotient_group(c.concrete, kx);
    ConcreteGroup qc;
    qc.elems.resize(q.reps.size());
    qc.mult = q.mult;
    qc.identity = q.identity;
    std::set<int> commutators;
    for (std::size_t i = 0; i < q.reps.size(); ++i)
        for (std::size_t j = 0; j < q.reps.size(); ++j) {
            int a_ = static_cast<int>(i), b_ = static_cast<int>(j);
            int ainv = 0, binv = 0;
            for (std::size_t x = 0; x < q.reps.size(); ++x) {
                if (q.mult[a_][x] == q.identity) ainv = static_cast<int>(x);
                if (q.mult[b_][x] == q.identity) binv = static_cast<int>(x);
            }
            commutators.insert(q.mult[q.mult[q.mult[a_][b_]][ainv]][binv]);
        }
    std::set<int> comm_sub = generated_subgroup(qc, commutators);
    QuotientGroup ab = quotient_group(qc, comm_sub);
    rep.g_mod_k_ab = FgAbInvariants{0, FinAbGroup(abelian_invariants(ab))};

    // Monodromy H1(Y) -> (G/K)^ab: lift each generator cycle edge by edge.
    Ctx dctx(c.q.domain);
    auto lift_walk_class = [&](const std::vector<int>& walk) -> int {
        // walk: vertex sequence in the quotient, closed
        int start = -1;
        for (int v : c.q.domain.vertices)
            if (c.q.vertex_map.at(v) == walk.front()) {
                start = v;
                break;
            }
        int cur = start;
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
            int target = walk[s + 1];
            int next = -1;
            for (const auto& e : c.q.domain.edges) {
                int other = -1;
                if (e[0] == cur) other = e[1];
                if (e[1] == cur) other = e[0];
                if (other < 0) continue;
                if (c.q.vertex_map.at(other) == target) {
                    next = other;
                    break;
                }
            }
            if (next < 0) throw std::logic_error("quotient walk fails to lift");
            cur = next;
        }
        // group element carrying start to cur
        for (std::size_t gi = 0; gi < c.group.size(); ++gi)
            if (c.group[gi].at(start) == cur) return static_cast<int>(gi);
        throw std::logic_error("no deck transformation matches the lift");
    };

    // phi on each H1(Y) generator, as an element index of ab
    auto phi_of_cycle = [&](const Chain1& cycle) -> int {
        // decompose into closed walks over the quotient 1-skeleton
        std::map<std::pair<int, int>, i64> arcs;  // directed multiplicity
        for (std::size_t e = 0; e < c.q.quotient.edges.size(); ++e) {
            BigInt coeff = cycle[e];
            if (coeff == 0) continue;
            i64 m = to_i64(coeff);
            int u = c.q.quotient.edges[e][0], v = c.q.quotient.edges[e][1];
            if (m > 0)
                arcs[{u, v}] += m;
            else
                arcs[{v, u}] += -m;
        }
        int total = ab.identity;
        for (;;) {
            std::pair<int, int> first{-1, -1};
            for (auto& [arc, m] : arcs)
                if (m > 0) {
                    first = arc;
                    break;
                }
            if (first.first < 0) break;
            std::vector<int> walk{first.first};
            int cur = first.first;
            do {
                bool advanced = false;
                for (auto& [arc, m] : arcs) {
                    if (m > 0 && arc.first == cur) {
                        m -= 1;
                        cur = arc.second;
                        walk.push_back(cur);
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) throw std::logic_error("cycle decomposition stuck");
            } while (cur != walk.front());
            int g = lift_walk_class(walk);
            int coset = ab.coset_of_element.at(q.coset_of_element.at(g));
            total = ab.mult[total][coset];
        }
        return total;
    };

    std::vector<int> phi_gen(c.hy.gens());
    for (std::size_t j = 0; j < c.hy.gens(); ++j)
        phi_gen[j] = phi_of_cycle(c.hy.generating_cycles[j]);

    auto phi_of_coords = [&](const std::vector<BigInt>& coords) -> int {
        int total = ab.identity;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            i64 e = to_i64(coords[j]);
            i64 reps = e >= 0 ? e : -e;
            int val = phi_gen[j];
            if (e < 0) {  // inverse
                for (std::size_t x = 0; x < ab.reps.size(); ++x)
                    if (ab.mult[phi_gen[j]][x] == ab.identity) val = static_cast<int>(x);
            }
            for (i64 r = 0; r < reps; ++r) total = ab.mult[total][val];
        }
        return total;
    };

    // Well-definedness: torsion relations map to the identity.
    bool well_defined = true;
    {
        std::vector<BigInt> moduli = c.hy.relation_moduli();
        for (std::size_t j = 0; j < c.hy.gens(); ++j) {
            if (moduli[j] == 0) continue;
            std::vector<BigInt> coords(c.hy.gens(), 0);
            coords[j] = moduli[j];
            well_defined = well_defined && phi_of_coords(coords) == ab.identity;
        }
    }

    // Right map surjective: the images generate the abelianization.
    {
        std::set<int> seed;
        for (int g : phi_gen) seed.insert(g);
        ConcreteGroup abc;
        abc.elems.resize(ab.reps.size());
        abc.mult = ab.mult;
        abc.identity = ab.identity;
        std::set<int> gen = generated_subgroup(abc, seed);
        rep.right_map_surjective = well_defined && gen.size() == ab.reps.size();
    }

    // Middle exactness: the composite vanishes and the induced map from
    // H1(Y)/im to (G/K)^ab is injective.
    bool composite_zero = true;
    for (std::size_t j = 0; j < c.coinv_section.cols(); ++j) {
        std::vector<BigInt> coords(c.hy.gens());
        for (std::size_t i = 0; i < c.hy.gens(); ++i) coords[i] = c.map_from_coinv(i, j);
        composite_zero = composite_zero && phi_of_coords(coords) == ab.identity;
    }

    Mat coker_pres = hstack(c.map_from_coinv, c.rel_y);
    SnfDecomposition cs = smith_normal_form(coker_pres);
    bool injective = true;
    std::vector<std::size_t> cok_positions;
    std::vector<i64> cok_factors;
    for (std::size_t i = 0; i < c.hy.gens(); ++i) {
        BigInt d = cs.diag(i);
        if (d == 0) injective = false;  // infinite cokernel cannot inject in a finite group
        if (d > 1) {
            cok_positions.push_back(i);
            cok_factors.push_back(to_i64(d));
        }
    }
    rep.middle_cokernel = FgAbInvariants{0, FinAbGroup(cok_factors)};
    if (injective && !cok_positions.empty()) {
        // enumerate the finite cokernel through its section
        FinAbGroup cok(cok_factors);
        for (const auto& el : cok.elements()) {
            bool zero = true;
            for (i64 x : el.coords) zero = zero && x == 0;
            if (zero) continue;
            std::vector<BigInt> ycoords(c.hy.gens(), 0);
            for (std::size_t t = 0; t < cok_positions.size(); ++t)
                for (std::size_t i = 0; i < c.hy.gens(); ++i)
                    ycoords[i] += cs.u_inv(i, cok_positions[t]) * el.coords[t];
            if (phi_of_coords(ycoords) == ab.identity) injective = false;
        }
    }
    rep.middle_exact = composite_zero && injective && well_defined;
    return rep;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

SimplicialComplex complex_from_json(const nlohmann::json& j) {
    std::vector<std::vector<int>> simplices;
    if (j.contains("vertices"))
        for (int v : j.at("vertices")) simplices.push_back({v});
    for (const auto& s : j.at("simplices")) simplices.push_back(s.get<std::vector<int>>());
    return make_complex(simplices);
}

SimplicialAction action_from_json(const nlohmann::json& j) {
    SimplicialAction a;
    for (const auto& g : j.at("generators")) {
        Perm p;
        for (const auto& pair : g) p[pair.at(0).get<int>()] = pair.at(1).get<int>();
        a.generators.push_back(std::move(p));
    }
    return a;
}

nlohmann::ordered_json to_json(const SimplicialComplex& k) {
    nlohmann::ordered_json simplices = nlohmann::ordered_json::array();
    for (const auto& e : k.edges) simplices.push_back(std::vector<int>{e[0], e[1]});
    for (const auto& t : k.triangles) simplices.push_back(std::vector<int>{t[0], t[1], t[2]});
    return {{"vertices", k.vertices}, {"simplices", simplices}};
}

nlohmann::ordered_json homology_to_json(const Homology1& h) {
    return {{"free_rank", h.free_rank},
            {"torsion", {{"invariant_factors", h.torsion.invariant_factors()}}}};
}

}  // namespace fpp
