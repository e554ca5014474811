#include "arbor/morphism.hpp"

#include <algorithm>

namespace arbor {

const AmbientNode& ArborealMorphism::tau_of(const AmbientNode& s) const {
    auto it = tau.find(s);
    if (it == tau.end()) fail(Err::domain, "node map undefined at " + format_node(s));
    return it->second;
}

const Id& ArborealMorphism::phi_of(const AmbientNode& s, const Id& v) const {
    auto it = phi.find(s);
    if (it == phi.end()) fail(Err::domain, "vertex map undefined at node " + format_node(s));
    auto jt = it->second.find(v);
    if (jt == it->second.end()) fail(Err::domain, "vertex map undefined at '" + v + "'");
    return jt->second;
}

namespace {

bool note(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

// The child of s lying on the path from s up to t (s < t assumed).
AmbientNode step_towards(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t) {
    for (const auto& c : A.children(s))
        if (node_leq(c, t)) return c;
    fail(Err::internal, "no step from " + format_node(s) + " towards " + format_node(t));
}

// All-pairs tree distances, for O(1) betweenness queries:
// between(x; y, z) iff d(y,x) + d(x,z) == d(y,z).
struct DistOracle {
    std::map<Id, int> idx;
    std::vector<std::vector<int>> d;

    explicit DistOracle(const BSet& b) {
        int n = 0;
        for (const Id& v : b.verts) idx[v] = n++;
        std::vector<std::vector<int>> adj(n);
        for (const auto& [a, c] : b.edges) {
            adj[idx.at(a)].push_back(idx.at(c));
            adj[idx.at(c)].push_back(idx.at(a));
        }
        d.assign(n, std::vector<int>(n, -1));
        for (int s = 0; s < n; ++s) {
            std::vector<int> q{s};
            d[s][s] = 0;
            for (std::size_t h = 0; h < q.size(); ++h)
                for (int w : adj[q[h]])
                    if (d[s][w] < 0) {
                        d[s][w] = d[s][q[h]] + 1;
                        q.push_back(w);
                    }
        }
    }

    bool between(int x, int y, int z) const { return d[y][x] + d[x][z] == d[y][z]; }
};

}  // namespace

bool check_morphism(const TreeOfBSets& A, const TreeOfBSets& B, const ArborealMorphism& m,
                    std::string* why) {
    // Node map: total on A, injective, into B.
    if (m.tau.size() != A.nodes.size()) return note(why, "node map not total");
    std::set<AmbientNode> image;
    for (const auto& [s, t] : m.tau) {
        if (!A.has_node(s)) return note(why, "node map at unknown node");
        if (!B.has_node(t)) return note(why, "node map leaves target");
        if (!image.insert(t).second) return note(why, "node map not injective");
    }
    bool want_iso = m.kind != MorphKind::strong;
    if (want_iso && image.size() != B.nodes.size()) return note(why, "node map not surjective");

    for (const auto& s : A.nodes)
        for (const auto& t : A.nodes) {
            if (node_leq(s, t) != node_leq(m.tau_of(s), m.tau_of(t)))
                return note(why, "node map does not preserve the order");
        }
    if (m.kind != MorphKind::iso) {
        for (const auto& s : A.nodes)
            if (s.colour() != m.tau_of(s).colour())
                return note(why, "node map does not preserve colours");
        for (const auto& s : A.nodes)
            for (const auto& t : A.nodes)
                if (!(m.tau_of(node_meet(s, t)) == node_meet(m.tau_of(s), m.tau_of(t))))
                    return note(why, "node map does not preserve ambient meets");
    }

    // Vertex maps: total, injective, strong; bijective for isomorphisms.
    for (const auto& s : A.nodes) {
        const BSet& bs = A.bset(s);
        const BSet& bt = B.bset(m.tau_of(s));
        auto it = m.phi.find(s);
        if (it == m.phi.end() || it->second.size() != bs.verts.size())
            return note(why, "vertex map not total at " + format_node(s));
        std::set<Id> img;
        for (const auto& [v, w] : it->second) {
            if (!bs.has(v) || !bt.has(w)) return note(why, "vertex map out of range");
            if (!img.insert(w).second) return note(why, "vertex map not injective");
        }
        if (want_iso && img.size() != bt.verts.size())
            return note(why, "vertex map not surjective at " + format_node(s));
        // On a single point the relation is empty by convention, so there is
        // nothing to compare.
        if (bs.verts.size() == 1) continue;
        DistOracle ds(bs), dt(bt);
        for (const Id& x : bs.verts) {
            int xs = ds.idx.at(x), xt = dt.idx.at(m.phi_of(s, x));
            for (const Id& y : bs.verts) {
                int ys = ds.idx.at(y), yt = dt.idx.at(m.phi_of(s, y));
                for (const Id& z : bs.verts) {
                    int zs = ds.idx.at(z), zt = dt.idx.at(m.phi_of(s, z));
                    if (ds.between(xs, ys, zs) != dt.between(xt, yt, zt))
                        return note(why, "vertex map not a strong B-set embedding at " +
                                             format_node(s));
                }
            }
        }
    }

    // f and g coherence. For isomorphisms edges go to edges; for strong
    // embeddings the conditions are read through composites.
    for (const auto& s : A.nodes)
        for (const auto& t : A.children(s)) {
            const Id& mark = A.f.at(s).at(t);
            const AmbientNode& ts = m.tau_of(s);
            const AmbientNode& tt = m.tau_of(t);
            AmbientNode first = step_towards(B, ts, tt);
            auto fb = B.f.find(ts);
            if (fb == B.f.end() || fb->second.find(first) == fb->second.end())
                return note(why, "marked vertex missing in target");
            if (fb->second.at(first) != m.phi_of(s, mark))
                return note(why, "f maps not respected at " + format_node(s));
            for (const Id& x : A.bset(s).verts) {
                if (x == mark) continue;
                const Id& gx = A.g.at({s, t}).at(x);
                auto gy = g_composite(B, ts, tt, m.phi_of(s, x));
                if (!gy || *gy != m.phi_of(t, gx))
                    return note(why, "g maps not respected on edge " + format_node(s) + " -> " +
                                         format_node(t));
            }
        }
    return true;
}

ArborealMorphism compose(const ArborealMorphism& m1, const ArborealMorphism& m2) {
    ArborealMorphism out;
    out.kind = (m1.kind == MorphKind::strong || m2.kind == MorphKind::strong)
                   ? MorphKind::strong
                   : (m1.kind == MorphKind::iso || m2.kind == MorphKind::iso ? MorphKind::iso
                                                                             : MorphKind::internal_iso);
    for (const auto& [s, t] : m1.tau) out.tau[s] = m2.tau_of(t);
    for (const auto& [s, pm] : m1.phi) {
        const AmbientNode& t = m1.tau_of(s);
        for (const auto& [v, w] : pm) out.phi[s][v] = m2.phi_of(t, w);
    }
    return out;
}

std::map<Id, Id> induced_l_map(const TreeOfBSets& A, const TreeOfBSets& B,
                               const ArborealMorphism& m) {
    const AmbientNode& r1 = A.root();
    const AmbientNode& r2 = B.root();
    const AmbientNode& tr = m.tau_of(r1);
    std::map<Id, Id> psi;
    for (const Id& a : A.bset(r1).verts) {
        const Id& target = m.phi_of(r1, a);
        // Lexicographically least member of the composite fiber over target.
        std::optional<Id> pick;
        for (const Id& b : B.bset(r2).verts) {
            auto img = g_composite(B, r2, tr, b);
            if (img && *img == target && (!pick || b < *pick)) pick = b;
        }
        if (!pick) fail(Err::internal, "empty fiber while inducing root map");
        psi[a] = *pick;
    }
    return psi;
}

namespace {

// Shared lift: extend a root-to-root vertex bijection to a full morphism, per
// the inductive construction (children are matched through marked vertices,
// vertex maps are pushed through the g maps). Coherence is not verified here.
std::optional<ArborealMorphism> lift(const TreeOfBSets& A, const TreeOfBSets& B,
                                     const std::map<Id, Id>& psi, MorphKind kind) {
    const AmbientNode& r1 = A.root();
    const AmbientNode& r2 = B.root();
    ArborealMorphism m;
    m.kind = kind;
    m.tau[r1] = r2;
    m.phi[r1] = psi;
    std::vector<AmbientNode> queue{r1};
    while (!queue.empty()) {
        AmbientNode s = queue.back();
        queue.pop_back();
        const AmbientNode& ts = m.tau[s];
        const auto& phis = m.phi[s];
        for (const auto& t : A.children(s)) {
            const Id& mark = A.f.at(s).at(t);
            auto pm = phis.find(mark);
            if (pm == phis.end()) return std::nullopt;
            // Find the child of tau(s) marking the image vertex.
            std::optional<AmbientNode> tt;
            auto fb = B.f.find(ts);
            if (fb != B.f.end())
                for (const auto& [child, v] : fb->second)
                    if (v == pm->second) tt = child;
            if (!tt) return std::nullopt;
            m.tau[t] = *tt;
            // phi_t = g' o phi_s o (any section of g).
            std::map<Id, Id> phit;
            const auto& gst = A.g.at({s, t});
            const auto& gst2 = B.g.at({ts, *tt});
            for (const auto& [x, gx] : gst) {
                auto px = phis.find(x);
                if (px == phis.end()) return std::nullopt;
                auto it = gst2.find(px->second);
                if (it == gst2.end()) return std::nullopt;
                auto [at, fresh] = phit.emplace(gx, it->second);
                if (!fresh && at->second != it->second) return std::nullopt;
            }
            if (phit.size() != A.bset(t).verts.size()) return std::nullopt;
            m.phi[t] = std::move(phit);
            queue.push_back(t);
        }
    }
    if (m.tau.size() != A.nodes.size()) return std::nullopt;
    return m;
}

}  // namespace

std::optional<ArborealMorphism> l_iso_to_arboreal(const TreeOfBSets& A, const TreeOfBSets& B,
                                                  const std::map<Id, Id>& psi) {
    LSet la = compute_l(A);
    LSet lb = compute_l(B);
    if (psi.size() != la.domain.size() || la.domain.size() != lb.domain.size())
        return std::nullopt;
    std::set<Id> image;
    for (const auto& [a, b] : psi) {
        if (!la.domain.count(a) || !lb.domain.count(b)) return std::nullopt;
        if (!image.insert(b).second) return std::nullopt;
    }
    for (const Id& a : la.domain)
        for (const Id& b : la.domain)
            for (const Id& c : la.domain)
                if (la.holds(a, b, c) != lb.holds(psi.at(a), psi.at(b), psi.at(c)))
                    return std::nullopt;
    auto m = lift(A, B, psi, MorphKind::iso);
    if (!m) return std::nullopt;
    std::string why;
    if (!check_morphism(A, B, *m, &why)) return std::nullopt;
    return m;
}

std::vector<std::map<Id, Id>> automorphisms(const TreeOfBSets& A) {
    const BSet& br = A.bset(A.root());
    std::vector<Id> verts(br.verts.begin(), br.verts.end());
    if (verts.size() > 9) fail(Err::domain, "root B-set too large for automorphism search");
    LSet l = compute_l(A);
    std::vector<std::map<Id, Id>> out;
    std::vector<std::size_t> perm(verts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        std::map<Id, Id> psi;
        for (std::size_t i = 0; i < perm.size(); ++i) psi[verts[i]] = verts[perm[i]];
        bool ok = true;
        for (const auto& t : l.triples)
            if (!l.holds(psi.at(t[0]), psi.at(t[1]), psi.at(t[2]))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        auto m = lift(A, A, psi, MorphKind::internal_iso);
        if (!m) continue;
        std::string why;
        if (check_morphism(A, A, *m, &why)) out.push_back(std::move(psi));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::set<std::array<Id, 3>>> triple_orbits(const TreeOfBSets& A) {
    auto auts = automorphisms(A);
    const BSet& br = A.bset(A.root());
    std::set<std::array<Id, 3>> todo;
    for (const Id& a : br.verts)
        for (const Id& b : br.verts)
            for (const Id& c : br.verts)
                if (a != b && b != c && a != c) todo.insert({a, b, c});
    std::vector<std::set<std::array<Id, 3>>> orbits;
    while (!todo.empty()) {
        std::array<Id, 3> seed = *todo.begin();
        std::set<std::array<Id, 3>> orbit;
        for (const auto& psi : auts)
            orbit.insert({psi.at(seed[0]), psi.at(seed[1]), psi.at(seed[2])});
        for (const auto& t : orbit) todo.erase(t);
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::set<std::array<Id, 3>> symmetric_orbit_union(const TreeOfBSets& A) {
    std::set<std::array<Id, 3>> out;
    for (const auto& orbit : triple_orbits(A)) {
        bool symmetric = true;
        for (const auto& t : orbit)
            if (orbit.count({t[0], t[2], t[1]}) == 0) {
                symmetric = false;
                break;
            }
        if (symmetric)
            for (const auto& t : orbit) out.insert(t);
    }
    return out;
}

}  // namespace arbor
