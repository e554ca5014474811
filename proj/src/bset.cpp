#include "arbor/bset.hpp"

#include <algorithm>
#include <deque>

namespace arbor {

void BSet::require(const Id& v) const {
    if (!has(v)) fail(Err::domain, "vertex '" + v + "' not in B-set");
}

std::vector<Id> BSet::neighbours(const Id& v) const {
    std::vector<Id> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    return out;
}

bool BSet::is_tree(std::string* why) const {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (verts.empty()) return bad("empty vertex set");
    for (const auto& [a, b] : edges)
        if (!has(a) || !has(b)) return bad("edge endpoint missing: " + a + "-" + b);
    if (edges.size() != verts.size() - 1)
        return bad("edge count " + std::to_string(edges.size()) + " != vertices-1");
    // Connectivity (acyclicity then follows from the edge count).
    std::set<Id> seen{*verts.begin()};
    std::deque<Id> q{*verts.begin()};
    while (!q.empty()) {
        Id v = q.front();
        q.pop_front();
        for (const Id& w : neighbours(v))
            if (seen.insert(w).second) q.push_back(w);
    }
    if (seen.size() != verts.size()) return bad("graph not connected");
    return true;
}

std::vector<Id> BSet::path(const Id& y, const Id& z) const {
    require(y);
    require(z);
    std::map<Id, Id> pred;
    pred[y] = y;
    std::deque<Id> q{y};
    while (!q.empty()) {
        Id v = q.front();
        q.pop_front();
        if (v == z) break;
        for (const Id& w : neighbours(v))
            if (pred.emplace(w, v).second) q.push_back(w);
    }
    if (pred.count(z) == 0) fail(Err::internal, "no path " + y + "-" + z);
    std::vector<Id> p;
    for (Id v = z;; v = pred[v]) {
        p.push_back(v);
        if (v == y) break;
    }
    std::reverse(p.begin(), p.end());
    return p;
}

bool BSet::between(const Id& x, const Id& y, const Id& z) const {
    require(x);
    if (verts.size() == 1) return false;
    auto p = path(y, z);
    return std::find(p.begin(), p.end(), x) != p.end();
}

BSet make_path(const std::vector<Id>& vs) {
    BSet b;
    for (const Id& v : vs)
        if (!b.verts.insert(v).second) fail(Err::domain, "duplicate vertex " + v);
    for (std::size_t i = 1; i < vs.size(); ++i) b.edges.insert(mk_edge(vs[i - 1], vs[i]));
    return b;
}

BSet make_star(const Id& centre, const std::vector<Id>& leaves) {
    BSet b;
    b.verts.insert(centre);
    for (const Id& v : leaves) {
        if (!b.verts.insert(v).second) fail(Err::domain, "duplicate vertex " + v);
        b.edges.insert(mk_edge(centre, v));
    }
    return b;
}

namespace {

// Integer view of a vertex set: sorted ids plus index lookup.
struct VertIndex {
    std::vector<Id> ids;

    explicit VertIndex(const std::set<Id>& vs) : ids(vs.begin(), vs.end()) {}
    std::size_t size() const { return ids.size(); }
    int of(const Id& v) const {
        auto it = std::lower_bound(ids.begin(), ids.end(), v);
        if (it == ids.end() || *it != v) return -1;
        return static_cast<int>(it - ids.begin());
    }
};

// comp[x][v]: the branch of v at x (component of the tree minus x), with
// comp[x][x] = -1. Encodes betweenness: x lies on the y-z path iff x is an
// endpoint or y and z fall into different branches at x.
std::vector<std::vector<int>> branch_table(const VertIndex& vi, const std::set<Edge>& edges) {
    const int n = static_cast<int>(vi.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : edges) {
        int ia = vi.of(a), ib = vi.of(b);
        adj[ia].push_back(ib);
        adj[ib].push_back(ia);
    }
    std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
    std::vector<int> stack;
    for (int x = 0; x < n; ++x) {
        int c = 0;
        for (int s : adj[x]) {
            stack.push_back(s);
            comp[x][s] = c;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[v])
                    if (w != x && comp[x][w] == -1) {
                        comp[x][w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
    }
    return comp;
}

inline bool comp_between(const std::vector<std::vector<int>>& comp, int x, int y, int z) {
    return x == y || x == z || comp[x][y] != comp[x][z];
}

// Dense membership table of a ternary relation over an indexed domain.
// Returns false when some triple mentions an id outside the domain.
bool dense_of(const TernaryRelation& r, const VertIndex& vi, std::vector<char>& d) {
    const std::size_t n = vi.size();
    d.assign(n * n * n, 0);
    for (const auto& t : r.triples) {
        int i = vi.of(t[0]), j = vi.of(t[1]), k = vi.of(t[2]);
        if (i < 0 || j < 0 || k < 0) return false;
        d[(static_cast<std::size_t>(i) * n + j) * n + k] = 1;
    }
    return true;
}

std::string show(const Id& x, const Id& y, const Id& z) {
    return "(" + x + ";" + y + "," + z + ")";
}

}  // namespace

TernaryRelation derived_relation(const BSet& b) {
    TernaryRelation r;
    r.domain = b.verts;
    if (b.verts.size() == 1) return r;
    VertIndex vi(b.verts);
    auto comp = branch_table(vi, b.edges);
    const int n = static_cast<int>(vi.size());
    // Generation in lexicographic order lets every insert take the end hint.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (comp_between(comp, x, y, z))
                    r.triples.insert(r.triples.end(), {vi.ids[x], vi.ids[y], vi.ids[z]});
    return r;
}

BAxiomReport validate_b_axioms(const TernaryRelation& r) {
    BAxiomReport rep;
    const auto& D = r.domain;
    // Convention: on a single point both the B-set and its graph are empty
    // relations, and the axioms are read as holding vacuously.
    if (D.size() <= 1) {
        if (!r.triples.empty()) {
            rep.b2.pass = false;
            rep.b2.witness = "nonempty relation on a single point";
        }
        return rep;
    }
    auto set_fail = [](AxiomItem& it, const std::string& w) {
        if (it.pass) {
            it.pass = false;
            it.witness = w;
        }
    };
    VertIndex vi(D);
    const std::size_t n = vi.size();
    std::vector<char> d;
    // Triples outside the domain can never be produced by a derivation; they
    // break B2 (the only axiom with a negative clause on every pair).
    if (!dense_of(r, vi, d)) {
        set_fail(rep.b2, "triple outside the domain");
        return rep;
    }
    auto H = [&](std::size_t x, std::size_t y, std::size_t z) -> bool {
        return d[(x * n + y) * n + z];
    };
    auto W3 = [&](std::size_t x, std::size_t y, std::size_t z) {
        return show(vi.ids[x], vi.ids[y], vi.ids[z]);
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                bool bxyz = H(x, y, z);
                if (bxyz && !H(x, z, y)) set_fail(rep.b1, W3(x, y, z));
                bool both = bxyz && H(y, x, z);
                if (both != (x == y)) set_fail(rep.b2, W3(x, y, z));
                if (bxyz) {
                    for (std::size_t w = 0; w < n; ++w)
                        if (!H(x, y, w) && !H(x, w, z)) {
                            set_fail(rep.b3, W3(x, y, z) + " w=" + vi.ids[w]);
                            break;
                        }
                }
                if (!bxyz) {
                    bool found = false;
                    for (std::size_t w = 0; w < n; ++w)
                        if (w != x && H(w, x, y) && H(w, x, z)) {
                            found = true;
                            break;
                        }
                    if (!found) set_fail(rep.b4, W3(x, y, z));
                }
                // Totality clause of linear betweenness (informative only).
                if (x != y && y != z && x != z && !bxyz && !H(y, x, z) && !H(z, x, y))
                    set_fail(rep.linear_total, W3(x, y, z));
            }
    // Positive type: every pairwise-incomparable distinct triple has a point
    // between each pair of them simultaneously (a centroid).
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                if (H(x, y, z) || H(y, x, z) || H(z, x, y)) continue;
                bool found = false;
                for (std::size_t w = 0; w < n; ++w)
                    if (H(w, x, y) && H(w, y, z) && H(w, x, z)) {
                        found = true;
                        break;
                    }
                if (!found) set_fail(rep.b5, W3(x, y, z));
            }
    return rep;
}

CAxiomReport validate_c_axioms(const TernaryRelation& r) {
    CAxiomReport rep;
    const auto& D = r.domain;
    auto set_fail = [](AxiomItem& it, const std::string& w) {
        if (it.pass) {
            it.pass = false;
            it.witness = w;
        }
    };
    for (const Id& x : D)
        for (const Id& y : D)
            for (const Id& z : D) {
                bool cxyz = r.holds(x, y, z);
                if (cxyz && !r.holds(x, z, y)) set_fail(rep.c1, show(x, y, z));
                if (cxyz && r.holds(y, x, z)) set_fail(rep.c2, show(x, y, z));
                if (cxyz) {
                    for (const Id& w : D)
                        if (!r.holds(x, w, z) && !r.holds(w, y, z)) {
                            set_fail(rep.c3, show(x, y, z) + " w=" + w);
                            break;
                        }
                }
            }
    for (const Id& x : D)
        for (const Id& y : D)
            if (x != y && !r.holds(x, y, y)) set_fail(rep.c4, show(x, y, y));
    return rep;
}

BSet relation_to_tree(const TernaryRelation& r) {
    BSet b;
    b.verts = r.domain;
    if (b.verts.empty()) fail(Err::domain, "relation with empty domain");
    if (b.verts.size() == 1) return b;
    if (b.verts.size() == 2) {
        auto it = b.verts.begin();
        Id a = *it++;
        b.edges.insert(mk_edge(a, *it));
    } else {
        VertIndex vi(b.verts);
        const std::size_t n = vi.size();
        std::vector<char> d;
        if (!dense_of(r, vi, d))
            fail(Err::validate, "relation is not the betweenness of its adjacency tree");
        auto H = [&](std::size_t x, std::size_t y, std::size_t z) -> bool {
            return d[(x * n + y) * n + z];
        };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = a + 1; c < n; ++c) {
                bool separated = false;
                for (std::size_t w = 0; w < n; ++w)
                    if (w != a && w != c && H(w, a, c)) {
                        separated = true;
                        break;
                    }
                if (!separated) b.edges.insert(mk_edge(vi.ids[a], vi.ids[c]));
            }
        std::string why;
        if (!b.is_tree(&why)) fail(Err::validate, "adjacency graph is not a tree: " + why);
        auto comp = branch_table(vi, b.edges);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (H(x, y, z) != comp_between(comp, static_cast<int>(x), static_cast<int>(y),
                                                   static_cast<int>(z)))
                        fail(Err::validate,
                             "relation is not the betweenness of its adjacency tree");
        return b;
    }
    std::string why;
    if (!b.is_tree(&why)) fail(Err::validate, "adjacency graph is not a tree: " + why);
    if (!(derived_relation(b).triples == r.triples))
        fail(Err::validate, "relation is not the betweenness of its adjacency tree");
    return b;
}

CentroidResult centroid(const BSet& b, const Id& x, const Id& y, const Id& z) {
    if (x == y || y == z || x == z) fail(Err::domain, "centroid of non-distinct triple");
    if (b.between(x, y, z)) return {true, x};
    if (b.between(y, x, z)) return {true, y};
    if (b.between(z, x, y)) return {true, z};
    // The unique common point of the three pairwise paths.
    auto pxy = b.path(x, y);
    for (const Id& w : pxy)
        if (b.between(w, y, z) && b.between(w, x, z)) return {false, w};
    fail(Err::internal, "no centroid found");
}

std::vector<std::set<Id>> branches_at(const BSet& b, const Id& v) {
    b.require(v);
    std::vector<std::set<Id>> out;
    auto nbrs = b.neighbours(v);
    std::sort(nbrs.begin(), nbrs.end());
    for (const Id& n : nbrs) {
        std::set<Id> comp{n};
        std::deque<Id> q{n};
        while (!q.empty()) {
            Id u = q.front();
            q.pop_front();
            for (const Id& w : b.neighbours(u))
                if (w != v && comp.insert(w).second) q.push_back(w);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::set<Id> ramification_points(const BSet& b) {
    std::set<Id> out;
    for (const Id& v : b.verts)
        if (b.degree(v) >= 3) out.insert(v);
    return out;
}

std::set<Id> leaves(const BSet& b) {
    std::set<Id> out;
    for (const Id& v : b.verts)
        if (b.degree(v) == 1) out.insert(v);
    return out;
}

std::set<Id> dyadic(const BSet& b) {
    std::set<Id> out;
    for (const Id& v : b.verts)
        if (b.degree(v) == 2) out.insert(v);
    return out;
}

bool is_linear(const BSet& b) { return ramification_points(b).empty(); }

bool is_strong_sub(const BSet& b1, const BSet& b2) {
    for (const Id& v : b1.verts)
        if (!b2.has(v)) return false;
    // On a single point the relation is empty by convention.
    if (b1.verts.size() == 1) return true;
    for (const Id& x : b1.verts)
        for (const Id& y : b1.verts)
            for (const Id& z : b1.verts)
                if (b1.between(x, y, z) != b2.between(x, y, z)) return false;
    return true;
}

BSet induced_bset(const BSet& b, const std::set<Id>& subset) {
    for (const Id& v : subset) b.require(v);
    if (subset.empty()) fail(Err::domain, "induced B-set on empty subset");
    TernaryRelation r;
    r.domain = subset;
    if (subset.size() > 1)
        for (const Id& y : subset)
            for (const Id& z : subset)
                for (const Id& x : b.path(y, z))
                    if (subset.count(x)) r.triples.insert({x, y, z});
    return relation_to_tree(r);
}

}  // namespace arbor
