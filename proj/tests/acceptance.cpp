// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single pass/fail line. Exit status is the number of failures.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>

#include "arbor/fraisse.hpp"
#include "arbor/generator.hpp"
#include "arbor/io.hpp"
#include "arbor/reconstruct.hpp"
#include "fixtures.hpp"

using namespace arbor;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// ---------------------------------------------------------------------------
// Independent little oracles (no library betweenness involved).

// All labeled trees on n indexed vertices, as edge lists, via Pruefer codes.
std::vector<std::vector<std::pair<int, int>>> int_trees(int n) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (n <= 2) {
        std::vector<std::pair<int, int>> e;
        if (n == 2) e.push_back({0, 1});
        out.push_back(e);
        return out;
    }
    std::vector<int> seq(n - 2, 0);
    while (true) {
        std::vector<std::pair<int, int>> e;
        std::vector<int> deg(n, 1);
        for (int p : seq) ++deg[p];
        std::set<int> leaves;
        for (int i = 0; i < n; ++i)
            if (deg[i] == 1) leaves.insert(i);
        for (int p : seq) {
            int leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            e.push_back({leaf, p});
            if (--deg[p] == 1) leaves.insert(p);
        }
        int a = *leaves.begin();
        e.push_back({a, *std::next(leaves.begin())});
        out.push_back(std::move(e));
        std::size_t i = 0;
        for (; i < seq.size(); ++i) {
            if (++seq[i] < n) break;
            seq[i] = 0;
        }
        if (i == seq.size()) break;
    }
    return out;
}

// comp[x][v] = component of v when x is removed; betweenness reads off it.
std::vector<std::vector<int>> comp_of(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
    std::vector<int> st;
    for (int x = 0; x < n; ++x) {
        int c = 0;
        for (int s : adj[x]) {
            if (comp[x][s] != -1) continue;
            comp[x][s] = c;
            st.push_back(s);
            while (!st.empty()) {
                int v = st.back();
                st.pop_back();
                for (int w : adj[v])
                    if (w != x && comp[x][w] == -1) {
                        comp[x][w] = c;
                        st.push_back(w);
                    }
            }
            ++c;
        }
    }
    return comp;
}

inline bool int_between(const std::vector<std::vector<int>>& comp, int x, int y, int z) {
    return x == y || x == z || comp[x][y] != comp[x][z];
}

// Distinct-triple bitset of a tree's betweenness relation.
std::vector<std::uint64_t> distinct_bits(int n, const std::vector<std::vector<int>>& comp) {
    std::vector<std::uint64_t> bits((static_cast<std::size_t>(n) * n * n + 63) / 64, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                if (!int_between(comp, x, y, z)) continue;
                std::size_t i = (static_cast<std::size_t>(x) * n + y) * n + z;
                bits[i / 64] |= std::uint64_t(1) << (i % 64);
            }
    return bits;
}

bool subset_bits(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

std::vector<Id> letter_ids(int n) {
    std::vector<Id> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
    return ids;
}

BSet bset_of(const std::vector<Id>& ids, const std::vector<std::pair<int, int>>& edges) {
    BSet b;
    for (const Id& v : ids) b.verts.insert(v);
    for (auto& [x, y] : edges) b.edges.insert(mk_edge(ids[x], ids[y]));
    return b;
}

// ---------------------------------------------------------------------------
// Shared directed-extension builders (root colour -5, omega-star chain).

const Color kC5{Rat(-5)};

TreeOfBSets base_path() { return fixtures::single_node(kC5, make_path({"a", "b", "c"})); }

TreeOfBSets leaf_ext(const TreeOfBSets& A, const Id& u, const Id& x) {
    TreeOfBSets E = A;
    BSet b = E.bsets.at(A.root());
    b.verts.insert(x);
    b.edges.insert(mk_edge(u, x));
    E.bsets[A.root()] = b;
    for (const auto& t : A.children(A.root())) E.g[{A.root(), t}][x] = A.g.at({A.root(), t}).at(u);
    return E;
}

TreeOfBSets dyadic_ext(const TreeOfBSets& A, const Id& u, const Id& v, const Id& x) {
    TreeOfBSets E = A;
    BSet b = E.bsets.at(A.root());
    b.verts.insert(x);
    b.edges.erase(mk_edge(u, v));
    b.edges.insert(mk_edge(u, x));
    b.edges.insert(mk_edge(x, v));
    E.bsets[A.root()] = b;
    return E;
}

TreeOfBSets ternary_ext(const TreeOfBSets& A, const Id& u, const Id& x, const Color& cc,
                        const std::vector<Id>& seq, long long idx) {
    TreeOfBSets E = A;
    AmbientNode r = A.root();
    const BSet& rb = A.bset(r);
    auto nb = rb.neighbours(u);
    std::sort(nb.begin(), nb.end());
    AmbientNode t = branch(r, cc, idx);
    BSet b = rb;
    b.verts.insert(x);
    b.edges.insert(mk_edge(u, x));
    E.bsets[r] = b;
    E.nodes.insert(t);
    E.bsets[t] = make_path(seq);
    E.f[r][t] = u;
    auto& g = E.g[{r, t}];
    for (const Id& v : rb.verts)
        if (v != u) g[v] = rb.between(nb[0], v, u) ? "A" : "B";
    g[x] = "X";
    return E;
}

TreeOfBSets star_ext(const TreeOfBSets& A, const Color& cc, const Id& hub) {
    TreeOfBSets E = A;
    AmbientNode r = A.root();
    AmbientNode s0 = ancestor_at(r, cc);
    BSet star;
    star.verts.insert(hub);
    auto& g = E.g[{s0, r}];
    int i = 0;
    for (const Id& v : A.bset(r).verts) {
        Id leaf = "l" + std::to_string(i++) + hub;
        star.verts.insert(leaf);
        star.edges.insert(mk_edge(hub, leaf));
        g[leaf] = v;
    }
    E.nodes.insert(s0);
    E.bsets[s0] = star;
    E.f[s0][r] = hub;
    return E;
}

TreeOfBSets ram_ext(const TreeOfBSets& A, const Id& x, const Id& y, const BSet& child2) {
    TreeOfBSets E = A;
    AmbientNode r = A.root();
    AmbientNode s = A.children(r)[0];
    BSet b = A.bset(r);
    b.verts.insert(x);
    b.edges.insert(mk_edge("e", x));
    E.bsets[r] = b;
    E.bsets[s] = child2;
    E.g[{r, s}][x] = y;
    return E;
}

bool commuting_amalgam(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2,
                       const Amalgam& res, std::string* why) {
    try {
        validate(res.W);
    } catch (const Error& e) {
        *why = std::string("amalgam invalid: ") + e.what();
        return false;
    }
    if (!check_morphism(E1, res.W, res.m1, why)) return false;
    if (!check_morphism(E2, res.W, res.m2, why)) return false;
    for (const auto& s : A.nodes) {
        if (!(res.m1.tau_of(s) == res.m2.tau_of(s))) {
            *why = "arms disagree on a base node";
            return false;
        }
        for (const Id& v : A.bset(s).verts)
            if (res.m1.phi_of(s, v) != v || res.m2.phi_of(s, v) != v) {
                *why = "arms move a base vertex";
                return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criteria.

// 1. Tree/relation duality, exhaustive to 8 vertices, under a minute.
Outcome criterion1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    long long count = 0;
    for (int n = 1; n <= 8 && o.pass; ++n) {
        std::vector<Id> ids = letter_ids(n);
        for (const auto& edges : int_trees(n)) {
            BSet b = bset_of(ids, edges);
            TernaryRelation r = derived_relation(b);
            if (!validate_b_axioms(r).all_b()) {
                o.fail("axioms fail on a tree with " + std::to_string(n) + " vertices");
                break;
            }
            if (!(relation_to_tree(r) == b)) {
                o.fail("inversion fails on a tree with " + std::to_string(n) + " vertices");
                break;
            }
            ++count;
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) o.fail("runtime " + std::to_string(dt) + "s exceeds 60s");
    if (o.pass)
        o.detail = std::to_string(count) + " trees in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 2. Containment of distinct-triple sets implies equality, all pairs, n <= 6.
Outcome criterion2() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    long long pairs = 0;
    for (int n = 2; n <= 6 && o.pass; ++n) {
        std::vector<std::vector<std::uint64_t>> rels;
        for (const auto& edges : int_trees(n)) rels.push_back(distinct_bits(n, comp_of(n, edges)));
        for (std::size_t i = 0; i < rels.size() && o.pass; ++i)
            for (std::size_t j = 0; j < rels.size(); ++j) {
                ++pairs;
                if (subset_bits(rels[i], rels[j]) && rels[i] != rels[j]) {
                    o.fail("strict containment at n=" + std::to_string(n));
                    break;
                }
            }
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) o.fail("runtime " + std::to_string(dt) + "s exceeds 60s");
    if (o.pass)
        o.detail = std::to_string(pairs) + " pairs in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 3. Witness existence and uniqueness on 500 random instances.
Outcome criterion3() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ColorChain os{Preset::OmegaStar, ""};
    long long triples = 0;
    for (int i = 0; i < 500 && o.pass; ++i) {
        std::mt19937_64 rng(20000 + i);
        GenParams p;
        p.max_nodes = 5;
        p.max_verts = 10;
        TreeOfBSets T = random_tob(os, p, rng);
        LSet l = compute_l(T);
        std::vector<Id> dom(l.domain.begin(), l.domain.end());
        for (std::size_t a = 0; a < dom.size() && o.pass; ++a)
            for (std::size_t b = a + 1; b < dom.size() && o.pass; ++b)
                for (std::size_t c = b + 1; c < dom.size() && o.pass; ++c) {
                    // Exactly one of the three elements is the L-centre.
                    std::vector<std::array<Id, 3>> centred;
                    for (auto [x, y, z] : {std::array<Id, 3>{dom[a], dom[b], dom[c]},
                                           std::array<Id, 3>{dom[b], dom[a], dom[c]},
                                           std::array<Id, 3>{dom[c], dom[a], dom[b]}})
                        if (l.triples.count({x, y, z})) centred.push_back({x, y, z});
                    if (centred.size() != 1) {
                        o.fail("triple with " + std::to_string(centred.size()) +
                               " orientations, seed " + std::to_string(20000 + i));
                        break;
                    }
                    const auto& t = centred[0];
                    if (!l.triples.count({t[0], t[2], t[1]})) {
                        o.fail("orientation not symmetric in the outer pair");
                        break;
                    }
                    auto ws = fixtures::oracle_witnesses(T, t[0], t[1], t[2]);
                    if (ws.size() != 1 || !(witness_node(T, t[0], t[1], t[2]) == ws[0])) {
                        o.fail("witness count " + std::to_string(ws.size()) + ", seed " +
                               std::to_string(20000 + i));
                        break;
                    }
                    ++triples;
                }
    }
    double dt = seconds_since(t0);
    if (dt >= 120.0) o.fail("runtime " + std::to_string(dt) + "s exceeds 120s");
    if (o.pass)
        o.detail = std::to_string(triples) + " triples in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 4. Unique tree relation inside L; recovery aligns; |M| <= 7.
Outcome criterion4() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ColorChain os{Preset::OmegaStar, ""};
    int used = 0;
    for (int i = 0; i < 500 && o.pass; ++i) {
        std::mt19937_64 rng(20000 + i);
        GenParams p;
        p.max_nodes = 5;
        p.max_verts = 10;
        TreeOfBSets T = random_tob(os, p, rng);
        if (T.bset(T.root()).verts.size() > 7 || T.bset(T.root()).verts.size() < 2) continue;
        ++used;
        LSet l = compute_l(T);
        std::vector<Id> ids(l.domain.begin(), l.domain.end());
        const int n = static_cast<int>(ids.size());
        std::map<Id, int> idx;
        for (int k = 0; k < n; ++k) idx[ids[k]] = k;
        std::vector<std::uint64_t> lbits((static_cast<std::size_t>(n) * n * n + 63) / 64, 0);
        for (const auto& t : l.triples) {
            std::size_t b = (static_cast<std::size_t>(idx.at(t[0])) * n + idx.at(t[1])) * n +
                            idx.at(t[2]);
            lbits[b / 64] |= std::uint64_t(1) << (b % 64);
        }
        int hits = 0;
        std::vector<std::pair<int, int>> winner;
        for (const auto& edges : int_trees(n)) {
            if (subset_bits(distinct_bits(n, comp_of(n, edges)), lbits)) {
                ++hits;
                winner = edges;
            }
        }
        if (hits != 1) {
            o.fail("found " + std::to_string(hits) + " tree relations inside L, seed " +
                   std::to_string(20000 + i));
            break;
        }
        if (!(bset_of(ids, winner) == T.bset(T.root())) ||
            !(root_bset_from_l(l) == T.bset(T.root()))) {
            o.fail("unique tree differs from the root B-set, seed " + std::to_string(20000 + i));
            break;
        }
        TreeOfBSets R = recover(l);
        if (!align_colour_erasing(T, R)) {
            o.fail("recovery does not align, seed " + std::to_string(20000 + i));
            break;
        }
    }
    double dt = seconds_since(t0);
    if (o.pass)
        o.detail = std::to_string(used) + " instances in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 5. Induce/lift round-trips for all enumerated automorphisms at bounds.
Outcome criterion5() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ColorChain os{Preset::OmegaStar, ""};
    long long maps = 0;
    for (int i = 0; i < 60 && o.pass; ++i) {
        std::mt19937_64 rng(30000 + i);
        GenParams p;
        p.max_nodes = 3;
        p.max_verts = 7;
        TreeOfBSets T = random_tob(os, p, rng);
        for (const auto& psi : automorphisms(T)) {
            auto m = l_iso_to_arboreal(T, T, psi);
            if (!m) {
                o.fail("automorphism fails to lift, seed " + std::to_string(30000 + i));
                break;
            }
            if (induced_l_map(T, T, *m) != psi) {
                o.fail("lift-then-induce differs, seed " + std::to_string(30000 + i));
                break;
            }
            auto m2 = l_iso_to_arboreal(T, T, induced_l_map(T, T, *m));
            if (!m2 || !(m2->tau == m->tau) || !(m2->phi == m->phi)) {
                o.fail("induce-then-lift is not the identity, seed " + std::to_string(30000 + i));
                break;
            }
            ++maps;
        }
    }
    double dt = seconds_since(t0);
    if (o.pass)
        o.detail = std::to_string(maps) + " maps in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 6. Directed test per one-point amalgamation case.
Outcome criterion6() {
    Outcome o;
    std::string why;
    auto run = [&](const char* name, const TreeOfBSets& A, const TreeOfBSets& E1,
                   const TreeOfBSets& E2) -> const Amalgam* {
        static Amalgam res;
        if (!o.pass) return nullptr;
        try {
            res = amalgamate_one_point(A, E1, E2);
        } catch (const Error& e) {
            o.fail(std::string(name) + ": " + e.what());
            return nullptr;
        }
        if (!commuting_amalgam(A, E1, E2, res, &why)) {
            o.fail(std::string(name) + ": " + why);
            return nullptr;
        }
        return &res;
    };

    TreeOfBSets A = base_path();
    // Identified pair.
    if (auto r = run("identified pair", A, leaf_ext(A, "c", "d1"), leaf_ext(A, "c", "d2")))
        if (r->W.bset(r->W.root()).verts.size() != 4) o.fail("identified pair: size");
    // Star/star, distinct colours.
    if (auto r = run("star/star", A, star_ext(A, Color(Rat(-6)), "h1"),
                     star_ext(A, Color(Rat(-7)), "h2")))
        if (r->W.nodes.size() != 3) o.fail("star/star: node count");
    // Star/root.
    if (auto r = run("star/root", A, star_ext(A, Color(Rat(-6)), "h1"), leaf_ext(A, "c", "d")))
        if (r->W.bset(r->W.root()).verts.size() != 5) o.fail("star/root: star size");
    // Disjoint attachments.
    if (auto r = run("disjoint", A, leaf_ext(A, "a", "e1"), dyadic_ext(A, "a", "b", "e2")))
        if (!(r->W.bset(r->W.root()) == make_path({"e1", "a", "e2", "b", "c"})))
            o.fail("disjoint: union shape");
    // Leaf pair at different sites.
    if (auto r = run("leaf", A, leaf_ext(A, "a", "e1"), leaf_ext(A, "c", "e2")))
        if (!(r->W.bset(r->W.root()) == make_path({"e1", "a", "b", "c", "e2"})))
            o.fail("leaf: union shape");
    // Dyadic pair.
    if (auto r = run("dyadic", A, dyadic_ext(A, "a", "b", "e1"), dyadic_ext(A, "b", "c", "e2")))
        if (!(r->W.bset(r->W.root()) == make_path({"a", "e1", "b", "e2", "c"})))
            o.fail("dyadic: union shape");
    // Ternary, same colour.
    if (auto r = run("ternary same-colour", A,
                     ternary_ext(A, "b", "t1", Color(Rat(-4)), {"A", "X", "B"}, 0),
                     ternary_ext(A, "b", "t2", Color(Rat(-4)), {"X", "A", "B"}, 1))) {
        if (r->W.bset(r->W.root()).verts.size() != 5 || r->W.nodes.size() != 2)
            o.fail("ternary same-colour: sizes");
        else if (!is_linear(r->W.bset(r->W.children(r->W.root())[0])))
            o.fail("ternary same-colour: child not linear");
    }
    // Ternary, distinct colours: +3 vertices and ramification order 5 at u.
    if (auto r = run("ternary distinct-colour", A,
                     ternary_ext(A, "b", "t1", Color(Rat(-4)), {"A", "X", "B"}, 0),
                     ternary_ext(A, "b", "t2", Color(Rat(-3)), {"A", "X", "B"}, 1))) {
        if (r->W.bset(r->W.root()).verts.size() != A.bset(A.root()).verts.size() + 3)
            o.fail("ternary distinct-colour: expected +3 vertices");
        else if (r->W.bset(r->W.root()).degree("b") != 5)
            o.fail("ternary distinct-colour: expected 5 branches at u");
    }
    // Ramification, three placements of the second new point.
    TreeOfBSets T = fixtures::e2();
    TreeOfBSets R1 = ram_ext(T, "x4", "X4", make_path({"X4", "X1", "X2", "X3"}));
    run("ramification same-position", T, R1,
        ram_ext(T, "x5", "X5", make_path({"X5", "X1", "X2", "X3"})));
    run("ramification opposite", T, R1,
        ram_ext(T, "x5", "X5", make_path({"X1", "X2", "X3", "X5"})));
    run("ramification dyadic", T, R1,
        ram_ext(T, "x5", "X5", make_path({"X1", "X5", "X2", "X3"})));

    if (o.pass) o.detail = "11 directed cases";
    return o;
}

// 7. Amalgamation fuzz: 1000 one-point triples plus decompose/recompose.
Outcome criterion7() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ColorChain os{Preset::OmegaStar, ""};
    std::string why;
    for (int i = 0; i < 1000 && o.pass; ++i) {
        std::mt19937_64 rng(40000 + i);
        GenParams p;
        p.max_nodes = 4;
        p.max_verts = 8;
        try {
            TreeOfBSets A = random_tob(os, p, rng);
            TreeOfBSets E1 = random_extension(A, rng).E;
            TreeOfBSets E2 = random_extension(A, rng).E;
            Amalgam res = amalgamate_one_point(A, E1, E2);
            if (!commuting_amalgam(A, E1, E2, res, &why))
                o.fail("seed " + std::to_string(40000 + i) + ": " + why);
        } catch (const Error& e) {
            o.fail("seed " + std::to_string(40000 + i) + ": " + e.what());
        }
    }
    for (int i = 0; i < 150 && o.pass; ++i) {
        std::mt19937_64 rng(41000 + i);
        GenParams p;
        p.max_nodes = 4;
        p.max_verts = 8;
        try {
            TreeOfBSets E = random_tob(os, p, rng);
            auto chain = decompose_chain(E);
            TreeOfBSets cur = chain.back();
            for (std::size_t j = chain.size() - 1; j > 0; --j) cur = extend_step(cur, E);
            if (!(cur == E)) o.fail("recomposition differs, seed " + std::to_string(41000 + i));
        } catch (const Error& e) {
            o.fail("seed " + std::to_string(41000 + i) + ": " + e.what());
        }
    }
    double dt = seconds_since(t0);
    if (o.pass)
        o.detail = "1000 amalgams + 150 chains in " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

// 8. 50-step generic chains: timing, nesting, task re-finding, determinism.
Outcome criterion8() {
    Outcome o;
    for (auto pre : {Preset::OmegaStar, Preset::Rationals}) {
        const char* name = pre == Preset::OmegaStar ? "omega-star" : "rationals";
        ColorChain ch{pre, ""};
        auto t0 = std::chrono::steady_clock::now();
        ChainResult r;
        try {
            r = build_chain(ch, 50, 7);
        } catch (const Error& e) {
            o.fail(std::string(name) + ": " + e.what());
            break;
        }
        double dt = seconds_since(t0);
        if (dt >= 60.0) {
            o.fail(std::string(name) + ": " + std::to_string(dt) + "s exceeds 60s");
            break;
        }
        // Every step's inclusion of the previous stage is strong.
        std::string why;
        auto catalogue = enumerate_classes(ch, 2, 4);
        TreeOfBSets prev = catalogue[7 % catalogue.size()];
        for (std::size_t i = 0; i < r.stages.size() && o.pass; ++i) {
            const ChainStage& st = r.stages[i];
            try {
                validate(st.M);
                if (st.incl) {
                    if (!check_morphism(prev, st.M, *st.incl, &why))
                        o.fail(std::string(name) + " step " + std::to_string(i + 1) + ": " + why);
                } else {
                    literal_inclusion(prev, st.M);
                }
            } catch (const Error& e) {
                o.fail(std::string(name) + " step " + std::to_string(i + 1) + ": " + e.what());
            }
            prev = st.M;
        }
        // Discharged extension tasks are re-findable. Steps that realized a
        // new point carry the found embedding; fully-covered steps satisfy
        // the extension property outright (checked on stages small enough to
        // enumerate embeddings over).
        for (std::size_t i = 0; i < r.stages.size() && o.pass; ++i) {
            const ChainStage& st = r.stages[i];
            if (st.task < 0) continue;
            const auto& [TA, TE] = r.tasks[static_cast<std::size_t>(st.task)];
            if (st.realized) {
                if (!check_morphism(TE, st.M, *st.realized, &why))
                    o.fail(std::string(name) + " step " + std::to_string(i + 1) +
                           ": realized task not re-findable: " + why);
            } else if (st.M.bset(st.M.root()).verts.size() <= 30) {
                if (!check_extension_property(st.M, TA, TE, &why))
                    o.fail(std::string(name) + " step " + std::to_string(i + 1) +
                           ": covered task fails the extension property: " + why);
            }
        }
        if (!o.pass) break;
        // Byte-identical on the same seed.
        ChainResult r2 = build_chain(ch, 50, 7);
        if (serialize_tob(r.M) != serialize_tob(r2.M) || r.log != r2.log) {
            o.fail(std::string(name) + ": chain is not deterministic");
            break;
        }
        o.detail += std::string(name) + " " + std::to_string(dt).substr(0, 5) + "s (" +
                    std::to_string(r.M.bset(r.M.root()).verts.size()) + " root verts) ";
    }
    return o;
}

// 9. Derived C-relations: no typical pairs, C1-C3 asserted, C4 reported.
Outcome criterion9() {
    Outcome o;
    ColorChain os{Preset::OmegaStar, ""};
    int c4_pass = 0, total = 0;
    for (int i = 0; i < 200 && o.pass; ++i) {
        std::mt19937_64 rng(50000 + i);
        GenParams p;
        p.max_nodes = 3;
        p.max_verts = 6;
        TreeOfBSets T = random_tob(os, p, rng);
        const auto& verts = T.bset(T.root()).verts;
        if (verts.size() < 2) continue;
        auto it = verts.begin();
        std::advance(it, static_cast<long>(rng() % verts.size()));
        DerivedC d = derive_c(T, *it);
        if (d.typical_pair) {
            o.fail("typical pair, seed " + std::to_string(50000 + i) + ": " + d.typical_witness);
            break;
        }
        auto rep = validate_c_axioms(d.c);
        if (!rep.c1.pass || !rep.c2.pass || !rep.c3.pass) {
            o.fail("C1-C3 failure, seed " + std::to_string(50000 + i));
            break;
        }
        ++total;
        if (rep.c4.pass) ++c4_pass;
    }
    // The deep fixture passes all four axioms exhaustively.
    auto fixture = validate_c_axioms(derive_c(fixtures::e2(), "e").c);
    if (!fixture.all_c()) o.fail("reference fixture fails C1-C4");
    if (o.pass)
        o.detail = std::to_string(total) + " instances, C4 pass rate " +
                   std::to_string(c4_pass) + "/" + std::to_string(total) + " (reported only)";
    return o;
}

// 10. Orbit containment and the symmetric orbit union.
Outcome criterion10() {
    Outcome o;
    ColorChain os{Preset::OmegaStar, ""};
    int total = 0;
    for (int i = 0; i < 100 && o.pass; ++i) {
        std::mt19937_64 rng(60000 + i);
        GenParams p;
        p.max_nodes = 2;
        p.max_verts = 6;
        TreeOfBSets T = random_tob(os, p, rng);
        LSet l = compute_l(T);
        for (const auto& orb : triple_orbits(T)) {
            std::size_t in = 0;
            for (const auto& t : orb) in += l.triples.count(t);
            if (in != 0 && in != orb.size()) {
                o.fail("orbit straddles L, seed " + std::to_string(60000 + i));
                break;
            }
        }
        for (const auto& t : symmetric_orbit_union(T))
            if (!l.triples.count(t)) {
                o.fail("symmetric union outside L, seed " + std::to_string(60000 + i));
                break;
            }
        ++total;
    }
    // Frozen strict-containment fixture.
    TreeOfBSets T = fixtures::e2();
    auto su = symmetric_orbit_union(T);
    std::set<std::array<Id, 3>> expect{
        {"e", "x1", "x3"}, {"e", "x3", "x1"}, {"x2", "x1", "x3"}, {"x2", "x3", "x1"}};
    if (su != expect) o.fail("fixture symmetric union differs");
    if (su.size() >= compute_l(T).triples.size()) o.fail("fixture containment not strict");
    if (o.pass) o.detail = std::to_string(total) + " instances + strict fixture";
    return o;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {"1 tree/relation duality (exhaustive to 8 vertices)", criterion1},
        {"2 containment implies equality (all pairs to 6 vertices)", criterion2},
        {"3 witness uniqueness (500 random instances)", criterion3},
        {"4 unique tree relation in L + recovery aligns", criterion4},
        {"5 induce/lift round-trips", criterion5},
        {"6 directed one-point amalgamation cases", criterion6},
        {"7 amalgamation fuzz + decompose/recompose", criterion7},
        {"8 50-step generic chains", criterion8},
        {"9 derived C-relations", criterion9},
        {"10 orbit containment", criterion10},
    };
    int failures = 0;
    for (const auto& e : entries) {
        Outcome o = e.fn();
        std::cout << "criterion " << e.name << ": " << (o.pass ? "PASS" : "FAIL");
        if (!o.detail.empty()) std::cout << " — " << o.detail;
        std::cout << "\n" << std::flush;
        if (!o.pass) ++failures;
    }
    return failures;
}
