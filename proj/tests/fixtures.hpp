#pragma once

// Shared fixtures and brute-force oracles for the test suite. The oracles are
// deliberately naive and independent of the library's algorithms: betweenness
// by exhaustive simple-path search, witnesses by full scan, trees by direct
// Pruefer decoding.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arbor/forest.hpp"

namespace fixtures {

using arbor::AmbientNode;
using arbor::BSet;
using arbor::Color;
using arbor::ColorChain;
using arbor::Id;
using arbor::Rat;
using arbor::TreeOfBSets;

// --- Oracles -----------------------------------------------------------

// Betweenness by exhaustive search for a simple y-z path through x, using
// nothing but the edge set.
inline bool oracle_between(const BSet& b, const Id& x, const Id& y, const Id& z) {
    if (!b.has(x) || !b.has(y) || !b.has(z)) return false;
    std::map<Id, std::set<Id>> adj;
    for (const auto& [a, c] : b.edges) {
        adj[a].insert(c);
        adj[c].insert(a);
    }
    std::set<Id> seen;
    bool found = false;
    std::function<void(const Id&, bool)> dfs = [&](const Id& at, bool sawx) {
        if (found) return;
        sawx = sawx || at == x;
        if (at == z) {
            found = found || sawx;
            return;
        }
        seen.insert(at);
        for (const Id& n : adj[at])
            if (!seen.count(n)) dfs(n, sawx);
        seen.erase(at);
    };
    dfs(y, false);
    return found;
}

// All labeled trees on the given vertex names, one per Pruefer sequence.
inline std::vector<BSet> oracle_all_trees(const std::vector<Id>& ids) {
    const std::size_t n = ids.size();
    std::vector<BSet> out;
    if (n <= 2) {
        BSet b;
        for (const Id& v : ids) b.verts.insert(v);
        if (n == 2) b.edges.insert(arbor::mk_edge(ids[0], ids[1]));
        out.push_back(std::move(b));
        return out;
    }
    std::vector<std::size_t> seq(n - 2, 0);
    while (true) {
        BSet b;
        for (const Id& v : ids) b.verts.insert(v);
        std::vector<std::size_t> deg(n, 1);
        for (std::size_t p : seq) ++deg[p];
        std::set<std::size_t> leaves;
        for (std::size_t i = 0; i < n; ++i)
            if (deg[i] == 1) leaves.insert(i);
        for (std::size_t p : seq) {
            std::size_t leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            b.edges.insert(arbor::mk_edge(ids[leaf], ids[p]));
            if (--deg[p] == 1) leaves.insert(p);
        }
        std::size_t a = *leaves.begin();
        b.edges.insert(arbor::mk_edge(ids[a], ids[*std::next(leaves.begin())]));
        out.push_back(std::move(b));
        std::size_t i = 0;
        for (; i < seq.size(); ++i) {
            if (++seq[i] < n) break;
            seq[i] = 0;
        }
        if (i == seq.size()) break;
    }
    return out;
}

// Full-scan witness oracle: every node at which the three classes are defined,
// pairwise distinct, and related by the node's own B-set.
inline std::vector<AmbientNode> oracle_witnesses(const TreeOfBSets& A, const Id& a, const Id& b,
                                                 const Id& c) {
    std::vector<AmbientNode> out;
    const AmbientNode r = A.root();
    for (const auto& t : A.nodes) {
        auto ia = arbor::g_composite(A, r, t, a);
        auto ib = arbor::g_composite(A, r, t, b);
        auto ic = arbor::g_composite(A, r, t, c);
        if (!ia || !ib || !ic) continue;
        if (*ia == *ib || *ib == *ic || *ia == *ic) continue;
        if (A.bset(t).between(*ia, *ib, *ic)) out.push_back(t);
    }
    return out;
}

// Derived relation of a tree by the path oracle, distinct arguments only for
// the pairwise-distinct clause plus the reflexive endpoint clauses.
inline std::set<std::array<Id, 3>> oracle_derived(const BSet& b) {
    std::set<std::array<Id, 3>> out;
    if (b.verts.size() < 2) return out;
    for (const Id& x : b.verts)
        for (const Id& y : b.verts)
            for (const Id& z : b.verts)
                if (oracle_between(b, x, y, z)) out.insert({x, y, z});
    return out;
}

// --- Fixtures ----------------------------------------------------------

inline TreeOfBSets single_node(Color colour, const BSet& b,
                               ColorChain chain = ColorChain{arbor::Preset::OmegaStar, ""}) {
    TreeOfBSets T;
    T.chain = chain;
    AmbientNode r{colour, {}};
    T.nodes.insert(r);
    T.bsets[r] = b;
    return T;
}

// The two-node reference structure: a root star (hub e, leaves x1..x3) whose
// single child carries the path X1--X2--X3, with xi |-> Xi.
inline TreeOfBSets e2() {
    TreeOfBSets T;
    T.chain = ColorChain{arbor::Preset::OmegaStar, ""};
    AmbientNode r{Color(Rat(-2)), {}};
    AmbientNode s = arbor::branch(r, Color(Rat(-1)), 0);
    T.nodes = {r, s};
    T.bsets[r] = arbor::make_star("e", {"x1", "x2", "x3"});
    T.bsets[s] = arbor::make_path({"X1", "X2", "X3"});
    T.f[r][s] = "e";
    T.g[{r, s}] = {{"x1", "X1"}, {"x2", "X2"}, {"x3", "X3"}};
    return T;
}

}  // namespace fixtures
