#include "arbor/forest.hpp"

#include <algorithm>

namespace arbor {

const AmbientNode& TreeOfBSets::root() const {
    if (nodes.empty()) fail(Err::validate, "empty node set");
    // The least node under the tree order (exists when the set is meet-closed).
    const AmbientNode* r = &*nodes.begin();
    for (const auto& n : nodes)
        if (node_lt(n, *r)) r = &n;
    return *r;
}

const BSet& TreeOfBSets::bset(const AmbientNode& t) const {
    auto it = bsets.find(t);
    if (it == bsets.end()) fail(Err::domain, "no B-set at node " + format_node(t));
    return it->second;
}

std::vector<AmbientNode> TreeOfBSets::children(const AmbientNode& s) const {
    std::vector<AmbientNode> out;
    for (const auto& t : nodes) {
        if (!node_lt(s, t)) continue;
        bool direct = true;
        for (const auto& u : nodes)
            if (node_lt(s, u) && node_lt(u, t)) {
                direct = false;
                break;
            }
        if (direct) out.push_back(t);
    }
    return out;
}

std::optional<AmbientNode> TreeOfBSets::parent(const AmbientNode& t) const {
    std::optional<AmbientNode> best;
    for (const auto& s : nodes) {
        if (!node_lt(s, t)) continue;
        if (!best || node_lt(*best, s)) best = s;
    }
    return best;
}

bool TreeOfBSets::operator==(const TreeOfBSets& o) const {
    return chain == o.chain && nodes == o.nodes && bsets == o.bsets && f == o.f && g == o.g;
}

namespace {

// Node path s = u0 < u1 < ... < un = t along parent/child edges.
std::vector<AmbientNode> node_path(const TreeOfBSets& A, const AmbientNode& s,
                                   const AmbientNode& t) {
    if (!node_leq(s, t)) fail(Err::domain, "node " + format_node(s) + " not below " + format_node(t));
    std::vector<AmbientNode> path{t};
    AmbientNode cur = t;
    while (!(cur == s)) {
        auto p = A.parent(cur);
        if (!p || !node_leq(s, *p)) fail(Err::domain, "no node path to " + format_node(t));
        cur = *p;
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

const std::map<Id, Id>& edge_g(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t) {
    auto it = A.g.find({s, t});
    if (it == A.g.end())
        fail(Err::validate, "missing g for edge " + format_node(s) + " -> " + format_node(t));
    return it->second;
}

const Id& edge_f(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t) {
    auto is = A.f.find(s);
    if (is == A.f.end() || is->second.find(t) == is->second.end())
        fail(Err::validate, "missing f for edge " + format_node(s) + " -> " + format_node(t));
    return is->second.at(t);
}

}  // namespace

void validate(const TreeOfBSets& A) {
    if (A.nodes.empty()) fail(Err::validate, "empty node set");
    for (const auto& n : A.nodes)
        if (!n.well_formed(A.chain))
            fail(Err::validate, "node " + format_node(n) + " malformed for chain " + A.chain.token());
    if (!is_meet_closed(A.nodes)) fail(Err::validate, "node set not meet-closed");
    const AmbientNode& r = A.root();
    for (const auto& n : A.nodes)
        if (!node_leq(r, n)) fail(Err::validate, "node set has no least element");

    if (A.bsets.size() != A.nodes.size()) fail(Err::validate, "B-set map keys != node set");
    for (const auto& [n, b] : A.bsets) {
        if (!A.has_node(n)) fail(Err::validate, "B-set at unknown node " + format_node(n));
        std::string why;
        if (!b.is_tree(&why))
            fail(Err::validate, "B-set at " + format_node(n) + " not a free tree: " + why);
        for (const Id& v : b.verts)
            if (!valid_id(v)) fail(Err::validate, "bad vertex id '" + v + "'");
    }

    // f: per node, a bijection children -> ramification points of its B-set.
    for (const auto& [s, fm] : A.f)
        if (!A.has_node(s)) fail(Err::validate, "f at unknown node " + format_node(s));
    for (const auto& s : A.nodes) {
        auto kids = A.children(s);
        const BSet& bs = A.bset(s);
        auto rams = ramification_points(bs);
        auto it = A.f.find(s);
        std::size_t listed = it == A.f.end() ? 0 : it->second.size();
        if (listed != kids.size())
            fail(Err::validate, "f at " + format_node(s) + " does not list each child once");
        std::set<Id> hit;
        for (const auto& t : kids) {
            const Id& v = edge_f(A, s, t);
            if (rams.count(v) == 0)
                fail(Err::validate, "f marks non-ramification vertex '" + v + "' at " + format_node(s));
            if (!hit.insert(v).second)
                fail(Err::validate, "f not injective at " + format_node(s));
        }
        if (hit.size() != rams.size())
            fail(Err::validate, "ramification point without child at " + format_node(s));
    }

    // g: per edge, a branch-collapsing surjection with branch <-> vertex bijection.
    for (const auto& [key, gm] : A.g) {
        const auto& [s, t] = key;
        if (!A.has_node(s) || !A.has_node(t)) fail(Err::validate, "g at unknown edge");
        auto p = A.parent(t);
        if (!p || !(*p == s)) fail(Err::validate, "g on non-edge " + format_node(s) + " -> " + format_node(t));
        const BSet& bs = A.bset(s);
        const BSet& bt = A.bset(t);
        const Id& e = edge_f(A, s, t);
        std::set<Id> dom;
        for (const Id& v : bs.verts)
            if (v != e) dom.insert(v);
        std::set<Id> keys;
        for (const auto& [v, w] : gm) keys.insert(v);
        if (keys != dom)
            fail(Err::validate, "g domain wrong on edge " + format_node(s) + " -> " + format_node(t));
        auto brs = branches_at(bs, e);
        if (brs.size() != bt.verts.size())
            fail(Err::validate, "branch count != child size on edge " + format_node(s) + " -> " +
                                    format_node(t));
        std::set<Id> images;
        for (const auto& br : brs) {
            const Id& img = gm.at(*br.begin());
            if (bt.verts.count(img) == 0)
                fail(Err::validate, "g image '" + img + "' outside child B-set");
            for (const Id& v : br)
                if (gm.at(v) != img)
                    fail(Err::validate, "g not constant on a branch at '" + e + "'");
            if (!images.insert(img).second)
                fail(Err::validate, "g merges two branches on edge " + format_node(s) + " -> " +
                                        format_node(t));
        }
    }
    for (const auto& s : A.nodes)
        for (const auto& t : A.children(s)) edge_g(A, s, t);
}

std::optional<Id> g_composite(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t,
                              const Id& a) {
    A.bset(s).require(a);
    auto path = node_path(A, s, t);
    Id cur = a;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (cur == edge_f(A, path[i], path[i + 1])) return std::nullopt;
        cur = edge_g(A, path[i], path[i + 1]).at(cur);
    }
    return cur;
}

std::set<Id> class_of(const TreeOfBSets& A, const AmbientNode& t, const Id& a) {
    const AmbientNode& r = A.root();
    auto img = g_composite(A, r, t, a);
    std::set<Id> out;
    if (!img) return out;
    for (const Id& b : A.bset(r).verts)
        if (g_composite(A, r, t, b) == img) out.insert(b);
    return out;
}

TreeOfBSets restrict_above(const TreeOfBSets& A, const AmbientNode& s) {
    if (!A.has_node(s)) fail(Err::domain, "restrict_above at unknown node");
    TreeOfBSets R;
    R.chain = A.chain;
    for (const auto& n : A.nodes)
        if (node_leq(s, n)) {
            R.nodes.insert(n);
            R.bsets[n] = A.bset(n);
        }
    for (const auto& n : R.nodes)
        for (const auto& t : A.children(n)) {
            R.f[n][t] = edge_f(A, n, t);
            R.g[{n, t}] = edge_g(A, n, t);
        }
    return R;
}

LSet compute_l(const TreeOfBSets& A) {
    const AmbientNode& r = A.root();
    LSet l;
    l.domain = A.bset(r).verts;
    for (const auto& t : A.nodes) {
        // Root-to-t images for every root vertex (nullopt where undefined).
        std::map<Id, std::optional<Id>> img;
        for (const Id& a : l.domain) img[a] = g_composite(A, r, t, a);
        const BSet& bt = A.bset(t);
        for (const Id& a : l.domain)
            for (const Id& b : l.domain)
                for (const Id& c : l.domain) {
                    const auto &ia = img[a], &ib = img[b], &ic = img[c];
                    if (!ia || !ib || !ic) continue;
                    if (*ia == *ib || *ib == *ic || *ia == *ic) continue;
                    if (bt.between(*ia, *ib, *ic)) l.triples.insert({a, b, c});
                }
    }
    return l;
}

AmbientNode witness_node(const TreeOfBSets& A, const Id& a, const Id& b, const Id& c) {
    const AmbientNode& r = A.root();
    A.bset(r).require(a);
    A.bset(r).require(b);
    A.bset(r).require(c);
    if (a == b || b == c || a == c) fail(Err::domain, "witness of non-distinct triple");
    AmbientNode cur = r;
    Id ia = a, ib = b, ic = c;
    while (true) {
        const BSet& bs = A.bset(cur);
        auto cen = centroid(bs, ia, ib, ic);
        if (cen.linear) {
            if (bs.between(ia, ib, ic)) return cur;
            fail(Err::domain, "triple not L-related in this orientation");
        }
        // Incomparable: the centroid is a ramification point; ascend into the
        // child it marks. The three images stay defined and distinct there.
        AmbientNode next;
        bool found = false;
        for (const auto& t : A.children(cur))
            if (edge_f(A, cur, t) == cen.vertex) {
                next = t;
                found = true;
                break;
            }
        if (!found) fail(Err::internal, "ramification point without child during witness search");
        const auto& gm = edge_g(A, cur, next);
        ia = gm.at(ia);
        ib = gm.at(ib);
        ic = gm.at(ic);
        cur = next;
    }
}

std::set<Id> pre_set(const TreeOfBSets& A, const AmbientNode& t) {
    const AmbientNode& r = A.root();
    std::set<Id> out;
    for (const Id& a : A.bset(r).verts)
        if (g_composite(A, r, t, a)) out.insert(a);
    return out;
}

std::vector<std::set<Id>> class_partition(const TreeOfBSets& A, const AmbientNode& t) {
    const AmbientNode& r = A.root();
    std::map<Id, std::set<Id>> by_img;
    for (const Id& a : A.bset(r).verts)
        if (auto img = g_composite(A, r, t, a)) by_img[*img].insert(a);
    std::vector<std::set<Id>> out;
    for (auto& [img, cls] : by_img) out.push_back(std::move(cls));
    return out;
}

std::vector<std::set<Id>> pre_branches(const TreeOfBSets& A, const AmbientNode& t, const Id& at) {
    const AmbientNode& r = A.root();
    const BSet& bt = A.bset(t);
    bt.require(at);
    std::vector<std::set<Id>> out;
    for (const auto& br : branches_at(bt, at)) {
        std::set<Id> pre;
        for (const Id& a : A.bset(r).verts)
            if (auto img = g_composite(A, r, t, a))
                if (br.count(*img)) pre.insert(a);
        out.push_back(std::move(pre));
    }
    return out;
}

}  // namespace arbor
