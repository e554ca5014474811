#include "arbor/reconstruct.hpp"

#include <algorithm>

#include "arbor/morphism.hpp"

namespace arbor {

BSet root_bset_from_l(const LSet& l) {
    BSet b;
    b.verts = l.domain;
    if (b.verts.empty()) fail(Err::domain, "empty domain");
    if (b.verts.size() == 2) {
        auto it = b.verts.begin();
        Id a = *it++;
        b.edges.insert(mk_edge(a, *it));
    } else if (b.verts.size() > 2) {
        for (const Id& a : b.verts)
            for (const Id& c : b.verts) {
                if (!(a < c)) continue;
                bool separated = false;
                for (const auto& t : l.triples)
                    if (t[1] == a && t[2] == c && t[0] != a && t[0] != c) {
                        separated = true;
                        break;
                    }
                if (!separated) b.edges.insert(mk_edge(a, c));
            }
    }
    std::string why;
    if (!b.is_tree(&why)) fail(Err::validate, "root adjacency is not a tree: " + why);
    return b;
}

namespace {

void recover_sub(const LSet& l, TreeOfBSets& T, const AmbientNode& node, long long& ctr) {
    BSet b = root_bset_from_l(l);
    T.nodes.insert(node);
    T.bsets[node] = b;

    auto rams = ramification_points(b);
    // Attribute each triple not witnessed by the tree just built to the unique
    // vertex at which its three points lie in pairwise distinct branches (the
    // median, necessarily a ramification point).
    std::map<Id, LSet> sub;
    std::map<Id, std::map<Id, Id>> cls;  // ram point -> vertex -> branch name
    for (const Id& u : rams) {
        auto brs = branches_at(b, u);
        auto& c = cls[u];
        auto& ls = sub[u];
        for (const auto& br : brs) {
            Id name = *br.begin();
            ls.domain.insert(name);
            for (const Id& v : br) c[v] = name;
        }
    }
    for (const auto& t : l.triples) {
        if (b.between(t[0], t[1], t[2])) continue;
        std::optional<Id> med;
        for (const Id& u : rams) {
            const auto& c = cls.at(u);
            auto x = c.find(t[0]), y = c.find(t[1]), z = c.find(t[2]);
            if (x == c.end() || y == c.end() || z == c.end()) continue;
            if (x->second != y->second && y->second != z->second && x->second != z->second) {
                med = u;
                break;
            }
        }
        if (!med) fail(Err::validate, "triple without a witness candidate");
        sub.at(*med).triples.insert({cls.at(*med).at(t[0]), cls.at(*med).at(t[1]),
                                     cls.at(*med).at(t[2])});
    }

    Color cc = node.colour();
    cc.parts.back() += 1;
    for (const Id& u : rams) {
        AmbientNode child = branch(node, cc, ctr++);
        T.f[node][child] = u;
        auto& g = T.g[{node, child}];
        for (const Id& v : b.verts)
            if (v != u) g[v] = cls.at(u).at(v);
        recover_sub(sub.at(u), T, child, ctr);
    }
}

}  // namespace

TreeOfBSets recover(const LSet& l) {
    TreeOfBSets T;
    T.chain = ColorChain{Preset::OmegaStar, ""};
    long long n = static_cast<long long>(l.domain.size());
    AmbientNode root{Color(Rat(-(n + 2))), {}};
    long long ctr = 0;
    recover_sub(l, T, root, ctr);
    validate(T);
    if (!(compute_l(T).triples == l.triples))
        fail(Err::validate, "relation is not realized by any tree of B-sets");
    return T;
}

bool align_colour_erasing(const TreeOfBSets& A, const TreeOfBSets& B) {
    const BSet& ra = A.bset(A.root());
    const BSet& rb = B.bset(B.root());
    if (ra.verts.size() != rb.verts.size()) return false;
    if (ra.verts.size() > 9) fail(Err::domain, "root B-set too large for alignment search");
    std::vector<Id> va(ra.verts.begin(), ra.verts.end());
    std::vector<Id> vb(rb.verts.begin(), rb.verts.end());
    std::sort(vb.begin(), vb.end());
    do {
        std::map<Id, Id> psi;
        for (std::size_t i = 0; i < va.size(); ++i) psi[va[i]] = vb[i];
        if (l_iso_to_arboreal(A, B, psi)) return true;
    } while (std::next_permutation(vb.begin(), vb.end()));
    return false;
}

bool order_criterion(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t) {
    const AmbientNode r = A.root();
    if (!A.has_node(s) || !A.has_node(t)) fail(Err::domain, "node not in structure");
    for (const Id& a : A.bset(r).verts)
        for (const Id& b : A.bset(r).verts) {
            auto ia = g_composite(A, r, t, a);
            auto ib = g_composite(A, r, t, b);
            if (!ia || !ib || *ia == *ib) continue;
            auto ja = g_composite(A, r, s, a);
            auto jb = g_composite(A, r, s, b);
            if (!ja || !jb || *ja == *jb) return false;
        }
    return true;
}

}  // namespace arbor
