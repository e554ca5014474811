#include "arbor/amalgam.hpp"

#include <algorithm>

namespace arbor {

namespace {

bool node_in(const TreeOfBSets& A, const AmbientNode& n) { return A.nodes.count(n) != 0; }

// E-child of s on the way up to t (requires s < t, both in E).
AmbientNode up_step(const TreeOfBSets& E, const AmbientNode& s, const AmbientNode& t) {
    for (const auto& c : E.children(s))
        if (node_leq(c, t)) return c;
    fail(Err::internal, "no step from " + format_node(s) + " towards " + format_node(t));
}

ArborealMorphism identity_morph(const TreeOfBSets& E) {
    ArborealMorphism m;
    m.kind = MorphKind::strong;
    for (const auto& n : E.nodes) {
        m.tau[n] = n;
        for (const Id& v : E.bset(n).verts) m.phi[n][v] = v;
    }
    return m;
}

Id fresh_id(const std::set<Id>& used, int& counter) {
    while (true) {
        Id cand = kFreshPrefix + std::to_string(counter++);
        if (!used.count(cand)) return cand;
    }
}

long long max_index_of(const TreeOfBSets& A) {
    long long m = 0;
    for (const auto& n : A.nodes) m = std::max(m, max_branch_index(n));
    return m;
}

// Nodes sorted so parents come before children.
std::vector<AmbientNode> nodes_parents_first(const TreeOfBSets& E) {
    std::vector<AmbientNode> out(E.nodes.begin(), E.nodes.end());
    std::stable_sort(out.begin(), out.end(), [&](const AmbientNode& a, const AmbientNode& b) {
        std::size_t ba = 0, bb = 0;
        for (const auto& n : E.nodes) {
            if (node_lt(n, a)) ++ba;
            if (node_lt(n, b)) ++bb;
        }
        return ba < bb;
    });
    return out;
}

bool fixes_base(const TreeOfBSets& A, const ArborealMorphism& m) {
    for (const auto& s : A.nodes) {
        auto it = m.tau.find(s);
        if (it == m.tau.end() || !(it->second == s)) return false;
        for (const Id& v : A.bset(s).verts) {
            auto pm = m.phi.find(s);
            if (pm == m.phi.end()) return false;
            auto jt = pm->second.find(v);
            if (jt == pm->second.end() || jt->second != v) return false;
        }
    }
    return true;
}

void require_literal_ext(const TreeOfBSets& A, const TreeOfBSets& E, const char* who) {
    for (const auto& n : A.nodes)
        if (!node_in(E, n)) fail(Err::domain, std::string(who) + " does not contain the base");
    std::string why;
    if (!check_morphism(A, E, identity_morph(A), &why))
        fail(Err::domain, std::string(who) + " is not a strong literal extension: " + why);
}

}  // namespace

const char* ext_kind_name(ExtKind k) {
    switch (k) {
        case ExtKind::star: return "star";
        case ExtKind::leaf: return "leaf";
        case ExtKind::dyadic: return "dyadic";
        case ExtKind::ternary: return "ternary";
        case ExtKind::ramification: return "ramification";
    }
    return "?";
}

Id extension_point(const TreeOfBSets& A, const TreeOfBSets& E) {
    const AmbientNode& rA = A.root();
    const AmbientNode& rE = E.root();
    if (node_lt(rE, rA)) return E.f.at(rE).at(up_step(E, rE, rA));
    for (const Id& v : E.bset(rE).verts)
        if (!A.bset(rA).has(v)) return v;
    fail(Err::domain, "not a proper one-point extension");
}

ExtKind classify_extension(const TreeOfBSets& A, const TreeOfBSets& E) {
    const AmbientNode& rA = A.root();
    const AmbientNode& rE = E.root();
    if (node_lt(rE, rA)) return ExtKind::star;
    if (!(rE == rA)) fail(Err::domain, "extension root above base root");
    Id e = extension_point(A, E);
    const BSet& be = E.bset(rE);
    std::size_t deg = be.degree(e);
    if (deg == 2) return ExtKind::dyadic;
    if (deg != 1) fail(Err::domain, "extension point has valency " + std::to_string(deg));
    Id u = be.neighbours(e)[0];
    std::size_t du = A.bset(rA).has(u) ? A.bset(rA).degree(u) : 0;
    if (du <= 1) return ExtKind::leaf;
    if (du == 2) return ExtKind::ternary;
    return ExtKind::ramification;
}

ArborealMorphism literal_inclusion(const TreeOfBSets& A, const TreeOfBSets& W) {
    ArborealMorphism m = identity_morph(A);
    std::string why;
    if (!check_morphism(A, W, m, &why))
        fail(Err::domain, "inclusion is not a strong embedding: " + why);
    return m;
}

// ---------------------------------------------------------------------------
// Decomposition into one-point steps (bottom-up).

namespace {

// The attachment vertex map of a root vertex x inside the induced tree on the
// base vertices plus x.
struct Attach {
    std::size_t degree = 0;  // degree of x in the induced tree
    std::vector<Id> nbrs;    // its induced neighbours (base vertices)
};

Attach induced_attach(const BSet& eroot, const std::set<Id>& base, const Id& x) {
    std::set<Id> sub = base;
    sub.insert(x);
    BSet t = induced_bset(eroot, sub);
    Attach a;
    a.nbrs = t.neighbours(x);
    std::sort(a.nbrs.begin(), a.nbrs.end());
    a.degree = a.nbrs.size();
    return a;
}

// Extend a root-edge g map to x using a mapped neighbour in x's branch.
void place_by_neighbour(const BSet& root, const Id& marker, std::map<Id, Id>& g, const Id& x) {
    if (g.count(x)) return;
    for (const auto& br : branches_at(root, marker)) {
        if (!br.count(x)) continue;
        for (const Id& v : br)
            if (v != x && g.count(v)) {
                g[x] = g.at(v);
                return;
            }
    }
    fail(Err::internal, "no mapped neighbour for '" + x + "'");
}

bool try_candidate(const TreeOfBSets& A, const TreeOfBSets& cand, const TreeOfBSets& E) {
    try {
        validate(cand);
    } catch (const Error&) {
        return false;
    }
    std::string why;
    if (!check_morphism(cand, E, identity_morph(cand), &why)) return false;
    if (!check_morphism(A, cand, identity_morph(A), &why)) return false;
    return true;
}

}  // namespace

TreeOfBSets extend_step(const TreeOfBSets& A, const TreeOfBSets& E) {
    if (A == E) fail(Err::domain, "nothing to extend");
    const AmbientNode rA = A.root();
    const AmbientNode rE = E.root();

    if (!(rE == rA)) {
        // Exhaust the part of E above A's root first; the star below comes last.
        TreeOfBSets upper = restrict_above(E, rA);
        if (!(upper == A)) return extend_step(A, upper);
        // Star step: adjoin E's root below A's, with the marked hub and one
        // point per root vertex of A, each the image of that vertex's fiber.
        AmbientNode t = up_step(E, rE, rA);
        Id hub = E.f.at(rE).at(t);
        TreeOfBSets C = A;
        C.nodes.insert(rE);
        BSet star;
        star.verts.insert(hub);
        std::map<Id, Id> g;
        for (const Id& a : A.bset(rA).verts) {
            std::optional<Id> pick;
            for (const Id& v : E.bset(rE).verts) {
                auto img = g_composite(E, rE, rA, v);
                if (img && *img == a && (!pick || v < *pick)) pick = v;
            }
            if (!pick) fail(Err::internal, "empty fiber in star step");
            star.verts.insert(*pick);
            star.edges.insert(mk_edge(hub, *pick));
            g[*pick] = a;
        }
        C.bsets[rE] = star;
        C.f[rE][rA] = hub;
        C.g[{rE, rA}] = g;
        if (!try_candidate(A, C, E)) fail(Err::internal, "star step rejected");
        return C;
    }

    // Root step: add one vertex of E's root B-set to A's.
    const BSet& eroot = E.bset(rE);
    const std::set<Id>& base = A.bset(rA).verts;
    std::vector<Id> extra;
    for (const Id& v : eroot.verts)
        if (!base.count(v)) extra.push_back(v);
    std::sort(extra.begin(), extra.end());
    if (extra.empty()) fail(Err::internal, "equal root B-sets but unequal structures");

    auto with_root = [&](const Id& x) {
        std::set<Id> sub = base;
        sub.insert(x);
        TreeOfBSets C = A;
        C.bsets[rA] = induced_bset(eroot, sub);
        return C;
    };

    for (int kind = 0; kind < 4; ++kind) {
        for (const Id& x : extra) {
            Attach at;
            try {
                at = induced_attach(eroot, base, x);
            } catch (const Error&) {
                continue;  // base + x induces no tree; x is not a one-point candidate
            }
            if (at.degree == 0 || at.degree > 2) continue;
            std::size_t du = at.degree == 1 ? A.bset(rA).degree(at.nbrs[0]) : 0;
            bool want = (kind == 0 && at.degree == 1 && du <= 1) ||    // leaf
                        (kind == 1 && at.degree == 2) ||               // dyadic
                        (kind == 2 && at.degree == 1 && du == 2) ||    // ternary
                        (kind == 3 && at.degree == 1 && du >= 3);      // ramification
            if (!want) continue;

            if (kind <= 1) {
                TreeOfBSets C;
                try {
                    C = with_root(x);
                } catch (const Error&) {
                    continue;  // subset not realizable by any tree
                }
                bool ok = true;
                for (const auto& t : A.children(rA)) {
                    const Id& mark = A.f.at(rA).at(t);
                    auto& g = C.g[{rA, t}];
                    Id n = at.nbrs[0] == mark && at.degree == 2 ? at.nbrs[1] : at.nbrs[0];
                    if (n == mark) {
                        ok = false;
                        break;
                    }
                    g[x] = g.at(n);
                }
                if (ok && try_candidate(A, C, E)) return C;
                continue;
            }

            if (kind == 2) {
                // Ternary: the attachment vertex ramifies; adopt E's node for
                // it with the induced 3-point linear B-set.
                const Id& u = at.nbrs[0];
                std::optional<AmbientNode> c;
                auto fe = E.f.find(rE);
                if (fe != E.f.end())
                    for (const auto& [child, mv] : fe->second)
                        if (mv == u) c = child;
                if (!c) continue;
                auto nb = A.bset(rA).neighbours(u);
                const auto& ge = E.g.at({rE, *c});
                Id iu = ge.at(nb[0]), iv = ge.at(nb[1]), ix = ge.at(x);
                if (iu == iv || iu == ix || iv == ix) continue;
                TreeOfBSets C;
                try {
                    C = with_root(x);
                    C.bsets[*c] = induced_bset(E.bset(*c), {iu, iv, ix});
                } catch (const Error&) {
                    continue;
                }
                C.nodes.insert(*c);
                C.f[rA][*c] = u;
                auto& g = C.g[{rA, *c}];
                for (const Id& v : C.bset(rA).verts)
                    if (v != u) g[v] = ge.at(v);
                bool ok = true;
                for (const auto& t : A.children(rA)) {
                    const Id& mark = A.f.at(rA).at(t);
                    if (u == mark) {
                        ok = false;
                        break;
                    }
                    C.g[{rA, t}][x] = C.g.at({rA, t}).at(u);
                }
                if (ok && try_candidate(A, C, E)) return C;
                continue;
            }

            // Ramification: extend the subtree marked by u by one point
            // first, then pick a compatible x.
            const Id& u = at.nbrs[0];
            std::optional<AmbientNode> tA;
            for (const auto& t : A.children(rA))
                if (A.f.at(rA).at(t) == u) tA = t;
            if (!tA) continue;
            AmbientNode tE = up_step(E, rE, *tA);
            TreeOfBSets A1 = restrict_above(A, *tA);
            TreeOfBSets E1 = restrict_above(E, tE);
            if (A1 == E1) continue;
            TreeOfBSets A1x;
            try {
                A1x = extend_step(A1, E1);
            } catch (const Error&) {
                continue;
            }
            AmbientNode rho = A1x.root();
            Id ystar = extension_point(A1, A1x);
            if (!(rho == *tA)) {
                // A star was inserted below the old child; its points must be
                // the actual images of A's root vertices so that the g map
                // from the root matches the composites in E.
                Id hub = ystar;
                BSet star;
                star.verts.insert(hub);
                std::map<Id, Id> g2;
                bool ok = true;
                for (const Id& a : A1.bset(*tA).verts) {
                    std::optional<Id> img;
                    for (const Id& v : A.bset(rA).verts) {
                        auto ia = g_composite(A, rA, *tA, v);
                        if (ia && *ia == a) {
                            img = g_composite(E, rE, rho, v);
                            break;
                        }
                    }
                    if (!img) {
                        ok = false;
                        break;
                    }
                    star.verts.insert(*img);
                    star.edges.insert(mk_edge(hub, *img));
                    g2[*img] = a;
                }
                if (!ok || star.verts.size() != A1.bset(*tA).verts.size() + 1) continue;
                A1x.bsets[rho] = star;
                A1x.g[{rho, *tA}] = g2;
            }
            // Choose an x whose class at the new root is the new point.
            std::optional<Id> chosen;
            for (const Id& cand : extra) {
                Attach ca;
                try {
                    ca = induced_attach(eroot, base, cand);
                } catch (const Error&) {
                    continue;
                }
                if (ca.degree != 1 || ca.nbrs[0] != u) continue;
                auto img = g_composite(E, rE, rho, cand);
                if (img && *img == ystar && (!chosen || cand < *chosen)) chosen = cand;
            }
            if (!chosen) continue;
            TreeOfBSets C;
            try {
                C = with_root(*chosen);
            } catch (const Error&) {
                continue;
            }
            for (const auto& n : A1x.nodes) {
                C.nodes.insert(n);
                C.bsets[n] = A1x.bsets.at(n);
            }
            for (const auto& [s, fm] : A1x.f)
                for (const auto& [t, mv] : fm) C.f[s][t] = mv;
            for (const auto& [key, gm] : A1x.g) C.g[key] = gm;
            if (!(rho == *tA)) {
                C.f[rA].erase(*tA);
                C.g.erase({rA, *tA});
            }
            C.f[rA][rho] = u;
            auto& gr = C.g[{rA, rho}];
            gr.clear();
            for (const Id& v : A.bset(rA).verts)
                if (v != u) {
                    auto img = g_composite(E, rE, rho, v);
                    if (!img) fail(Err::internal, "base vertex lost in ramification step");
                    gr[v] = *img;
                }
            gr[*chosen] = ystar;
            for (const auto& t : A.children(rA)) {
                if (*tA == t) continue;
                C.g[{rA, t}][*chosen] = C.g.at({rA, t}).at(u);
            }
            if (try_candidate(A, C, E)) return C;
        }
    }
    fail(Err::internal, "no one-point extension step found");
}

std::vector<TreeOfBSets> decompose_chain(const TreeOfBSets& E) {
    validate(E);
    TreeOfBSets A;
    A.chain = E.chain;
    AmbientNode r = E.root();
    A.nodes.insert(r);
    BSet b;
    b.verts.insert(*E.bset(r).verts.begin());
    A.bsets[r] = b;
    literal_inclusion(A, E);
    std::vector<TreeOfBSets> chain{A};
    std::size_t guard = 0;
    while (!(chain.back() == E)) {
        if (++guard > 10000) fail(Err::internal, "decomposition does not terminate");
        chain.push_back(extend_step(chain.back(), E));
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

// ---------------------------------------------------------------------------
// One-point amalgamation.

namespace {

// Isomorphism over A taking E1's extra point to E2's, if any.
std::optional<ArborealMorphism> iso_over_a(const TreeOfBSets& A, const TreeOfBSets& E1,
                                           const TreeOfBSets& E2) {
    const AmbientNode r1 = E1.root();
    const AmbientNode r2 = E2.root();
    if (!(r1 == r2)) return std::nullopt;
    const AmbientNode rA = A.root();
    std::map<Id, Id> psi;
    if (r1 == rA) {
        for (const Id& v : A.bset(rA).verts) psi[v] = v;
        psi[extension_point(A, E1)] = extension_point(A, E2);
    } else {
        // Both stars at the same node: hub to hub, leaves matched through g.
        Id h1 = extension_point(A, E1), h2 = extension_point(A, E2);
        psi[h1] = h2;
        const auto& g1 = E1.g.at({r1, up_step(E1, r1, rA)});
        const auto& g2 = E2.g.at({r2, up_step(E2, r2, rA)});
        for (const auto& [v, a] : g1) {
            std::optional<Id> w;
            for (const auto& [v2, a2] : g2)
                if (a2 == a) w = v2;
            if (!w) return std::nullopt;
            psi[v] = *w;
        }
    }
    auto m = l_iso_to_arboreal(E1, E2, psi);
    if (!m) return std::nullopt;
    m->kind = MorphKind::internal_iso;
    std::string why;
    if (!check_morphism(E1, E2, *m, &why)) return std::nullopt;
    if (!fixes_base(A, *m)) return std::nullopt;
    m->kind = MorphKind::strong;
    return m;
}

struct CaseCtx {
    const TreeOfBSets& A;
    const TreeOfBSets& E1;
    const TreeOfBSets& E2;
    int fresh = 1;
};

std::set<Id> used_ids(const TreeOfBSets& t) {
    std::set<Id> out;
    for (const auto& [n, b] : t.bsets) out.insert(b.verts.begin(), b.verts.end());
    return out;
}

// Star E1 over (E2 or A-with-extra): W = other + E1's star node below, with
// one extra leaf on the hub mapping to the other's extra root point.
Amalgam star_over(CaseCtx& cx, const TreeOfBSets& other, const Id& other_extra) {
    const AmbientNode rA = cx.A.root();
    const AmbientNode rho = cx.E1.root();
    Id hub = extension_point(cx.A, cx.E1);
    TreeOfBSets W = other;
    W.nodes.insert(rho);
    BSet star = cx.E1.bset(rho);
    std::set<Id> used = star.verts;
    Id ell = fresh_id(used, cx.fresh);
    star.verts.insert(ell);
    star.edges.insert(mk_edge(hub, ell));
    W.bsets[rho] = star;
    AmbientNode above = other.root();  // the old root becomes the hub's child
    W.f[rho][above] = hub;
    std::map<Id, Id> g;
    const auto& g1 = cx.E1.g.at({rho, up_step(cx.E1, rho, rA)});
    if (above == rA) {
        for (const auto& [v, a] : g1) g[v] = a;
    } else {
        // The other extension is itself a star: match leaves through their
        // common images in the base root B-set.
        const auto& g2 = other.g.at({above, up_step(other, above, rA)});
        for (const auto& [v, a] : g1) {
            std::optional<Id> w;
            for (const auto& [v2, a2] : g2)
                if (a2 == a) w = v2;
            if (!w) fail(Err::internal, "unmatched star leaf over the base");
            g[v] = *w;
        }
    }
    g[ell] = other_extra;
    W.g[{rho, above}] = g;
    ArborealMorphism m1 = literal_inclusion(cx.E1, W);
    ArborealMorphism m2 = literal_inclusion(cx.E2, W);
    return Amalgam{std::move(W), std::move(m1), std::move(m2)};
}

}  // namespace

Amalgam amalgamate_one_point(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2);

namespace {

Amalgam finish(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2, TreeOfBSets W,
               ArborealMorphism m1, ArborealMorphism m2) {
    validate(W);
    std::string why;
    if (!check_morphism(E1, W, m1, &why)) fail(Err::internal, "amalgam left arm: " + why);
    if (!check_morphism(E2, W, m2, &why)) fail(Err::internal, "amalgam right arm: " + why);
    if (!fixes_base(A, m1) || !fixes_base(A, m2))
        fail(Err::internal, "amalgam does not fix the base");
    return Amalgam{std::move(W), std::move(m1), std::move(m2)};
}

// Both are root extensions at distinct sites: overlay the two modifications.
Amalgam union_case(CaseCtx& cx) {
    const TreeOfBSets &A = cx.A, &E1 = cx.E1, &E2 = cx.E2;
    const AmbientNode r = A.root();
    Id x1 = extension_point(A, E1), x2 = extension_point(A, E2);

    TreeOfBSets W;
    W.chain = A.chain;
    W.nodes = E1.nodes;
    W.nodes.insert(E2.nodes.begin(), E2.nodes.end());

    // Root B-set: apply both edge modifications to A's.
    BSet root;
    root.verts = A.bset(r).verts;
    root.verts.insert(x1);
    root.verts.insert(x2);
    root.edges = A.bset(r).edges;
    for (const TreeOfBSets* Ei : {&E1, &E2}) {
        const BSet& er = Ei->bset(r);
        for (const auto& e : A.bset(r).edges)
            if (!er.edges.count(e)) root.edges.erase(e);
        for (const auto& e : er.edges)
            if (!A.bset(r).edges.count(e)) root.edges.insert(e);
    }
    W.bsets[r] = root;

    for (const auto& n : W.nodes) {
        if (n == r) continue;
        if (!node_in(A, n)) {
            W.bsets[n] = node_in(E1, n) ? E1.bset(n) : E2.bset(n);
        } else if (!(E1.bset(n) == A.bset(n))) {
            W.bsets[n] = E1.bset(n);
        } else if (node_in(E2, n) && !(E2.bset(n) == A.bset(n))) {
            W.bsets[n] = E2.bset(n);
        } else {
            W.bsets[n] = A.bset(n);
        }
    }

    for (const auto& s : W.nodes)
        for (const auto& t : W.children(s)) {
            const TreeOfBSets* owner = nullptr;
            if (E1.g.count({s, t})) owner = &E1;
            else if (E2.g.count({s, t})) owner = &E2;
            if (!owner) fail(Err::internal, "unowned edge in union amalgam");
            W.f[s][t] = owner->f.at(s).at(t);
            std::map<Id, Id> g = owner->g.at({s, t});
            if (&*owner == &E1 && E2.g.count({s, t}))
                for (const auto& [v, w] : E2.g.at({s, t})) g.emplace(v, w);
            if (s == r) {
                const Id& mark = W.f.at(s).at(t);
                place_by_neighbour(root, mark, g, x1);
                place_by_neighbour(root, mark, g, x2);
            }
            W.g[{s, t}] = g;
        }
    return finish(A, E1, E2, W, literal_inclusion(E1, W), literal_inclusion(E2, W));
}

// Both ternary at the same dyadic vertex u, equal child colours: one child
// node carrying a 4-point chain extending both linear orders.
Amalgam ternary_merge(CaseCtx& cx, const Id& u) {
    const TreeOfBSets &A = cx.A, &E1 = cx.E1, &E2 = cx.E2;
    const AmbientNode r = A.root();
    Id e1 = extension_point(A, E1), e2 = extension_point(A, E2);
    auto nb = A.bset(r).neighbours(u);
    std::sort(nb.begin(), nb.end());
    const Id &n1 = nb[0], &n2 = nb[1];

    auto child_marking = [&](const TreeOfBSets& E) {
        for (const auto& [t, mv] : E.f.at(r))
            if (mv == u) return t;
        fail(Err::internal, "missing ternary child");
    };
    AmbientNode t1 = child_marking(E1), t2 = child_marking(E2);
    const auto& g1 = E1.g.at({r, t1});
    const auto& g2 = E2.g.at({r, t2});

    // Side of an extension point relative to n1/n2 in its 3-point chain:
    // -1 outside past n1, 0 in the middle, +1 outside past n2.
    auto side = [&](const TreeOfBSets& E, const AmbientNode& t, const std::map<Id, Id>& g,
                    const Id& e) {
        const BSet& b = E.bset(t);
        if (b.between(g.at(e), g.at(n1), g.at(n2))) return 0;
        if (b.between(g.at(n1), g.at(e), g.at(n2))) return -1;
        return 1;
    };
    int s1 = side(E1, t1, g1, e1);
    int s2 = side(E2, t2, g2, e2);

    std::set<Id> used = {g1.at(n1), g1.at(n2), g1.at(e1)};
    Id ce2 = fresh_id(used, cx.fresh);
    std::vector<Id> seq;
    if (s1 < 0) seq.push_back(g1.at(e1));
    if (s2 < 0) seq.push_back(ce2);
    seq.push_back(g1.at(n1));
    if (s1 == 0) seq.push_back(g1.at(e1));
    if (s2 == 0) seq.push_back(ce2);
    seq.push_back(g1.at(n2));
    if (s1 > 0) seq.push_back(g1.at(e1));
    if (s2 > 0) seq.push_back(ce2);

    TreeOfBSets W = A;
    BSet root = A.bset(r);
    root.verts.insert(e1);
    root.verts.insert(e2);
    root.edges.insert(mk_edge(u, e1));
    root.edges.insert(mk_edge(u, e2));
    W.bsets[r] = root;
    W.nodes.insert(t1);
    W.bsets[t1] = make_path(seq);
    W.f[r][t1] = u;
    auto& g = W.g[{r, t1}];
    for (const Id& v : A.bset(r).verts)
        if (v != u) g[v] = A.bset(r).between(n1, v, u) ? g1.at(n1) : g1.at(n2);
    g[e1] = g1.at(e1);
    g[e2] = ce2;
    for (const auto& t : A.children(r)) {
        W.g[{r, t}][e1] = W.g.at({r, t}).at(u);
        W.g[{r, t}][e2] = W.g.at({r, t}).at(u);
    }

    ArborealMorphism m1 = literal_inclusion(E1, W);
    ArborealMorphism m2 = identity_morph(E2);
    m2.tau[t2] = t1;
    m2.phi[t2] = {{g2.at(n1), g1.at(n1)}, {g2.at(n2), g1.at(n2)}, {g2.at(e2), ce2}};
    return finish(A, E1, E2, W, std::move(m1), std::move(m2));
}

// Both ternary at u, child colours c1 < c2: auxiliary point construction,
// with E2's chain re-seated above E1's node.
Amalgam ternary_aux(CaseCtx& cx, const Id& u) {
    const TreeOfBSets &A = cx.A, &E1 = cx.E1, &E2 = cx.E2;
    const AmbientNode r = A.root();
    Id e1 = extension_point(A, E1), e2 = extension_point(A, E2);
    auto nb = A.bset(r).neighbours(u);
    std::sort(nb.begin(), nb.end());
    const Id &n1 = nb[0], &n2 = nb[1];
    auto child_marking = [&](const TreeOfBSets& E) {
        for (const auto& [t, mv] : E.f.at(r))
            if (mv == u) return t;
        fail(Err::internal, "missing ternary child");
    };
    AmbientNode t1 = child_marking(E1), t2 = child_marking(E2);
    const auto& g1 = E1.g.at({r, t1});
    const auto& g2 = E2.g.at({r, t2});
    AmbientNode t2p = branch(t1, t2.colour(), std::max(max_index_of(E1), max_index_of(E2)) + 1);

    std::set<Id> used = {g1.at(n1), g1.at(n2), g1.at(e1)};
    Id ce2 = fresh_id(used, cx.fresh);
    used.insert(ce2);
    Id aux_cls = fresh_id(used, cx.fresh);
    std::set<Id> root_used = used_ids(A);
    root_used.insert(e1);
    root_used.insert(e2);
    Id aux = fresh_id(root_used, cx.fresh);

    // B-set at t1: centre aux_cls with three branches; E2's class is a leaf,
    // and E1's class shares a branch with n1 or n2 according to its order.
    const BSet& b1 = E1.bset(t1);
    Id X1 = g1.at(n1), X2 = g1.at(n2), Xe = g1.at(e1);
    BSet bt1;
    bt1.verts = {X1, X2, Xe, ce2, aux_cls};
    bt1.edges.insert(mk_edge(aux_cls, ce2));
    bool e1_with_n1 = b1.between(X1, Xe, X2) || b1.between(Xe, X1, X2);
    if (e1_with_n1) {
        bt1.edges.insert(mk_edge(aux_cls, X2));
        if (b1.between(X1, Xe, X2)) {  // n1 in the middle of e1 and n2
            bt1.edges.insert(mk_edge(Xe, X1));
            bt1.edges.insert(mk_edge(X1, aux_cls));
        } else {  // e1 between n1 and n2
            bt1.edges.insert(mk_edge(X1, Xe));
            bt1.edges.insert(mk_edge(Xe, aux_cls));
        }
    } else {
        bt1.edges.insert(mk_edge(aux_cls, X1));
        bt1.edges.insert(mk_edge(aux_cls, X2));
        bt1.edges.insert(mk_edge(X2, Xe));
    }

    TreeOfBSets W = A;
    BSet root = A.bset(r);
    for (const Id& v : {e1, e2, aux}) {
        root.verts.insert(v);
        root.edges.insert(mk_edge(u, v));
    }
    W.bsets[r] = root;
    W.nodes.insert(t1);
    W.nodes.insert(t2p);
    W.bsets[t1] = bt1;
    W.bsets[t2p] = E2.bset(t2);
    W.f[r][t1] = u;
    W.f[t1][t2p] = aux_cls;
    auto& gr = W.g[{r, t1}];
    for (const Id& v : A.bset(r).verts)
        if (v != u) gr[v] = A.bset(r).between(n1, v, u) ? X1 : X2;
    gr[e1] = Xe;
    gr[e2] = ce2;
    gr[aux] = aux_cls;
    W.g[{t1, t2p}] = {{X1, g2.at(n1)},
                      {X2, g2.at(n2)},
                      {ce2, g2.at(e2)},
                      {Xe, e1_with_n1 ? g2.at(n1) : g2.at(n2)}};
    for (const auto& t : A.children(r))
        for (const Id& v : {e1, e2, aux}) W.g[{r, t}][v] = W.g.at({r, t}).at(u);

    ArborealMorphism m1 = literal_inclusion(E1, W);
    ArborealMorphism m2 = identity_morph(E2);
    m2.tau[t2] = t2p;
    return finish(A, E1, E2, W, std::move(m1), std::move(m2));
}

// Both ramification extensions at u; s is A's child marking u, and each
// extension either keeps it (its own child is s) or seats a star below it.
Amalgam ram_case(CaseCtx& cx, const Id& u) {
    const TreeOfBSets &A = cx.A, &E1 = cx.E1, &E2 = cx.E2;
    const AmbientNode r = A.root();
    Id e1 = extension_point(A, E1), e2 = extension_point(A, E2);
    std::optional<AmbientNode> sA;
    for (const auto& [t, mv] : A.f.at(r))
        if (mv == u) sA = t;
    if (!sA) fail(Err::internal, "ramification point without child");
    const AmbientNode s = *sA;
    auto child_marking = [&](const TreeOfBSets& E) {
        for (const auto& [t, mv] : E.f.at(r))
            if (mv == u) return t;
        fail(Err::internal, "missing ramification child");
    };
    AmbientNode s1 = child_marking(E1), s2 = child_marking(E2);

    if (s1 == s && s2 == s) {
        // Case 1: recurse above s, then re-attach the root with one fresh
        // leaf at u per new vertex of the sub-amalgam's root B-set.
        Amalgam sub = amalgamate_one_point(restrict_above(A, s), restrict_above(E1, s),
                                           restrict_above(E2, s));
        if (!(sub.W.root() == s)) fail(Err::internal, "sub-amalgam moved its root");
        Id w1 = E1.g.at({r, s}).at(e1), w2 = E2.g.at({r, s}).at(e2);
        Id v1 = sub.m1.phi.at(s).at(w1), v2 = sub.m2.phi.at(s).at(w2);
        if (v1 == v2) fail(Err::internal, "sub-amalgam merged distinct extension points");

        TreeOfBSets W = A;
        for (const auto& n : sub.W.nodes) {
            W.nodes.insert(n);
            W.bsets[n] = sub.W.bset(n);
        }
        for (const auto& [sn, fm] : sub.W.f)
            for (const auto& [t, mv] : fm) W.f[sn][t] = mv;
        for (const auto& [key, gm] : sub.W.g) W.g[key] = gm;

        BSet root = A.bset(r);
        std::set<Id> root_used = root.verts;
        root_used.insert(e1);
        root_used.insert(e2);
        std::map<Id, Id> leaf_of;  // new sub-root vertex -> new root leaf
        for (const Id& nv : sub.W.bset(s).verts) {
            if (A.bset(s).has(nv)) continue;
            Id leaf = nv == v1 ? e1 : nv == v2 ? e2 : fresh_id(root_used, cx.fresh);
            root_used.insert(leaf);
            leaf_of[nv] = leaf;
            root.verts.insert(leaf);
            root.edges.insert(mk_edge(u, leaf));
        }
        W.bsets[r] = root;
        auto& gs = W.g[{r, s}];
        gs = A.g.at({r, s});
        for (const auto& [nv, leaf] : leaf_of) gs[leaf] = nv;
        for (const auto& t : A.children(r)) {
            if (t == s) continue;
            for (const auto& [nv, leaf] : leaf_of)
                W.g[{r, t}][leaf] = W.g.at({r, t}).at(u);
        }

        ArborealMorphism m1 = identity_morph(A);
        for (const auto& [n, t] : sub.m1.tau) m1.tau[n] = t;
        for (const auto& [n, pm] : sub.m1.phi) m1.phi[n] = pm;
        m1.phi[r][e1] = e1;
        ArborealMorphism m2 = identity_morph(A);
        for (const auto& [n, t] : sub.m2.tau) m2.tau[n] = t;
        for (const auto& [n, pm] : sub.m2.phi) m2.phi[n] = pm;
        m2.phi[r][e2] = e2;
        return finish(A, E1, E2, W, std::move(m1), std::move(m2));
    }

    // Normalize so E1 is the one whose star sits lower (or the only star).
    bool swapped = false;
    if (s1 == s || (!(s2 == s) && s2.colour() < s1.colour())) {
        swapped = true;
        Amalgam res = [&] {
            CaseCtx cy{cx.A, cx.E2, cx.E1, cx.fresh};
            return ram_case(cy, u);
        }();
        return Amalgam{std::move(res.W), std::move(res.m2), std::move(res.m1)};
    }
    (void)swapped;

    Id hub1 = E1.g.at({r, s1}).at(e1);
    std::set<Id> used1 = E1.bset(s1).verts;
    Id ell2 = fresh_id(used1, cx.fresh);
    BSet bs1 = E1.bset(s1);
    bs1.verts.insert(ell2);
    bs1.edges.insert(mk_edge(hub1, ell2));

    BSet root = A.bset(r);
    root.verts.insert(e1);
    root.verts.insert(e2);
    root.edges.insert(mk_edge(u, e1));
    root.edges.insert(mk_edge(u, e2));

    if (!(s2 == s)) {
        // Case 2: two stars, chain r < s1 < s2 < s.
        TreeOfBSets W = A;
        W.bsets[r] = root;
        W.nodes.insert(s1);
        W.nodes.insert(s2);
        W.bsets[s1] = bs1;
        W.bsets[s2] = E2.bset(s2);
        W.f[r].erase(s);
        W.g.erase({r, s});
        W.f[r][s1] = u;
        W.f[s1][s2] = hub1;
        W.f[s2][s] = E2.g.at({r, s2}).at(e2);
        auto& ga = W.g[{r, s1}];
        for (const auto& [v, w] : E1.g.at({r, s1})) ga[v] = w;
        ga[e2] = ell2;
        auto& gb = W.g[{s1, s2}];
        for (const Id& v : bs1.verts) {
            if (v == hub1) continue;
            if (v == ell2) {
                gb[v] = E2.g.at({r, s2}).at(e2);
                continue;
            }
            // Match leaves through their common image in B(s).
            Id a = E1.g.at({s1, s}).at(v);
            std::optional<Id> w;
            for (const auto& [v2, a2] : E2.g.at({s2, s}))
                if (a2 == a) w = v2;
            if (!w) fail(Err::internal, "unmatched star leaf");
            gb[v] = *w;
        }
        W.g[{s2, s}] = E2.g.at({s2, s});
        for (const auto& t : A.children(r)) {
            if (t == s) continue;
            W.g[{r, t}][e1] = W.g.at({r, t}).at(u);
            W.g[{r, t}][e2] = W.g.at({r, t}).at(u);
        }
        return finish(A, E1, E2, W, literal_inclusion(E1, W), literal_inclusion(E2, W));
    }

    // Case 3: E1's star below E2's root extension at s.
    TreeOfBSets W = E2;
    W.bsets[r] = root;
    W.nodes.insert(s1);
    W.bsets[s1] = bs1;
    W.f[r].erase(s);
    W.g.erase({r, s});
    W.f[r][s1] = u;
    W.f[s1][s] = hub1;
    auto& ga = W.g[{r, s1}];
    for (const auto& [v, w] : E1.g.at({r, s1})) ga[v] = w;
    ga[e2] = ell2;
    auto& gb = W.g[{s1, s}];
    for (const auto& [v, a] : E1.g.at({s1, s})) gb[v] = a;
    gb[ell2] = E2.g.at({r, s}).at(e2);
    for (const auto& t : A.children(r)) {
        if (t == s) continue;
        W.g[{r, t}][e1] = W.g.at({r, t}).at(u);
    }
    return finish(A, E1, E2, W, literal_inclusion(E1, W), literal_inclusion(E2, W));
}

// Rename E2's vertices beyond A wherever they collide with E1's vertices
// beyond A at the same node, so the two extensions' new content is disjoint.
// Returns the rewrite and the internal isomorphism E2 -> rewrite, or nullopt
// when nothing collides.
std::optional<std::pair<TreeOfBSets, ArborealMorphism>> disjointify(const TreeOfBSets& A,
                                                                    const TreeOfBSets& E1,
                                                                    const TreeOfBSets& E2in) {
    // First resolve node-name collisions: a new node of E2 whose name E1 also
    // uses for new content gets a fresh branch index (one-point extensions add
    // at most one childless node, so no descendants need rewriting).
    TreeOfBSets E2 = E2in;
    std::map<AmbientNode, AmbientNode> nodemap;
    bool node_renamed = false;
    for (const auto& n : E2in.nodes) {
        if (!A.has_node(n) && E1.has_node(n) && !n.tail.empty()) {
            long long idx = std::max(max_index_of(E1), max_index_of(E2in)) + 1;
            AmbientNode nn = n;
            nn.tail.back().second = idx;
            nodemap[n] = nn;
            node_renamed = true;
        } else {
            nodemap[n] = n;
        }
    }
    if (node_renamed) {
        TreeOfBSets R;
        R.chain = E2in.chain;
        for (const auto& n : E2in.nodes) {
            R.nodes.insert(nodemap.at(n));
            R.bsets[nodemap.at(n)] = E2in.bset(n);
        }
        for (const auto& [s, fm] : E2in.f)
            for (const auto& [t, mv] : fm) R.f[nodemap.at(s)][nodemap.at(t)] = mv;
        for (const auto& [key, gm] : E2in.g)
            R.g[{nodemap.at(key.first), nodemap.at(key.second)}] = gm;
        E2 = std::move(R);
    }

    std::map<AmbientNode, std::map<Id, Id>> ren;
    bool any = node_renamed;
    int counter = 1;
    for (const auto& n : E2.nodes) {
        std::set<Id> keep;
        if (A.has_node(n)) keep = A.bset(n).verts;
        std::set<Id> clash;
        if (E1.has_node(n))
            for (const Id& v : E1.bset(n).verts)
                if (!keep.count(v)) clash.insert(v);
        std::set<Id> used = E2.bset(n).verts;
        used.insert(clash.begin(), clash.end());
        auto& rn = ren[n];
        for (const Id& v : E2.bset(n).verts) {
            if (!keep.count(v) && clash.count(v)) {
                rn[v] = fresh_id(used, counter);
                used.insert(rn[v]);
                any = true;
            } else {
                rn[v] = v;
            }
        }
    }
    if (!any) return std::nullopt;
    TreeOfBSets W = E2;
    ArborealMorphism m;
    m.kind = MorphKind::internal_iso;
    for (const auto& n : E2.nodes) {
        BSet b;
        for (const Id& v : E2.bset(n).verts) b.verts.insert(ren.at(n).at(v));
        for (const auto& [v, w] : E2.bset(n).edges)
            b.edges.insert(mk_edge(ren.at(n).at(v), ren.at(n).at(w)));
        W.bsets[n] = b;
    }
    for (const auto& n : E2in.nodes) {
        m.tau[n] = nodemap.at(n);
        m.phi[n] = ren.at(nodemap.at(n));
    }
    for (auto& [s, fm] : W.f)
        for (auto& [t, mv] : fm) mv = ren.at(s).at(mv);
    for (auto& [key, gm] : W.g) {
        std::map<Id, Id> ng;
        for (const auto& [v, w] : gm) ng[ren.at(key.first).at(v)] = ren.at(key.second).at(w);
        gm = std::move(ng);
    }
    return std::make_pair(std::move(W), std::move(m));
}

}  // namespace

Amalgam amalgamate_one_point(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2) {
    require_literal_ext(A, E1, "first extension");
    require_literal_ext(A, E2, "second extension");
    if (auto dj = disjointify(A, E1, E2)) {
        Amalgam res = amalgamate_one_point(A, E1, dj->first);
        return Amalgam{std::move(res.W), std::move(res.m1), compose(dj->second, res.m2)};
    }
    if (auto th = iso_over_a(A, E1, E2)) return Amalgam{E2, *th, identity_morph(E2)};
    if (auto th = iso_over_a(A, E2, E1)) {
        // Identify the other way round.
        return Amalgam{E1, identity_morph(E1), *th};
    }

    ExtKind k1 = classify_extension(A, E1), k2 = classify_extension(A, E2);
    CaseCtx cx{A, E1, E2};
    if (k1 == ExtKind::star && k2 == ExtKind::star) {
        if (E2.root().colour() < E1.root().colour()) {
            CaseCtx cy{A, E2, E1};
            Amalgam res = star_over(cy, E1, extension_point(A, E1));
            return finish(A, E1, E2, std::move(res.W), std::move(res.m2), std::move(res.m1));
        }
        Amalgam res = star_over(cx, E2, extension_point(A, E2));
        return finish(A, E1, E2, std::move(res.W), std::move(res.m1), std::move(res.m2));
    }
    if (k1 == ExtKind::star || k2 == ExtKind::star) {
        bool swap = k2 == ExtKind::star;
        const TreeOfBSets& S = swap ? E2 : E1;
        const TreeOfBSets& R = swap ? E1 : E2;
        CaseCtx cy{A, S, R};
        Amalgam res = star_over(cy, R, extension_point(A, R));
        if (swap)
            return finish(A, E1, E2, std::move(res.W), std::move(res.m2), std::move(res.m1));
        return finish(A, E1, E2, std::move(res.W), std::move(res.m1), std::move(res.m2));
    }

    // Both root extensions; same-site ternary and ramification cases need
    // bespoke treatment, everything else is a plain overlay.
    const AmbientNode r = A.root();
    Id x1 = extension_point(A, E1), x2 = extension_point(A, E2);
    auto site = [&](const TreeOfBSets& E, const Id& x) {
        auto nb = E.bset(r).neighbours(x);
        std::sort(nb.begin(), nb.end());
        return nb;
    };
    auto nb1 = site(E1, x1), nb2 = site(E2, x2);
    if (k1 == k2 && nb1 == nb2 && nb1.size() == 1) {
        if (k1 == ExtKind::ternary) {
            auto child_colour = [&](const TreeOfBSets& E) {
                for (const auto& [t, mv] : E.f.at(r))
                    if (mv == nb1[0]) return t.colour();
                fail(Err::internal, "missing ternary child");
            };
            Color c1 = child_colour(E1), c2 = child_colour(E2);
            if (c1 == c2) return ternary_merge(cx, nb1[0]);
            if (c2 < c1) {
                CaseCtx cy{A, E2, E1};
                Amalgam res = ternary_aux(cy, nb1[0]);
                return Amalgam{std::move(res.W), std::move(res.m2), std::move(res.m1)};
            }
            return ternary_aux(cx, nb1[0]);
        }
        if (k1 == ExtKind::ramification) return ram_case(cx, nb1[0]);
    }
    return union_case(cx);
}

// ---------------------------------------------------------------------------
// Rebase and general amalgamation.

Rebased rebase(const TreeOfBSets& A, const TreeOfBSets& E, const ArborealMorphism& emb) {
    std::map<AmbientNode, AmbientNode> inv;  // image node in E -> A node
    for (const auto& [s, t] : emb.tau) inv[t] = s;

    long long fresh_idx = std::max(max_index_of(A), max_index_of(E)) + 1;
    std::map<AmbientNode, AmbientNode> psi;
    for (const auto& n : nodes_parents_first(E)) {
        auto it = inv.find(n);
        if (it != inv.end()) {
            psi[n] = it->second;
            continue;
        }
        std::optional<AmbientNode> m0;
        for (const auto& [img, src] : inv)
            if (node_lt(n, img) && (!m0 || node_lt(img, *m0))) m0 = img;
        if (m0) {
            // m0 may come later in parents-first order; its destination is known.
            psi[n] = ancestor_at(inv.at(*m0), n.colour());
        } else {
            auto p = E.parent(n);
            if (!p) fail(Err::internal, "rootless node without image above");
            psi[n] = branch(psi.at(*p), n.colour(), fresh_idx++);
        }
    }

    // Vertex renaming per node: image vertices take A's names.
    std::map<AmbientNode, std::map<Id, Id>> ren;
    int counter = 1;
    for (const auto& n : E.nodes) {
        auto& rn = ren[n];
        auto it = inv.find(n);
        std::set<Id> taken;
        if (it != inv.end()) {
            for (const auto& [av, ev] : emb.phi.at(it->second)) {
                rn[ev] = av;
                taken.insert(av);
            }
        }
        for (const Id& v : E.bset(n).verts) {
            if (rn.count(v)) continue;
            if (taken.count(v)) {
                std::set<Id> used = E.bset(n).verts;
                used.insert(taken.begin(), taken.end());
                rn[v] = fresh_id(used, counter);
            } else {
                rn[v] = v;
            }
            taken.insert(rn[v]);
        }
    }

    TreeOfBSets W;
    W.chain = E.chain;
    for (const auto& n : E.nodes) {
        const AmbientNode& pn = psi.at(n);
        W.nodes.insert(pn);
        BSet b;
        for (const Id& v : E.bset(n).verts) b.verts.insert(ren.at(n).at(v));
        for (const auto& [v, w] : E.bset(n).edges)
            b.edges.insert(mk_edge(ren.at(n).at(v), ren.at(n).at(w)));
        W.bsets[pn] = std::move(b);
    }
    for (const auto& [s, fm] : E.f)
        for (const auto& [t, mv] : fm) W.f[psi.at(s)][psi.at(t)] = ren.at(s).at(mv);
    for (const auto& [key, gm] : E.g) {
        auto& g = W.g[{psi.at(key.first), psi.at(key.second)}];
        for (const auto& [v, w] : gm) g[ren.at(key.first).at(v)] = ren.at(key.second).at(w);
    }

    ArborealMorphism iso;
    iso.kind = MorphKind::internal_iso;
    iso.tau = psi;
    iso.phi = ren;
    validate(W);
    std::string why;
    if (!check_morphism(E, W, iso, &why)) fail(Err::internal, "rebase is not internal: " + why);
    iso.kind = MorphKind::strong;
    ArborealMorphism inc = literal_inclusion(A, W);
    return Rebased{std::move(W), std::move(inc), std::move(iso)};
}

namespace {

Amalgam2 amalgamate_rec(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2,
                        int depth) {
    if (depth > 200) fail(Err::internal, "amalgamation recursion too deep");
    if (E1 == A) return Amalgam2{E2, literal_inclusion(A, E2), identity_morph(E2)};
    if (E2 == A) return Amalgam2{E1, identity_morph(E1), literal_inclusion(A, E1)};

    TreeOfBSets B1 = extend_step(A, E1);
    TreeOfBSets C1 = extend_step(A, E2);
    Amalgam S = amalgamate_one_point(A, B1, C1);
    Rebased R = rebase(C1, S.W, S.m2);
    ArborealMorphism mB1 = compose(S.m1, R.iso);

    Amalgam2 G1 = amalgamate_rec(C1, R.E, E2, depth + 1);
    ArborealMorphism mB1b = compose(mB1, G1.j1);
    Rebased R2 = rebase(B1, G1.W, mB1b);
    ArborealMorphism jE2b = compose(G1.j2, R2.iso);

    Amalgam2 G2 = amalgamate_rec(B1, E1, R2.E, depth + 1);
    return Amalgam2{std::move(G2.W), std::move(G2.j1), compose(jE2b, G2.j2)};
}

}  // namespace

Amalgam2 amalgamate(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2) {
    require_literal_ext(A, E1, "first extension");
    require_literal_ext(A, E2, "second extension");
    Amalgam2 out = amalgamate_rec(A, E1, E2, 0);
    std::string why;
    if (!check_morphism(E1, out.W, out.j1, &why)) fail(Err::internal, "amalgam arm 1: " + why);
    if (!check_morphism(E2, out.W, out.j2, &why)) fail(Err::internal, "amalgam arm 2: " + why);
    for (const auto& s : A.nodes)
        for (const Id& v : A.bset(s).verts)
            if (out.j1.phi_of(s, v) != out.j2.phi_of(s, v) ||
                !(out.j1.tau_of(s) == out.j2.tau_of(s)))
                fail(Err::internal, "amalgam arms disagree on the base");
    return out;
}

Amalgam2 joint_embed(const TreeOfBSets& A1, const TreeOfBSets& A2) {
    validate(A1);
    validate(A2);
    if (A1.chain.token() != A2.chain.token())
        fail(Err::domain, "joint embedding across different colour chains");
    // Pad both roots to at least three vertices (pendant leaves; structures
    // this small have a single node).
    auto pad = [](TreeOfBSets t, int& counter) {
        const AmbientNode r = t.root();
        while (t.bset(r).verts.size() < 3) {
            BSet b = t.bset(r);
            Id at = *b.verts.begin();
            for (const Id& v : b.verts)
                if (b.degree(v) <= 1) {
                    at = v;
                    break;
                }
            Id nv = fresh_id(b.verts, counter);
            b.verts.insert(nv);
            b.edges.insert(mk_edge(at, nv));
            t.bsets[r] = b;
        }
        return t;
    };
    int counter = 1;
    TreeOfBSets P1 = pad(A1, counter), P2 = pad(A2, counter);
    const AmbientNode r1 = P1.root(), r2 = P2.root();
    Color c = color_below(A1.chain, {r1.colour(), r2.colour()});
    AmbientNode rho = ancestor_at(r1, c);
    long long fresh_idx = std::max(max_index_of(P1), max_index_of(P2)) + 1;

    // Replant A2's nodes on fresh branches above the new root.
    std::map<AmbientNode, AmbientNode> psi;
    for (const auto& n : nodes_parents_first(P2)) {
        auto p = P2.parent(n);
        psi[n] = branch(p ? psi.at(*p) : rho, n.colour(), fresh_idx++);
    }

    TreeOfBSets W;
    W.chain = A1.chain;
    W.nodes = P1.nodes;
    W.bsets = P1.bsets;
    W.f = P1.f;
    W.g = P1.g;
    W.nodes.insert(rho);
    for (const auto& n : P2.nodes) {
        W.nodes.insert(psi.at(n));
        W.bsets[psi.at(n)] = P2.bset(n);
    }
    for (const auto& [s, fm] : P2.f)
        for (const auto& [t, mv] : fm) W.f[psi.at(s)][psi.at(t)] = mv;
    for (const auto& [key, gm] : P2.g) W.g[{psi.at(key.first), psi.at(key.second)}] = gm;

    std::vector<Id> v1(P1.bset(r1).verts.begin(), P1.bset(r1).verts.end());
    std::vector<Id> v2(P2.bset(r2).verts.begin(), P2.bset(r2).verts.end());
    BSet root;
    Id e1 = kFreshPrefix + "e1", e2 = kFreshPrefix + "e2";
    root.verts = {e1, e2};
    root.edges.insert(mk_edge(e1, e2));
    std::map<Id, Id> ga{{e2, v1[0]}}, gb{{e1, v2[0]}};
    for (std::size_t i = 1; i < v1.size(); ++i) {
        Id x = kFreshPrefix + "x" + std::to_string(i);
        root.verts.insert(x);
        root.edges.insert(mk_edge(e1, x));
        ga[x] = v1[i];
        gb[x] = v2[0];
    }
    for (std::size_t j = 1; j < v2.size(); ++j) {
        Id y = kFreshPrefix + "y" + std::to_string(j);
        root.verts.insert(y);
        root.edges.insert(mk_edge(e2, y));
        gb[y] = v2[j];
        ga[y] = v1[0];
    }
    W.bsets[rho] = root;
    W.f[rho][r1] = e1;
    W.f[rho][psi.at(r2)] = e2;
    W.g[{rho, r1}] = ga;
    W.g[{rho, psi.at(r2)}] = gb;

    validate(W);
    ArborealMorphism j1 = literal_inclusion(A1, W);
    ArborealMorphism j2;
    j2.kind = MorphKind::strong;
    for (const auto& n : A2.nodes) {
        j2.tau[n] = psi.at(n);
        for (const Id& v : A2.bset(n).verts) j2.phi[n][v] = v;
    }
    std::string why;
    if (!check_morphism(A2, W, j2, &why)) fail(Err::internal, "joint embed arm 2: " + why);
    return Amalgam2{std::move(W), std::move(j1), std::move(j2)};
}

}  // namespace arbor
