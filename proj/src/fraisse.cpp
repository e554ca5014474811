#include "arbor/fraisse.hpp"

#include <algorithm>
#include <functional>

#include "arbor/io.hpp"

namespace arbor {

namespace {

std::vector<AmbientNode> parents_first(const TreeOfBSets& E) {
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

AmbientNode up_step(const TreeOfBSets& E, const AmbientNode& s, const AmbientNode& t) {
    for (const auto& c : E.children(s))
        if (node_leq(c, t)) return c;
    fail(Err::internal, "no step from " + format_node(s) + " towards " + format_node(t));
}

long long fresh_branch_index(const TreeOfBSets& T) {
    long long m = 0;
    for (const auto& n : T.nodes) m = std::max(m, max_branch_index(n) + 1);
    return m;
}

Id fresh_in(const std::set<Id>& used) {
    for (int i = 1;; ++i) {
        Id cand = kFreshPrefix + "r" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

// ---------------------------------------------------------------------------
// Canonical form: rebuild the structure deterministically from a root vertex
// naming, transporting names downwards by least preimage and ordering sibling
// subtrees by their serialized content, then take the minimum over all root
// namings.

void canon_build(const TreeOfBSets& A, const AmbientNode& s, const std::map<Id, Id>& rn,
                 const AmbientNode& placed, TreeOfBSets& T) {
    BSet b;
    const BSet& bs = A.bset(s);
    for (const Id& v : bs.verts) b.verts.insert(rn.at(v));
    for (const auto& [a, c] : bs.edges) b.edges.insert(mk_edge(rn.at(a), rn.at(c)));
    T.nodes.insert(placed);
    T.bsets[placed] = std::move(b);

    struct Kid {
        AmbientNode t;
        std::map<Id, Id> rn;
        std::string key;
    };
    std::vector<Kid> kids;
    for (const auto& t : A.children(s)) {
        std::map<Id, Id> rnt;
        for (const auto& [x, gx] : A.g.at({s, t})) {
            const Id& nm = rn.at(x);
            auto it = rnt.find(gx);
            if (it == rnt.end() || nm < it->second) rnt[gx] = nm;
        }
        TreeOfBSets tmp;
        tmp.chain = A.chain;
        canon_build(A, t, rnt, branch(placed, t.colour(), 0), tmp);
        kids.push_back(Kid{t, std::move(rnt), serialize_tob(tmp)});
    }
    std::sort(kids.begin(), kids.end(), [](const Kid& a, const Kid& b) { return a.key < b.key; });
    long long idx = 0;
    for (const auto& k : kids) {
        AmbientNode cp = branch(placed, k.t.colour(), idx++);
        T.f[placed][cp] = rn.at(A.f.at(s).at(k.t));
        auto& g2 = T.g[{placed, cp}];
        for (const auto& [x, gx] : A.g.at({s, k.t})) g2[rn.at(x)] = k.rn.at(gx);
        canon_build(A, k.t, k.rn, cp, T);
    }
}

}  // namespace

std::string canonical_form(const TreeOfBSets& A) {
    const AmbientNode r = A.root();
    std::vector<Id> verts(A.bset(r).verts.begin(), A.bset(r).verts.end());
    if (verts.size() > 8) fail(Err::domain, "root B-set too large for canonicalization");
    std::vector<Id> targets;
    for (std::size_t i = 0; i < verts.size(); ++i)
        targets.push_back("v" + std::string(i < 10 ? "0" : "") + std::to_string(i));
    std::vector<std::size_t> perm(verts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::string best;
    do {
        std::map<Id, Id> psi;
        for (std::size_t i = 0; i < perm.size(); ++i) psi[verts[i]] = targets[perm[i]];
        TreeOfBSets T;
        T.chain = A.chain;
        canon_build(A, r, psi, AmbientNode{r.colour(), {}}, T);
        std::string text = serialize_tob(T);
        if (best.empty() || text < best) best = std::move(text);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool are_isomorphic(const TreeOfBSets& A, const TreeOfBSets& B) {
    if (A.chain != B.chain) return false;
    if (A.nodes.size() != B.nodes.size()) return false;
    if (A.bset(A.root()).verts.size() != B.bset(B.root()).verts.size()) return false;
    return canonical_form(A) == canonical_form(B);
}

// ---------------------------------------------------------------------------
// Enumeration of small isomorphism classes.

namespace {

std::vector<BSet> all_labeled_trees(const std::vector<Id>& ids) {
    const std::size_t n = ids.size();
    std::vector<BSet> out;
    if (n <= 2) {
        BSet b;
        for (const Id& v : ids) b.verts.insert(v);
        if (n == 2) b.edges.insert(mk_edge(ids[0], ids[1]));
        out.push_back(std::move(b));
        return out;
    }
    std::vector<std::size_t> seq(n - 2, 0);
    while (true) {
        // Decode the Pruefer sequence.
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
            b.edges.insert(mk_edge(ids[leaf], ids[p]));
            if (--deg[p] == 1) leaves.insert(p);
        }
        std::size_t a = *leaves.begin();
        b.edges.insert(mk_edge(ids[a], ids[*std::next(leaves.begin())]));
        out.push_back(std::move(b));
        // Next sequence.
        std::size_t i = 0;
        for (; i < seq.size(); ++i) {
            if (++seq[i] < n) break;
            seq[i] = 0;
        }
        if (i == seq.size()) break;
    }
    return out;
}

Color level_colour(const ColorChain& chain, int k) {
    std::vector<Rat> parts(chain.arity(), Rat(-k));
    return Color(parts);
}

// All subtrees rooted at `node` (colour level k, counting down towards 1) on
// the given vertex names, using at most `budget` nodes in total.
void enum_node(const ColorChain& chain, const AmbientNode& node, int k,
               const std::vector<Id>& ids, int budget, std::vector<TreeOfBSets>& out) {
    if (budget < 1) return;
    for (const BSet& b : all_labeled_trees(ids)) {
        std::set<Id> rams = ramification_points(b);
        if (1 + static_cast<int>(rams.size()) > budget) continue;
        TreeOfBSets base;
        base.chain = chain;
        base.nodes.insert(node);
        base.bsets[node] = b;
        if (rams.empty()) {
            out.push_back(std::move(base));
            continue;
        }
        if (k <= 1) continue;
        std::vector<Id> ru(rams.begin(), rams.end());
        std::function<void(std::size_t, const TreeOfBSets&, int)> combine =
            [&](std::size_t i, const TreeOfBSets& cur, int used) {
                if (i == ru.size()) {
                    out.push_back(cur);
                    return;
                }
                const Id& u = ru[i];
                auto brs = branches_at(b, u);
                std::vector<Id> cids;
                for (std::size_t j = 0; j < brs.size(); ++j)
                    cids.push_back("w" + std::to_string(j));
                for (int k2 = 1; k2 < k; ++k2) {
                    AmbientNode child = branch(node, level_colour(chain, k2),
                                               static_cast<long long>(i));
                    std::vector<TreeOfBSets> subs;
                    enum_node(chain, child, k2, cids, budget - used, subs);
                    for (const TreeOfBSets& sub : subs) {
                        TreeOfBSets merged = cur;
                        for (const auto& n : sub.nodes) {
                            merged.nodes.insert(n);
                            merged.bsets[n] = sub.bsets.at(n);
                        }
                        for (const auto& [sn, fm] : sub.f)
                            for (const auto& [t, mv] : fm) merged.f[sn][t] = mv;
                        for (const auto& [key, gm] : sub.g) merged.g[key] = gm;
                        merged.f[node][child] = u;
                        auto& g = merged.g[{node, child}];
                        for (std::size_t j = 0; j < brs.size(); ++j)
                            for (const Id& v : brs[j]) g[v] = cids[j];
                        combine(i + 1, merged, used + static_cast<int>(sub.nodes.size()));
                    }
                }
            };
        combine(0, base, 1);
    }
}

}  // namespace

std::vector<TreeOfBSets> enumerate_classes(const ColorChain& chain, int max_nodes, int max_root) {
    if (max_nodes < 1 || max_root < 1) fail(Err::domain, "enumeration bounds must be positive");
    std::map<std::string, TreeOfBSets> classes;
    const int window = max_nodes + 1;
    for (int m = 1; m <= max_root; ++m) {
        std::vector<Id> ids;
        for (int i = 0; i < m; ++i) ids.push_back("v" + std::to_string(i));
        for (int k0 = 1; k0 <= window; ++k0) {
            std::vector<TreeOfBSets> frags;
            enum_node(chain, AmbientNode{level_colour(chain, k0), {}}, k0, ids, max_nodes, frags);
            for (TreeOfBSets& t : frags) {
                validate(t);
                classes.emplace(canonical_form(t), std::move(t));
            }
        }
    }
    std::vector<TreeOfBSets> out;
    for (auto& [key, t] : classes) out.push_back(std::move(t));
    return out;
}

// ---------------------------------------------------------------------------
// Strong embeddings.

namespace {

void lift_strong(const TreeOfBSets& A, const TreeOfBSets& E,
                 const std::vector<std::pair<AmbientNode, AmbientNode>>& edges, std::size_t at,
                 ArborealMorphism m, std::vector<ArborealMorphism>& out, bool first_only) {
    if (first_only && !out.empty()) return;
    if (at == edges.size()) {
        std::string why;
        if (check_morphism(A, E, m, &why)) out.push_back(std::move(m));
        return;
    }
    const auto& [s, t] = edges[at];
    const AmbientNode& ts = m.tau.at(s);
    const Id& mark = A.f.at(s).at(t);
    const Id& mv = m.phi.at(s).at(mark);
    std::optional<AmbientNode> c;
    auto fe = E.f.find(ts);
    if (fe != E.f.end())
        for (const auto& [child, v] : fe->second)
            if (v == mv) c = child;
    if (!c) return;
    for (const auto& tp : E.nodes) {
        if (tp.colour() != t.colour() || !node_leq(*c, tp)) continue;
        std::map<Id, Id> phit;
        bool ok = true;
        for (const auto& [x, gx] : A.g.at({s, t})) {
            auto img = g_composite(E, ts, tp, m.phi.at(s).at(x));
            if (!img) {
                ok = false;
                break;
            }
            auto [it, fresh] = phit.emplace(gx, *img);
            if (!fresh && it->second != *img) {
                ok = false;
                break;
            }
        }
        if (!ok || phit.size() != A.bset(t).verts.size()) continue;
        ArborealMorphism next = m;
        next.tau[t] = tp;
        next.phi[t] = std::move(phit);
        lift_strong(A, E, edges, at + 1, std::move(next), out, first_only);
        if (first_only && !out.empty()) return;
    }
}

void embeddings_into(const TreeOfBSets& A, const TreeOfBSets& E,
                     std::vector<ArborealMorphism>& out, bool first_only) {
    const AmbientNode rA = A.root();
    std::vector<Id> va(A.bset(rA).verts.begin(), A.bset(rA).verts.end());
    std::vector<std::pair<AmbientNode, AmbientNode>> edges;
    for (const auto& s : parents_first(A))
        for (const auto& t : A.children(s)) edges.emplace_back(s, t);

    for (const auto& nE : E.nodes) {
        if (nE.colour() != rA.colour()) continue;
        const BSet& ta = A.bset(rA);
        const BSet& tb = E.bset(nE);
        if (tb.verts.size() < ta.verts.size()) continue;
        std::vector<Id> vb(tb.verts.begin(), tb.verts.end());
        // Incremental injection with betweenness pruning.
        std::vector<Id> img(va.size());
        std::set<Id> used;
        std::function<void(std::size_t)> assign = [&](std::size_t i) {
            if (first_only && !out.empty()) return;
            if (i == va.size()) {
                ArborealMorphism m;
                m.kind = MorphKind::strong;
                m.tau[rA] = nE;
                auto& p = m.phi[rA];
                for (std::size_t j = 0; j < va.size(); ++j) p[va[j]] = img[j];
                lift_strong(A, E, edges, 0, std::move(m), out, first_only);
                return;
            }
            for (const Id& w : vb) {
                if (used.count(w)) continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j)
                    for (std::size_t l = 0; l < i && ok; ++l) {
                        if (ta.between(va[i], va[j], va[l]) != tb.between(w, img[j], img[l]))
                            ok = false;
                        else if (ta.between(va[j], va[i], va[l]) !=
                                 tb.between(img[j], w, img[l]))
                            ok = false;
                    }
                if (!ok) continue;
                img[i] = w;
                used.insert(w);
                assign(i + 1);
                used.erase(w);
                if (first_only && !out.empty()) return;
            }
        };
        assign(0);
        if (first_only && !out.empty()) return;
    }
}

}  // namespace

std::vector<ArborealMorphism> find_strong_embeddings(const TreeOfBSets& A, const TreeOfBSets& E) {
    std::vector<ArborealMorphism> out;
    embeddings_into(A, E, out, false);
    return out;
}

bool check_extension_property(const TreeOfBSets& M, const TreeOfBSets& A, const TreeOfBSets& E,
                              std::string* why) {
    auto restricts = [&](const ArborealMorphism& e, const ArborealMorphism& h) {
        for (const auto& s : A.nodes) {
            if (!(e.tau.at(s) == h.tau.at(s))) return false;
            for (const Id& v : A.bset(s).verts)
                if (e.phi.at(s).at(v) != h.phi.at(s).at(v)) return false;
        }
        return true;
    };
    auto hs = find_strong_embeddings(A, M);
    auto es = find_strong_embeddings(E, M);
    for (const auto& h : hs) {
        bool found = false;
        for (const auto& e : es)
            if (restricts(e, h)) {
                found = true;
                break;
            }
        if (!found) {
            if (why) *why = "an embedding of the substructure does not extend";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Direct realization of a one-point extension over an embedded copy, used by
// the chain construction to avoid re-amalgamating the whole stage.

namespace {

struct RealizeOut {
    TreeOfBSets W;
    Id x;  // the new vertex at the image of the extension's root node
    std::map<AmbientNode, AmbientNode> tau2;       // placements for E's new nodes
    std::map<AmbientNode, std::map<Id, Id>> phi2;  // extra vertex-map entries
};

std::optional<RealizeOut> realize_go(const TreeOfBSets& M, const AmbientNode& at,
                                     const TreeOfBSets& A, const TreeOfBSets& E,
                                     const ArborealMorphism& h) {
    const AmbientNode rA = A.root();
    ExtKind kind = classify_extension(A, E);
    Id x = extension_point(A, E);
    const BSet& bm = M.bset(at);
    const BSet& be = E.bset(rA);

    auto pendant = [&](TreeOfBSets& W, const AmbientNode& n, const Id& host) {
        BSet b = W.bset(n);
        Id nv = fresh_in(b.verts);
        b.verts.insert(nv);
        b.edges.insert(mk_edge(host, nv));
        W.bsets[n] = b;
        return nv;
    };
    auto route_other_children = [&](TreeOfBSets& W, const AmbientNode& n, const Id& nv,
                                    const Id& via, const AmbientNode* except) {
        for (const auto& t : M.children(n)) {
            if (except && t == *except) continue;
            W.g[{n, t}][nv] = W.g.at({n, t}).at(via);
        }
    };

    if (kind == ExtKind::leaf) {
        auto nb = be.neighbours(x);
        if (nb.size() != 1) return std::nullopt;
        Id v = h.phi_of(rA, nb[0]);
        std::size_t d = bm.degree(v);
        TreeOfBSets W = M;
        if (d <= 1) {
            Id xn = pendant(W, at, v);
            route_other_children(W, at, xn, v, nullptr);
            return RealizeOut{std::move(W), xn, {}, {}};
        }
        if (d == 2) {
            Color cc = at.colour();
            cc.parts.back() += 1;
            if (!M.chain.valid_color(cc)) return std::nullopt;
            AmbientNode nc = branch(at, cc, fresh_branch_index(M));
            auto brs = branches_at(bm, v);
            Id xn = pendant(W, at, v);
            route_other_children(W, at, xn, v, nullptr);
            W.nodes.insert(nc);
            W.bsets[nc] = make_path({"cA", "cX", "cB"});
            W.f[at][nc] = v;
            auto& g = W.g[{at, nc}];
            for (const Id& w : bm.verts)
                if (w != v) g[w] = brs[0].count(w) ? "cA" : "cB";
            g[xn] = "cX";
            return RealizeOut{std::move(W), xn, {}, {}};
        }
        // v ramifies in M: add a new class below, pendant at a leaf to avoid
        // any further cascade.
        std::optional<AmbientNode> cM;
        for (const auto& [t, mv] : M.f.at(at))
            if (mv == v) cM = t;
        if (!cM) return std::nullopt;
        Id xn = pendant(W, at, v);
        const BSet& bc = M.bset(*cM);
        Id w = *leaves(bc).begin();
        Id y = pendant(W, *cM, w);
        W.g[{at, *cM}][xn] = y;
        for (const auto& t2 : M.children(*cM)) W.g[{*cM, t2}][y] = W.g.at({*cM, t2}).at(w);
        route_other_children(W, at, xn, v, &*cM);
        return RealizeOut{std::move(W), xn, {}, {}};
    }

    if (kind == ExtKind::dyadic) {
        auto nb = be.neighbours(x);
        std::sort(nb.begin(), nb.end());
        Id pa = h.phi_of(rA, nb[0]), pb = h.phi_of(rA, nb[1]);
        auto path = bm.path(pa, pb);
        TreeOfBSets W = M;
        BSet b = bm;
        Id xn = fresh_in(b.verts);
        b.verts.insert(xn);
        b.edges.erase(mk_edge(path[0], path[1]));
        b.edges.insert(mk_edge(path[0], xn));
        b.edges.insert(mk_edge(xn, path[1]));
        W.bsets[at] = b;
        for (const auto& t : M.children(at)) {
            const Id& mark = M.f.at(at).at(t);
            Id n = path[0] == mark ? path[1] : path[0];
            W.g[{at, t}][xn] = W.g.at({at, t}).at(n);
        }
        return RealizeOut{std::move(W), xn, {}, {}};
    }

    if (kind == ExtKind::ternary) {
        auto nbx = be.neighbours(x);
        if (nbx.size() != 1) return std::nullopt;
        const Id& u = nbx[0];
        auto nb = A.bset(rA).neighbours(u);
        std::sort(nb.begin(), nb.end());
        Id v = h.phi_of(rA, u), pa = h.phi_of(rA, nb[0]), pb = h.phi_of(rA, nb[1]);
        std::optional<AmbientNode> cE;
        for (const auto& [t, mv] : E.f.at(rA))
            if (mv == u) cE = t;
        if (!cE) return std::nullopt;
        const auto& ge = E.g.at({rA, *cE});
        const BSet& bce = E.bset(*cE);
        Id ea = ge.at(nb[0]), eb = ge.at(nb[1]), ex = ge.at(x);
        int mid = bce.between(ex, ea, eb) ? 0 : bce.between(ea, ex, eb) ? -1 : 1;

        std::size_t d = bm.degree(v);
        TreeOfBSets W = M;
        if (d == 2) {
            AmbientNode nc = branch(at, cE->colour(), fresh_branch_index(M));
            if (!(at.colour() < nc.colour())) return std::nullopt;
            auto brs = branches_at(bm, v);
            std::size_t aside = brs[0].count(pa) ? 0 : 1;
            Id xn = pendant(W, at, v);
            route_other_children(W, at, xn, v, nullptr);
            W.nodes.insert(nc);
            std::vector<Id> seq = mid == 0    ? std::vector<Id>{"cA", "cX", "cB"}
                                  : mid == -1 ? std::vector<Id>{"cX", "cA", "cB"}
                                              : std::vector<Id>{"cA", "cB", "cX"};
            W.bsets[nc] = make_path(seq);
            W.f[at][nc] = v;
            auto& g = W.g[{at, nc}];
            for (const Id& w : bm.verts)
                if (w != v) g[w] = brs[aside].count(w) ? "cA" : "cB";
            g[xn] = "cX";
            RealizeOut out{std::move(W), xn, {}, {}};
            out.tau2[*cE] = nc;
            out.phi2[*cE] = {{ea, "cA"}, {eb, "cB"}, {ex, "cX"}};
            return out;
        }
        if (d >= 3) {
            std::optional<AmbientNode> cM;
            for (const auto& [t, mv] : M.f.at(at))
                if (mv == v) cM = t;
            if (!cM || !(cM->colour() == cE->colour())) return std::nullopt;
            Id va = M.g.at({at, *cM}).at(pa), vb = M.g.at({at, *cM}).at(pb);
            if (va == vb) return std::nullopt;
            const BSet& bc = M.bset(*cM);
            Id y;
            if (mid == 0) {
                auto q = bc.path(va, vb);
                BSet b2 = bc;
                y = fresh_in(b2.verts);
                b2.verts.insert(y);
                b2.edges.erase(mk_edge(q[0], q[1]));
                b2.edges.insert(mk_edge(q[0], y));
                b2.edges.insert(mk_edge(y, q[1]));
                W.bsets[*cM] = b2;
                for (const auto& t2 : M.children(*cM)) {
                    const Id& mark = M.f.at(*cM).at(t2);
                    Id n = q[0] == mark ? q[1] : q[0];
                    W.g[{*cM, t2}][y] = W.g.at({*cM, t2}).at(n);
                }
            } else {
                const Id& anchor = mid == -1 ? va : vb;
                const Id& other = mid == -1 ? vb : va;
                Id host = anchor;
                if (bc.degree(anchor) > 1) {
                    std::optional<Id> pick;
                    for (const Id& l : leaves(bc))
                        if (bc.between(anchor, l, other) && (!pick || l < *pick)) pick = l;
                    if (!pick) return std::nullopt;
                    host = *pick;
                }
                y = pendant(W, *cM, host);
                for (const auto& t2 : M.children(*cM)) W.g[{*cM, t2}][y] = W.g.at({*cM, t2}).at(host);
            }
            Id xn = pendant(W, at, v);
            W.g[{at, *cM}][xn] = y;
            route_other_children(W, at, xn, v, &*cM);
            RealizeOut out{std::move(W), xn, {}, {}};
            out.tau2[*cE] = *cM;
            out.phi2[*cE] = {{ea, va}, {eb, vb}, {ex, y}};
            return out;
        }
        return std::nullopt;
    }

    // Ramification kind.
    {
        auto nbx = be.neighbours(x);
        if (nbx.size() != 1) return std::nullopt;
        const Id& u = nbx[0];
        Id v = h.phi_of(rA, u);
        std::optional<AmbientNode> cA, sE, cM;
        for (const auto& [t, mv] : A.f.at(rA))
            if (mv == u) cA = t;
        for (const auto& [t, mv] : E.f.at(rA))
            if (mv == u) sE = t;
        for (const auto& [t, mv] : M.f.at(at))
            if (mv == v) cM = t;
        if (!cA || !sE || !cM || !(*sE == *cA)) return std::nullopt;
        AmbientNode tA = h.tau_of(*cA);
        TreeOfBSets A2 = restrict_above(A, *cA);
        TreeOfBSets E2 = restrict_above(E, *cA);
        ArborealMorphism h2;
        h2.kind = MorphKind::strong;
        for (const auto& n : A2.nodes) {
            h2.tau[n] = h.tau.at(n);
            h2.phi[n] = h.phi.at(n);
        }
        auto sub = realize_go(M, tA, A2, E2, h2);
        if (!sub) return std::nullopt;
        TreeOfBSets W = std::move(sub->W);
        // Cascade the new class down from tA to `at`, one pendant at each
        // marked vertex along the way.
        std::vector<AmbientNode> chain_nodes{at};
        while (!(chain_nodes.back() == tA)) chain_nodes.push_back(up_step(M, chain_nodes.back(), tA));
        Id zAbove = sub->x;
        for (std::size_t i = chain_nodes.size() - 1; i-- > 0;) {
            const AmbientNode& p = chain_nodes[i];
            const AmbientNode& q = chain_nodes[i + 1];
            const Id& mark = W.f.at(p).at(q);
            Id z = pendant(W, p, mark);
            W.g[{p, q}][z] = zAbove;
            for (const auto& t : M.children(p))
                if (!(t == q)) W.g[{p, t}][z] = W.g.at({p, t}).at(mark);
            zAbove = z;
        }
        RealizeOut out{std::move(W), zAbove, std::move(sub->tau2), std::move(sub->phi2)};
        out.phi2[*cA][extension_point(A2, E2)] = sub->x;
        return out;
    }
}

// Realize the one-point extension E of A over the embedding h : A -> M.
// Returns the grown stage and a strong embedding of E extending h.
std::optional<std::pair<TreeOfBSets, ArborealMorphism>> realize(const TreeOfBSets& M,
                                                                const ArborealMorphism& h,
                                                                const TreeOfBSets& A,
                                                                const TreeOfBSets& E) {
    const AmbientNode rA = A.root();
    const AmbientNode tr = h.tau_of(rA);
    const AmbientNode rM = M.root();
    ExtKind kind = classify_extension(A, E);

    TreeOfBSets W;
    ArborealMorphism e;
    e.kind = MorphKind::strong;

    if (kind == ExtKind::star) {
        const AmbientNode sE = E.root();
        Id hub = extension_point(A, E);
        std::optional<AmbientNode> q;
        for (const auto& n : M.nodes)
            if (node_lt(n, tr) && n.colour() == sE.colour()) q = n;
        W = M;
        if (!q) {
            if (!(sE.colour() < rM.colour())) return std::nullopt;
            AmbientNode nq = ancestor_at(rM, sE.colour());
            BSet star;
            Id nhub = kFreshPrefix + "h";
            star.verts.insert(nhub);
            auto& g = W.g[{nq, rM}];
            int i = 0;
            for (const Id& v : M.bset(rM).verts) {
                Id leaf = kFreshPrefix + "l" + std::to_string(i++);
                star.verts.insert(leaf);
                star.edges.insert(mk_edge(nhub, leaf));
                g[leaf] = v;
            }
            W.nodes.insert(nq);
            W.bsets[nq] = star;
            W.f[nq][rM] = nhub;
            q = nq;
        }
        e.tau = h.tau;
        e.phi = h.phi;
        e.tau[sE] = *q;
        auto& p = e.phi[sE];
        p[hub] = W.f.at(*q).at(up_step(W, *q, tr));
        const auto& gE = E.g.at({sE, rA});
        for (const auto& [lv, a] : gE) {
            const Id& target = h.phi_of(rA, a);
            std::optional<Id> pick;
            for (const Id& w : W.bset(*q).verts) {
                auto img = g_composite(W, *q, tr, w);
                if (img && *img == target && (!pick || w < *pick)) pick = w;
            }
            if (!pick) return std::nullopt;
            p[lv] = *pick;
        }
    } else {
        auto sub = realize_go(M, tr, A, E, h);
        if (!sub) return std::nullopt;
        W = std::move(sub->W);
        std::vector<AmbientNode> chain_nodes{rM};
        while (!(chain_nodes.back() == tr)) chain_nodes.push_back(up_step(M, chain_nodes.back(), tr));
        Id zAbove = sub->x;
        for (std::size_t i = chain_nodes.size() - 1; i-- > 0;) {
            const AmbientNode& pn = chain_nodes[i];
            const AmbientNode& qn = chain_nodes[i + 1];
            const Id& mark = W.f.at(pn).at(qn);
            BSet b = W.bset(pn);
            Id z = fresh_in(b.verts);
            b.verts.insert(z);
            b.edges.insert(mk_edge(mark, z));
            W.bsets[pn] = b;
            W.g[{pn, qn}][z] = zAbove;
            for (const auto& t : M.children(pn))
                if (!(t == qn)) W.g[{pn, t}][z] = W.g.at({pn, t}).at(mark);
            zAbove = z;
        }
        e.tau = h.tau;
        e.phi = h.phi;
        for (const auto& [n, t] : sub->tau2) e.tau[n] = t;
        for (const auto& [n, mp] : sub->phi2)
            for (const auto& [a, b] : mp) e.phi[n][a] = b;
        e.phi[rA][extension_point(A, E)] = sub->x;
    }

    try {
        validate(W);
    } catch (const Error&) {
        return std::nullopt;
    }
    try {
        literal_inclusion(M, W);
    } catch (const Error&) {
        return std::nullopt;
    }
    std::string why;
    if (!check_morphism(E, W, e, &why)) return std::nullopt;
    return std::make_pair(std::move(W), std::move(e));
}

}  // namespace

// ---------------------------------------------------------------------------
// Deterministic chain construction.

ChainResult build_chain(const ColorChain& chain, int steps, std::uint64_t seed) {
    auto catalogue = enumerate_classes(chain, 2, 4);
    if (catalogue.empty()) fail(Err::internal, "empty class catalogue");
    std::vector<std::pair<TreeOfBSets, TreeOfBSets>> tasks;
    for (const auto& C : catalogue) {
        auto d = decompose_chain(C);
        if (d.size() >= 2) tasks.emplace_back(d[1], d[0]);
    }
    std::size_t offset = static_cast<std::size_t>(seed % catalogue.size());
    TreeOfBSets M = catalogue[offset];
    ChainResult out;

    auto restricts = [](const TreeOfBSets& A, const ArborealMorphism& e,
                        const ArborealMorphism& h) {
        for (const auto& s : A.nodes) {
            if (!(e.tau.at(s) == h.tau.at(s))) return false;
            for (const Id& v : A.bset(s).verts)
                if (e.phi.at(s).at(v) != h.phi.at(s).at(v)) return false;
        }
        return true;
    };

    out.tasks = tasks;

    for (int i = 1; i <= steps; ++i) {
        std::string status = "done";
        ChainStage stage;
        if (i % 2 == 1) {
            const TreeOfBSets& C =
                catalogue[(offset + static_cast<std::size_t>(i / 2)) % catalogue.size()];
            Amalgam2 je = joint_embed(M, C);
            M = std::move(je.W);
            stage.incl = std::move(je.j1);
        } else if (tasks.empty()) {
            status = "deferred";
        } else {
            std::size_t ti = (offset + static_cast<std::size_t>(i / 2 - 1)) % tasks.size();
            stage.task = static_cast<int>(ti);
            const auto& [TA, TE] = tasks[ti];
            auto hs = find_strong_embeddings(TA, M);
            if (hs.empty()) {
                status = "deferred";
            } else {
                auto es = find_strong_embeddings(TE, M);
                bool acted = false, all_covered = true;
                for (const auto& h : hs) {
                    bool covered = false;
                    for (const auto& e : es)
                        if (restricts(TA, e, h)) {
                            covered = true;
                            break;
                        }
                    if (covered) continue;
                    all_covered = false;
                    if (auto r = realize(M, h, TA, TE)) {
                        M = std::move(r->first);
                        stage.realized = std::move(r->second);
                        acted = true;
                        break;
                    }
                }
                if (!acted && !all_covered) status = "deferred";
            }
        }
        out.log.push_back("step " + std::to_string(i) + " task=" +
                          (i % 2 == 1 ? "joint" : "extend") + " status=" + status + " sizes=" +
                          std::to_string(M.nodes.size()) + "," +
                          std::to_string(M.bset(M.root()).verts.size()));
        stage.M = M;
        out.stages.push_back(std::move(stage));
    }
    out.M = std::move(M);
    return out;
}

// ---------------------------------------------------------------------------
// Derived C-relation at a root vertex.

DerivedC derive_c(const TreeOfBSets& A, const Id& p) {
    const AmbientNode r = A.root();
    A.bset(r).require(p);
    DerivedC out;
    for (const Id& v : A.bset(r).verts)
        if (v != p) out.c.domain.insert(v);

    std::vector<std::set<Id>> fam;
    for (const auto& t : A.nodes) {
        auto img = g_composite(A, r, t, p);
        if (!img) continue;
        for (auto& br : pre_branches(A, t, *img))
            if (!br.empty()) fam.push_back(std::move(br));
    }
    for (const auto& S : fam)
        for (const Id& y : S)
            for (const Id& z : S)
                for (const Id& x : out.c.domain)
                    if (!S.count(x)) out.c.triples.insert({x, y, z});

    for (std::size_t i = 0; i < fam.size() && !out.typical_pair; ++i)
        for (std::size_t j = i + 1; j < fam.size() && !out.typical_pair; ++j) {
            const auto& S1 = fam[i];
            const auto& S2 = fam[j];
            bool meet = false, s12 = true, s21 = true;
            for (const Id& v : S1) {
                if (S2.count(v)) meet = true;
                else s12 = false;
            }
            for (const Id& v : S2)
                if (!S1.count(v)) s21 = false;
            if (meet && !s12 && !s21) {
                out.typical_pair = true;
                std::string w = "{";
                for (const Id& v : S1) w += v + " ";
                w += "} vs {";
                for (const Id& v : S2) w += v + " ";
                w += "}";
                out.typical_witness = w;
            }
        }
    return out;
}

}  // namespace arbor
