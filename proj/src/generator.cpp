#include "arbor/generator.hpp"

#include <algorithm>

#include "arbor/amalgam.hpp"

namespace arbor {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random labeled tree on the given vertices via a Prüfer sequence.
BSet random_tree(std::vector<Id> ids, std::mt19937_64& rng) {
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t n = ids.size();
    BSet b;
    for (const Id& v : ids) b.verts.insert(v);
    if (n <= 1) return b;
    if (n == 2) {
        b.edges.insert(mk_edge(ids[0], ids[1]));
        return b;
    }
    std::vector<std::size_t> pruefer(n - 2);
    std::vector<std::size_t> deg(n, 1);
    for (auto& p : pruefer) {
        p = rng() % n;
        ++deg[p];
    }
    std::set<std::size_t> leaves;
    for (std::size_t i = 0; i < n; ++i)
        if (deg[i] == 1) leaves.insert(i);
    for (std::size_t p : pruefer) {
        std::size_t leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        b.edges.insert(mk_edge(ids[leaf], ids[p]));
        if (--deg[p] == 1) leaves.insert(p);
    }
    std::size_t a = *leaves.begin();
    b.edges.insert(mk_edge(ids[a], ids[*std::next(leaves.begin())]));
    return b;
}

Color bump_final(const Color& c, long long by) {
    Color out = c;
    out.parts.back() += by;
    return out;
}

// A colour strictly above c, if the chain has one reachable by a unit step.
std::optional<Color> colour_above(const ColorChain& chain, const Color& c) {
    Color cand = bump_final(c, 1);
    if (chain.valid_color(cand)) return cand;
    return std::nullopt;
}

void gen_node(TreeOfBSets& T, const AmbientNode& node, const std::vector<Id>& ids, int& budget,
              long long& branch_counter, std::mt19937_64& rng) {
    BSet b = random_tree(ids, rng);
    auto rams = ramification_points(b);
    if (static_cast<int>(rams.size()) > budget || !colour_above(T.chain, node.colour())) {
        // Not enough room for the mandatory children: fall back to a path.
        std::vector<Id> order(ids);
        std::shuffle(order.begin(), order.end(), rng);
        b = make_path(order);
        rams.clear();
    }
    T.nodes.insert(node);
    T.bsets[node] = b;
    for (const Id& u : rams) {
        --budget;
        Color cc = *colour_above(T.chain, node.colour());
        AmbientNode child = branch(node, cc, branch_counter++);
        auto brs = branches_at(b, u);
        std::vector<Id> cids;
        for (std::size_t i = 0; i < brs.size(); ++i) cids.push_back("v" + std::to_string(i));
        std::vector<Id> assign = cids;
        std::shuffle(assign.begin(), assign.end(), rng);
        T.f[node][child] = u;
        auto& g = T.g[{node, child}];
        for (std::size_t i = 0; i < brs.size(); ++i)
            for (const Id& v : brs[i]) g[v] = assign[i];
        gen_node(T, child, cids, budget, branch_counter, rng);
    }
}

Id fresh_vertex(const std::set<Id>& used) {
    for (int i = 1;; ++i) {
        Id cand = "x" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

}  // namespace

TreeOfBSets random_tob(const ColorChain& chain, GenParams p, std::mt19937_64& rng) {
    if (p.max_nodes < 1 || p.max_verts < 1) fail(Err::domain, "generator bounds must be positive");
    TreeOfBSets T;
    T.chain = chain;
    std::vector<Rat> parts;
    for (std::size_t i = 0; i < chain.arity(); ++i)
        parts.emplace_back(-(p.max_nodes + 1 + draw(rng, 0, p.colour_window - 1)));
    AmbientNode root{Color(parts), {}};
    int budget = p.max_nodes - 1;
    long long branch_counter = 0;
    int k = draw(rng, 1, p.max_verts);
    std::vector<Id> ids;
    for (int i = 0; i < k; ++i) ids.push_back("v" + std::to_string(i));
    gen_node(T, root, ids, budget, branch_counter, rng);
    validate(T);
    return T;
}

RandomExt random_extension(const TreeOfBSets& A, std::mt19937_64& rng) {
    const AmbientNode r = A.root();
    const BSet& rb = A.bset(r);
    std::vector<Id> leaf_sites, dy_sites, ram_sites;
    for (const Id& v : rb.verts) {
        std::size_t d = rb.degree(v);
        if (d <= 1) leaf_sites.push_back(v);
        else if (d == 2) dy_sites.push_back(v);
        else ram_sites.push_back(v);
    }
    std::vector<Edge> edges(rb.edges.begin(), rb.edges.end());
    bool colour_room = colour_above(A.chain, r.colour()).has_value();

    enum Kind { kStar, kLeaf, kDyadic, kTernary, kRam };
    std::vector<Kind> kinds{kLeaf};
    if (rb.verts.size() >= 3) kinds.push_back(kStar);  // the hub must ramify
    if (!edges.empty()) kinds.push_back(kDyadic);
    if (!dy_sites.empty() && colour_room) kinds.push_back(kTernary);
    if (!ram_sites.empty()) kinds.push_back(kRam);
    Kind kind = kinds[rng() % kinds.size()];

    TreeOfBSets E = A;
    Id e;
    switch (kind) {
        case kStar: {
            Color c = bump_final(r.colour(), -1);
            A.chain.require_color(c);
            AmbientNode s0 = ancestor_at(r, c);
            Id hub = "h";
            BSet star;
            star.verts.insert(hub);
            auto& g = E.g[{s0, r}];
            int i = 0;
            for (const Id& v : rb.verts) {
                Id leaf = "l" + std::to_string(i++);
                star.verts.insert(leaf);
                star.edges.insert(mk_edge(hub, leaf));
                g[leaf] = v;
            }
            E.nodes.insert(s0);
            E.bsets[s0] = star;
            E.f[s0][r] = hub;
            e = hub;
            break;
        }
        case kLeaf: {
            Id u = leaf_sites[rng() % leaf_sites.size()];
            Id x = fresh_vertex(rb.verts);
            BSet b = rb;
            b.verts.insert(x);
            if (b.verts.size() > 1) b.edges.insert(mk_edge(u, x));
            E.bsets[r] = b;
            for (const auto& t : A.children(r)) E.g[{r, t}][x] = A.g.at({r, t}).at(u);
            e = x;
            break;
        }
        case kDyadic: {
            Edge ed = edges[rng() % edges.size()];
            Id x = fresh_vertex(rb.verts);
            BSet b = rb;
            b.verts.insert(x);
            b.edges.erase(ed);
            b.edges.insert(mk_edge(ed.first, x));
            b.edges.insert(mk_edge(x, ed.second));
            E.bsets[r] = b;
            for (const auto& t : A.children(r)) {
                const Id& mark = A.f.at(r).at(t);
                Id n = ed.first == mark ? ed.second : ed.first;
                E.g[{r, t}][x] = A.g.at({r, t}).at(n);
            }
            e = x;
            break;
        }
        case kTernary: {
            Id u = dy_sites[rng() % dy_sites.size()];
            Id x = fresh_vertex(rb.verts);
            auto nb = rb.neighbours(u);
            std::sort(nb.begin(), nb.end());
            Color cc = *colour_above(A.chain, r.colour());
            long long idx = 0;
            for (const auto& n : A.nodes) idx = std::max(idx, max_branch_index(n) + 1);
            AmbientNode t = branch(r, cc, idx);
            BSet b = rb;
            b.verts.insert(x);
            b.edges.insert(mk_edge(u, x));
            E.bsets[r] = b;
            int pos = static_cast<int>(rng() % 3);
            std::vector<Id> seq = pos == 0   ? std::vector<Id>{"X", "A", "B"}
                                  : pos == 1 ? std::vector<Id>{"A", "X", "B"}
                                             : std::vector<Id>{"A", "B", "X"};
            E.nodes.insert(t);
            E.bsets[t] = make_path(seq);
            E.f[r][t] = u;
            auto& g = E.g[{r, t}];
            for (const Id& v : rb.verts)
                if (v != u) g[v] = rb.between(nb[0], v, u) ? "A" : "B";
            g[x] = "X";
            for (const auto& tc : A.children(r)) E.g[{r, tc}][x] = A.g.at({r, tc}).at(u);
            e = x;
            break;
        }
        case kRam: {
            Id u = ram_sites[rng() % ram_sites.size()];
            std::optional<AmbientNode> s;
            for (const auto& [t, mv] : A.f.at(r))
                if (mv == u) s = t;
            if (!s) fail(Err::internal, "ramification point without child");
            Id x = fresh_vertex(rb.verts);
            BSet b = rb;
            b.verts.insert(x);
            b.edges.insert(mk_edge(u, x));
            E.bsets[r] = b;
            const BSet& bs = A.bset(*s);
            std::set<Id> lv = leaves(bs);
            std::vector<Id> ls(lv.begin(), lv.end());
            if (ls.empty()) fail(Err::internal, "child B-set without leaves");
            Id w = ls[rng() % ls.size()];
            Id y = fresh_vertex(bs.verts);
            BSet b2 = bs;
            b2.verts.insert(y);
            b2.edges.insert(mk_edge(w, y));
            E.bsets[*s] = b2;
            E.g[{r, *s}][x] = y;
            for (const auto& tc : A.children(*s)) E.g[{*s, tc}][y] = A.g.at({*s, tc}).at(w);
            for (const auto& tc : A.children(r))
                if (!(tc == *s)) E.g[{r, tc}][x] = A.g.at({r, tc}).at(u);
            e = x;
            break;
        }
    }
    validate(E);
    literal_inclusion(A, E);
    return RandomExt{std::move(E), std::move(e)};
}

}  // namespace arbor
