#include "arbor/io.hpp"

#include <algorithm>
#include <sstream>

namespace arbor {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize_tob(const TreeOfBSets& A) {
    std::ostringstream out;
    out << "TOB v1 chain=" << A.chain.token() << "\n";
    for (const auto& n : A.nodes) {
        out << "node " << format_node(n) << "\n";
        const BSet& b = A.bset(n);
        out << "vertices";
        for (const Id& v : b.verts) out << " " << v;
        out << "\n";
        out << "edges";
        for (const auto& [v, w] : b.edges) out << " " << v << "-" << w;
        out << "\n";
        for (const auto& t : A.children(n)) {
            out << "f " << format_node(t) << " -> " << A.f.at(n).at(t) << "\n";
            out << "g " << format_node(t) << ":";
            for (const auto& [v, w] : A.g.at({n, t})) out << " " << v << "->" << w;
            out << "\n";
        }
    }
    return out.str();
}

TreeOfBSets parse_tob(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(Err::parse, "empty input");
    line = strip(line);
    const std::string hdr = "TOB v1 chain=";
    if (line.rfind(hdr, 0) != 0) fail(Err::parse, "bad TOB header '" + line + "'");
    TreeOfBSets A;
    A.chain = ColorChain::from_token(line.substr(hdr.size()));

    struct PendingEdge {
        AmbientNode parent, child;
        Id fvert;
        std::map<Id, Id> gmap;
        bool have_g = false;
    };
    std::optional<AmbientNode> cur;
    bool have_verts = false, have_edges = false;
    std::vector<PendingEdge> pend;

    auto check_id = [](const Id& v) {
        if (!valid_id(v)) fail(Err::parse, "bad id '" + v + "'");
    };

    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        std::size_t sp = line.find(' ');
        std::string key = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : strip(line.substr(sp + 1));
        if (key == "node") {
            AmbientNode n = parse_node(rest);
            if (!A.nodes.insert(n).second) fail(Err::parse, "duplicate node " + rest);
            cur = n;
            have_verts = have_edges = false;
        } else if (key == "vertices") {
            if (!cur || have_verts) fail(Err::parse, "stray vertices line");
            BSet& b = A.bsets[*cur];
            for (const auto& v : split_ws(rest)) {
                check_id(v);
                if (!b.verts.insert(v).second) fail(Err::parse, "duplicate vertex '" + v + "'");
            }
            have_verts = true;
        } else if (key == "edges") {
            if (!cur || !have_verts || have_edges) fail(Err::parse, "stray edges line");
            BSet& b = A.bsets[*cur];
            for (const auto& e : split_ws(rest)) {
                std::size_t dash = e.find('-');
                if (dash == std::string::npos) fail(Err::parse, "bad edge '" + e + "'");
                Id v = e.substr(0, dash), w = e.substr(dash + 1);
                check_id(v);
                check_id(w);
                if (!b.edges.insert(mk_edge(v, w)).second)
                    fail(Err::parse, "duplicate edge '" + e + "'");
            }
            have_edges = true;
        } else if (key == "f") {
            if (!cur) fail(Err::parse, "stray f line");
            std::size_t arrow = rest.rfind(" -> ");
            if (arrow == std::string::npos) fail(Err::parse, "bad f line '" + line + "'");
            PendingEdge pe;
            pe.parent = *cur;
            pe.child = parse_node(strip(rest.substr(0, arrow)));
            pe.fvert = strip(rest.substr(arrow + 4));
            check_id(pe.fvert);
            pend.push_back(std::move(pe));
        } else if (key == "g") {
            if (!cur) fail(Err::parse, "stray g line");
            std::size_t colon = rest.find(':');
            if (colon == std::string::npos) fail(Err::parse, "bad g line '" + line + "'");
            AmbientNode child = parse_node(strip(rest.substr(0, colon)));
            PendingEdge* pe = nullptr;
            for (auto& p : pend)
                if (p.parent == *cur && p.child == child && !p.have_g) pe = &p;
            if (!pe) fail(Err::parse, "g line without matching f line");
            for (const auto& m : split_ws(rest.substr(colon + 1))) {
                std::size_t ar = m.find("->");
                if (ar == std::string::npos) fail(Err::parse, "bad g entry '" + m + "'");
                Id v = m.substr(0, ar), w = m.substr(ar + 2);
                check_id(v);
                check_id(w);
                if (!pe->gmap.emplace(v, w).second)
                    fail(Err::parse, "duplicate g entry for '" + v + "'");
            }
            pe->have_g = true;
        } else {
            fail(Err::parse, "unknown line '" + line + "'");
        }
    }
    for (const auto& n : A.nodes)
        if (A.bsets.find(n) == A.bsets.end())
            fail(Err::parse, "node " + format_node(n) + " has no vertices line");
    for (auto& pe : pend) {
        if (!pe.have_g) fail(Err::parse, "f line without g line");
        if (!A.nodes.count(pe.child))
            fail(Err::parse, "edge to unknown node " + format_node(pe.child));
        if (!A.f[pe.parent].emplace(pe.child, pe.fvert).second)
            fail(Err::parse, "duplicate f line");
        A.g[{pe.parent, pe.child}] = std::move(pe.gmap);
    }
    return A;
}

std::string serialize_lset(const LSet& l) {
    std::ostringstream out;
    out << "LSET v1\n";
    out << "domain";
    for (const Id& v : l.domain) out << " " << v;
    out << "\n";
    for (const auto& t : l.triples) out << "L " << t[0] << " " << t[1] << " " << t[2] << "\n";
    return out.str();
}

LSet parse_lset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || strip(line) != "LSET v1")
        fail(Err::parse, "bad LSET header");
    LSet l;
    bool have_domain = false;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        auto toks = split_ws(line);
        if (toks[0] == "domain") {
            if (have_domain) fail(Err::parse, "duplicate domain line");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!valid_id(toks[i])) fail(Err::parse, "bad id '" + toks[i] + "'");
                if (!l.domain.insert(toks[i]).second)
                    fail(Err::parse, "duplicate domain id '" + toks[i] + "'");
            }
            have_domain = true;
        } else if (toks[0] == "L") {
            if (!have_domain || toks.size() != 4) fail(Err::parse, "bad L line '" + line + "'");
            for (std::size_t i = 1; i < 4; ++i)
                if (!l.domain.count(toks[i]))
                    fail(Err::parse, "L id outside domain: '" + toks[i] + "'");
            if (!l.triples.insert({toks[1], toks[2], toks[3]}).second)
                fail(Err::parse, "duplicate L line '" + line + "'");
        } else {
            fail(Err::parse, "unknown line '" + line + "'");
        }
    }
    if (!have_domain) fail(Err::parse, "missing domain line");
    return l;
}

std::string export_dot(const TreeOfBSets& A) {
    std::ostringstream out;
    out << "digraph tob {\n";
    out << "  compound=true;\n  node [shape=circle fontsize=10];\n";
    int idx = 0;
    std::map<AmbientNode, int> nidx;
    for (const auto& n : A.nodes) nidx[n] = idx++;
    auto vname = [&](const AmbientNode& n, const Id& v) {
        return "n" + std::to_string(nidx.at(n)) + "_" + std::to_string(
                   static_cast<long long>(std::distance(A.bset(n).verts.begin(),
                                                        A.bset(n).verts.find(v))));
    };
    for (const auto& n : A.nodes) {
        out << "  subgraph cluster" << nidx[n] << " {\n";
        out << "    label=\"" << format_node(n) << "\";\n";
        const BSet& b = A.bset(n);
        for (const Id& v : b.verts)
            out << "    " << vname(n, v) << " [label=\"" << v << "\"];\n";
        for (const auto& [v, w] : b.edges)
            out << "    " << vname(n, v) << " -> " << vname(n, w) << " [dir=none];\n";
        out << "  }\n";
    }
    for (const auto& [s, fm] : A.f)
        for (const auto& [t, v] : fm)
            out << "  " << vname(s, v) << " -> " << vname(t, *A.bset(t).verts.begin())
                << " [style=dashed lhead=cluster" << nidx[t] << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace arbor
