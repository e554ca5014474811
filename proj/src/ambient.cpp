#include "arbor/ambient.hpp"

#include <algorithm>
#include <sstream>

namespace arbor {

namespace {

// Colour at entry position i (0 = head, i >= 1 = tail[i-1]).
const Color& colour_at(const AmbientNode& n, std::size_t i) {
    return i == 0 ? n.head : n.tail[i - 1].first;
}

}  // namespace

bool AmbientNode::operator<(const AmbientNode& o) const {
    if (head != o.head) return head < o.head;
    return tail < o.tail;
}

bool AmbientNode::well_formed(const ColorChain& chain) const {
    if (!chain.valid_color(head)) return false;
    const Color* prev = &head;
    for (const auto& [c, n] : tail) {
        if (!chain.valid_color(c)) return false;
        if (!(*prev < c)) return false;
        if (n < 0) return false;
        prev = &c;
    }
    return true;
}

std::string format_node(const AmbientNode& n) {
    std::string out = format_color(n.head);
    if (!n.tail.empty()) {
        out += " |";
        for (const auto& [c, idx] : n.tail)
            out += " (" + format_color(c) + "," + std::to_string(idx) + ")";
    }
    return out;
}

AmbientNode parse_node(const std::string& s) {
    AmbientNode n;
    std::size_t bar = s.find('|');
    auto trim = [](std::string t) {
        std::size_t b = t.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        std::size_t e = t.find_last_not_of(" \t");
        return t.substr(b, e - b + 1);
    };
    std::string headpart = trim(bar == std::string::npos ? s : s.substr(0, bar));
    if (headpart.empty()) fail(Err::parse, "empty node");
    n.head = parse_color(headpart);
    if (bar == std::string::npos) return n;
    std::string rest = s.substr(bar + 1);
    std::size_t pos = 0;
    while (true) {
        std::size_t open = rest.find('(', pos);
        if (open == std::string::npos) {
            if (trim(rest.substr(pos)).empty()) break;
            fail(Err::parse, "bad node tail '" + rest + "'");
        }
        std::size_t comma = rest.find(',', open);
        std::size_t close = rest.find(')', open);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            fail(Err::parse, "bad node entry in '" + rest + "'");
        Color c = parse_color(trim(rest.substr(open + 1, comma - open - 1)));
        std::string idx = trim(rest.substr(comma + 1, close - comma - 1));
        long long ni = 0;
        try {
            ni = std::stoll(idx);
        } catch (const std::exception&) {
            fail(Err::parse, "bad branch index '" + idx + "'");
        }
        n.tail.emplace_back(c, ni);
        pos = close + 1;
    }
    if (n.tail.empty()) fail(Err::parse, "node has '|' but no entries");
    return n;
}

bool node_leq(const AmbientNode& a, const AmbientNode& b) {
    if (a == b) return true;
    std::size_t k = a.tail.size();
    if (k > b.tail.size()) return false;
    for (std::size_t i = 0; i < k; ++i)
        if (a.tail[i].second != b.tail[i].second) return false;
    for (std::size_t i = 0; i < k; ++i)
        if (colour_at(a, i) != colour_at(b, i)) return false;
    return colour_at(a, k) <= colour_at(b, k);
}

AmbientNode node_meet(const AmbientNode& a, const AmbientNode& b) {
    // Longest run of identical leading entries (entry 0 = head).
    std::size_t la = a.tail.size() + 1, lb = b.tail.size() + 1;
    std::size_t p = 0;
    while (p < la && p < lb) {
        if (p == 0) {
            if (a.head != b.head) break;
        } else if (a.tail[p - 1] != b.tail[p - 1]) {
            break;
        }
        ++p;
    }
    if (p == la) return a;  // a is a full prefix of b
    if (p == lb) return b;
    AmbientNode m;
    if (p == 0) {
        m.head = std::min(a.head, b.head);
        return m;
    }
    m.head = a.head;
    m.tail.assign(a.tail.begin(), a.tail.begin() + (p - 1));
    const auto& ea = a.tail[p - 1];
    const auto& eb = b.tail[p - 1];
    if (ea.second == eb.second) m.tail.emplace_back(std::min(ea.first, eb.first), ea.second);
    return m;
}

AmbientNode raise(const AmbientNode& a, const Color& c) {
    if (!(a.colour() < c)) fail(Err::domain, "raise target colour not above " + format_node(a));
    AmbientNode r = a;
    if (r.tail.empty())
        r.head = c;
    else
        r.tail.back().first = c;
    return r;
}

AmbientNode branch(const AmbientNode& a, const Color& c, long long n) {
    if (!(a.colour() < c)) fail(Err::domain, "branch colour not above " + format_node(a));
    AmbientNode r = a;
    r.tail.emplace_back(c, n);
    return r;
}

AmbientNode ancestor_at(const AmbientNode& a, const Color& c) {
    if (!(c < a.colour())) fail(Err::domain, "ancestor_at colour not below " + format_node(a));
    AmbientNode cur = a;
    while (!cur.tail.empty()) {
        // Colours strictly between the previous entry and the last entry stay
        // on the last side chain; anything lower drops the chain entirely.
        const Color& prev = cur.tail.size() == 1 ? cur.head : cur.tail[cur.tail.size() - 2].first;
        if (prev < c) {
            cur.tail.back().first = c;
            return cur;
        }
        cur.tail.pop_back();
        if (c == cur.colour()) return cur;
    }
    cur.head = c;
    return cur;
}

bool is_meet_closed(const std::set<AmbientNode>& nodes) {
    for (const auto& a : nodes)
        for (const auto& b : nodes)
            if (nodes.count(node_meet(a, b)) == 0) return false;
    return true;
}

long long max_branch_index(const AmbientNode& n) {
    long long m = 0;
    for (const auto& [c, idx] : n.tail) m = std::max(m, idx);
    return m;
}

}  // namespace arbor
