#pragma once

// The ambient coloured tree T_C, encoded by finite branching sequences
// (c0, (c1,n1), ..., (ck,nk)) with strictly increasing colours. The infinite
// tree is never materialized; all operations act on explicit nodes.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbor/chain.hpp"

namespace arbor {

struct AmbientNode {
    Color head;                                       // c0
    std::vector<std::pair<Color, long long>> tail;    // (ci, ni), i >= 1

    const Color& colour() const { return tail.empty() ? head : tail.back().first; }

    bool operator==(const AmbientNode& o) const { return head == o.head && tail == o.tail; }
    bool operator!=(const AmbientNode& o) const { return !(*this == o); }
    // Structural key order (for use as a map key; unrelated to the tree order).
    bool operator<(const AmbientNode& o) const;

    // Strictly increasing colour entries; colours members of the chain.
    bool well_formed(const ColorChain& chain) const;
};

std::string format_node(const AmbientNode& n);  // "c0 | (c1,n1) (c2,n2)"
AmbientNode parse_node(const std::string& s);

// The ambient tree order: a <= b iff a = b, or k <= l, branch indices
// agree up to k, colours agree strictly before position k, and ck <= dk.
bool node_leq(const AmbientNode& a, const AmbientNode& b);
inline bool node_lt(const AmbientNode& a, const AmbientNode& b) {
    return !(a == b) && node_leq(a, b);
}

// Greatest lower bound; always exists (T_C is a meet semilattice).
AmbientNode node_meet(const AmbientNode& a, const AmbientNode& b);

// Successor constructions. raise keeps the chain and lifts the final colour;
// branch starts a fresh side chain at colour c with index n. Both require
// c > colour(a).
AmbientNode raise(const AmbientNode& a, const Color& c);
AmbientNode branch(const AmbientNode& a, const Color& c, long long n);

// The unique point strictly below a at colour c (requires c < colour(a)).
AmbientNode ancestor_at(const AmbientNode& a, const Color& c);

bool is_meet_closed(const std::set<AmbientNode>& nodes);

// Largest branch index appearing anywhere in the node (0 if none).
long long max_branch_index(const AmbientNode& n);

}  // namespace arbor
