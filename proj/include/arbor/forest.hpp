#pragma once

// Trees of B-sets: a finite meet-closed coloured subtree of the ambient tree,
// a positive-type B-set at each node, child markers f and downward surjections
// g. Plus the derived relation L over the root B-set and the witness search.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arbor/ambient.hpp"
#include "arbor/bset.hpp"

namespace arbor {

struct TreeOfBSets {
    ColorChain chain;
    // Node set; must be non-empty and meet-closed, so it has a least element
    // (the root). Keys of all maps below range over this set.
    std::set<AmbientNode> nodes;
    std::map<AmbientNode, BSet> bsets;
    // f[s][t] = the ramification point of B(s) marked by child t.
    std::map<AmbientNode, std::map<AmbientNode, Id>> f;
    // g[{s,t}] (t a child of s): vertex map B(s) \ {f[s][t]} -> B(t).
    std::map<std::pair<AmbientNode, AmbientNode>, std::map<Id, Id>> g;

    const AmbientNode& root() const;
    const BSet& bset(const AmbientNode& t) const;
    std::vector<AmbientNode> children(const AmbientNode& s) const;
    std::optional<AmbientNode> parent(const AmbientNode& t) const;
    bool has_node(const AmbientNode& t) const { return nodes.count(t) != 0; }

    bool operator==(const TreeOfBSets& o) const;
};

// Full structural validation: chain membership, meet closure, tree-order
// coherence of the node set, positive type of every B-set, leaves linear,
// f a bijection onto ramification points, each g constant on branches at the
// marked point and inducing a branch<->vertex bijection, and composite maps
// along chains consistent (g_su = g_tu o g_st).
void validate(const TreeOfBSets& A);

// Composite map from the root (or any ancestor s) down to t. Partial: defined
// on B(s) minus the union of fibers of intermediate marked points. Returns the
// image, or nullopt where undefined.
std::optional<Id> g_composite(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t,
                              const Id& a);

// [a]_t: the fiber of a's image under the root-to-t composite, as a subset of
// the root B-set. Empty set when a does not reach t.
std::set<Id> class_of(const TreeOfBSets& A, const AmbientNode& t, const Id& a);

// The subtree above s (s becomes the root), with structure restricted.
TreeOfBSets restrict_above(const TreeOfBSets& A, const AmbientNode& s);

struct LSet {
    std::set<Id> domain;
    std::set<std::array<Id, 3>> triples;

    bool holds(const Id& x, const Id& y, const Id& z) const {
        return triples.count({x, y, z}) != 0;
    }
    TernaryRelation as_relation() const { return TernaryRelation{domain, triples}; }
};

// The derived relation L on the root B-set: L(a;b,c) iff at some node the
// classes of a, b, c are defined, pairwise distinct, and the node's B-set
// relates their images.
LSet compute_l(const TreeOfBSets& A);

// The unique node witnessing L(a;b,c), found by centroid ascent. Requires the
// triple to be L-related in this orientation.
AmbientNode witness_node(const TreeOfBSets& A, const Id& a, const Id& b, const Id& c);

// Pre-structure on the root B-set induced by an inner node.
std::set<Id> pre_set(const TreeOfBSets& A, const AmbientNode& t);          // S_t
std::vector<std::set<Id>> class_partition(const TreeOfBSets& A, const AmbientNode& t);
// Pre-branches at t: preimages of the branches of B(t) at a given vertex.
std::vector<std::set<Id>> pre_branches(const TreeOfBSets& A, const AmbientNode& t, const Id& at);

}  // namespace arbor
