#pragma once

// Finite positive-type B-sets stored as free trees; the ternary relation is
// always derived from paths. Also: validators for arbitrary ternary relations
// against the B- and C-axioms, and the tree <-> relation duality.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arbor/base.hpp"

namespace arbor {

using Id = std::string;
using Edge = std::pair<Id, Id>;  // stored with first < second

inline Edge mk_edge(Id a, Id b) {
    if (a == b) fail(Err::domain, "self-loop edge " + a);
    return a < b ? Edge{a, b} : Edge{b, a};
}

struct BSet {
    std::set<Id> verts;
    std::set<Edge> edges;

    bool has(const Id& v) const { return verts.count(v) != 0; }
    void require(const Id& v) const;
    std::size_t size() const { return verts.size(); }

    bool adjacent(const Id& a, const Id& b) const { return edges.count(mk_edge(a, b)) != 0; }
    std::vector<Id> neighbours(const Id& v) const;
    std::size_t degree(const Id& v) const { return neighbours(v).size(); }

    // Connected acyclic on >= 1 vertices, all edge endpoints present.
    bool is_tree(std::string* why = nullptr) const;

    // Unique path between two vertices, endpoints included.
    std::vector<Id> path(const Id& y, const Id& z) const;

    // Derived relation: x lies on the unique y-z path. Empty for |V| = 1.
    bool between(const Id& x, const Id& y, const Id& z) const;

    bool operator==(const BSet& o) const { return verts == o.verts && edges == o.edges; }
    bool operator!=(const BSet& o) const { return !(*this == o); }
};

BSet make_path(const std::vector<Id>& vs);
BSet make_star(const Id& centre, const std::vector<Id>& leaves);

struct TernaryRelation {
    std::set<Id> domain;
    std::set<std::array<Id, 3>> triples;

    bool holds(const Id& x, const Id& y, const Id& z) const {
        return triples.count({x, y, z}) != 0;
    }
};

// Full derived relation of a tree (reflexive clauses included, per the path
// definition); for |V| = 1 the relation is empty.
TernaryRelation derived_relation(const BSet& b);

struct AxiomItem {
    bool pass = true;
    std::string witness;  // offending triple/tuple, empty when pass
};

struct BAxiomReport {
    AxiomItem b1, b2, b3, b4, b5;
    AxiomItem linear_total;  // the linear-betweenness totality clause (informative)
    bool all_b() const { return b1.pass && b2.pass && b3.pass && b4.pass && b5.pass; }
};

struct CAxiomReport {
    AxiomItem c1, c2, c3, c4;
    bool all_c() const { return c1.pass && c2.pass && c3.pass && c4.pass; }
};

// Exhaustive checks; B4 and B5 are reported independently (no implication is
// assumed between them).
BAxiomReport validate_b_axioms(const TernaryRelation& r);
CAxiomReport validate_c_axioms(const TernaryRelation& r);

// Adjacency rule: two points are adjacent iff no point of their complement is
// between them. Requires positive type; errors if the result is not a tree or
// fails to reproduce the relation.
BSet relation_to_tree(const TernaryRelation& r);

struct CentroidResult {
    bool linear = false;  // one of the three lies between the other two
    Id vertex;            // the centroid, or the middle vertex when linear
};

CentroidResult centroid(const BSet& b, const Id& x, const Id& y, const Id& z);

// Connected components of b minus v, keyed by v's neighbour they contain.
std::vector<std::set<Id>> branches_at(const BSet& b, const Id& v);

std::set<Id> ramification_points(const BSet& b);  // degree >= 3
std::set<Id> leaves(const BSet& b);               // degree == 1
std::set<Id> dyadic(const BSet& b);               // degree == 2
bool is_linear(const BSet& b);                    // no ramification points

// Restriction of b2's betweenness to b1's vertex set equals b1's betweenness.
bool is_strong_sub(const BSet& b1, const BSet& b2);

// The free tree induced by a tree's betweenness on a subset of its vertices
// (the restriction of a positive-type relation to any subset is positive).
BSet induced_bset(const BSet& b, const std::set<Id>& subset);

}  // namespace arbor
