#pragma once

// Arboreal morphisms between trees of B-sets: a map of node trees plus a
// vertex map at every node, coherent with the f markers and the g maps.
// Includes the correspondence with relation-level isomorphisms of the derived
// relation L, and automorphism/orbit computation.

#include <map>
#include <vector>

#include "arbor/forest.hpp"

namespace arbor {

enum class MorphKind {
    iso,           // order-iso of node trees, bijective on every B-set
    internal_iso,  // iso whose node map also preserves colours and ambient meets
    strong,        // embedding: strong B-set substructures, colours/order/meets kept
};

struct ArborealMorphism {
    MorphKind kind = MorphKind::iso;
    std::map<AmbientNode, AmbientNode> tau;          // node map
    std::map<AmbientNode, std::map<Id, Id>> phi;     // per-node vertex maps

    const AmbientNode& tau_of(const AmbientNode& s) const;
    const Id& phi_of(const AmbientNode& s, const Id& v) const;
};

// Verify all coherence conditions of the given kind from A to B. Returns
// false with a reason instead of throwing. For strong embeddings the f and g
// conditions are read through composites, so the image may skip over
// intermediate nodes of B.
bool check_morphism(const TreeOfBSets& A, const TreeOfBSets& B, const ArborealMorphism& m,
                    std::string* why = nullptr);

// Composition: first apply m1 (A -> B), then m2 (B -> C).
ArborealMorphism compose(const ArborealMorphism& m1, const ArborealMorphism& m2);

// The root-level map induced by an arboreal morphism, resolving fiber choices
// to the lexicographically least member. Preserves and reflects L.
std::map<Id, Id> induced_l_map(const TreeOfBSets& A, const TreeOfBSets& B,
                               const ArborealMorphism& m);

// Lift a bijection of root B-sets that transports L(A) onto L(B) to an
// arboreal isomorphism; nullopt if psi is not an L-isomorphism.
std::optional<ArborealMorphism> l_iso_to_arboreal(const TreeOfBSets& A, const TreeOfBSets& B,
                                                  const std::map<Id, Id>& psi);

// All arboreal automorphisms of A, as root-vertex permutations (each is the
// induced map of exactly one automorphism). Intended for small root B-sets.
std::vector<std::map<Id, Id>> automorphisms(const TreeOfBSets& A);

// Orbits of the automorphism group on ordered distinct triples of root
// vertices, and the union of those orbits that are symmetric in the last two
// coordinates (i.e. closed under swapping them).
std::vector<std::set<std::array<Id, 3>>> triple_orbits(const TreeOfBSets& A);
std::set<std::array<Id, 3>> symmetric_orbit_union(const TreeOfBSets& A);

}  // namespace arbor
