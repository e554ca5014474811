#pragma once

// One-point extensions, their classification, decomposition of strong
// extensions into one-point chains, two-sided amalgamation over a common
// strong substructure, and joint embedding.
//
// Throughout, extensions are taken literally: A must be a strong substructure
// of each extension with identical node and vertex names (use rebase to bring
// an arbitrary strong embedding into this form).

#include <optional>
#include <vector>

#include "arbor/forest.hpp"
#include "arbor/morphism.hpp"

namespace arbor {

enum class ExtKind { star, leaf, dyadic, ternary, ramification };

const char* ext_kind_name(ExtKind k);

// E extends A by a single root vertex. Star: E's root lies strictly below
// A's. Otherwise roots coincide and the kind is read off from the new
// vertex's induced position in the root B-set.
ExtKind classify_extension(const TreeOfBSets& A, const TreeOfBSets& E);

// The extra root vertex of a one-point extension (the star hub, or the one
// root vertex outside A).
Id extension_point(const TreeOfBSets& A, const TreeOfBSets& E);

// The identity morphism of A into a literal superstructure W; errors if the
// inclusion is not a strong embedding.
ArborealMorphism literal_inclusion(const TreeOfBSets& A, const TreeOfBSets& W);

// Amalgamate two one-point extensions of A into a common extension W with
// strong embeddings m1 : E1 -> W and m2 : E2 -> W restricting to the
// identity on A.
struct Amalgam {
    TreeOfBSets W;
    ArborealMorphism m1, m2;
};

Amalgam amalgamate_one_point(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2);

// One step up a decomposition chain: a one-point extension of A inside E
// (A a literal strong substructure of E, A != E). The result is again a
// literal strong substructure of E.
TreeOfBSets extend_step(const TreeOfBSets& A, const TreeOfBSets& E);

// Full chain E = C_n > ... > C_1 > C_0, each a one-point extension of the
// next, C_0 a single node carrying a single vertex. Largest first.
std::vector<TreeOfBSets> decompose_chain(const TreeOfBSets& E);

// General amalgamation over a strong common substructure: A must be a literal
// strong substructure of both E1 and E2. Produces W with strong embeddings
// j1, j2 that agree on A.
struct Amalgam2 {
    TreeOfBSets W;
    ArborealMorphism j1, j2;
};

Amalgam2 amalgamate(const TreeOfBSets& A, const TreeOfBSets& E1, const TreeOfBSets& E2);

// Joint embedding: a single structure strongly embedding both arguments,
// built over a root colour below both existing roots.
Amalgam2 joint_embed(const TreeOfBSets& A1, const TreeOfBSets& A2);

// Rewrite E so that emb : A -> E becomes a literal inclusion: image nodes and
// vertices take A's names, everything else is renamed fresh (branch indices
// starting at fresh_index). Returns the rewritten E, the updated embedding
// (now an inclusion), and the internal isomorphism from E to the rewrite.
struct Rebased {
    TreeOfBSets E;
    ArborealMorphism inclusion;  // A -> rewritten E
    ArborealMorphism iso;        // original E -> rewritten E
};

Rebased rebase(const TreeOfBSets& A, const TreeOfBSets& E, const ArborealMorphism& emb);

}  // namespace arbor
