#pragma once

// Canonical forms, isomorphism testing, exhaustive enumeration of small
// isomorphism classes, strong-embedding search, the extension property, and
// the deterministic generic chain construction.

#include <cstdint>
#include <string>
#include <vector>

#include "arbor/amalgam.hpp"

namespace arbor {

// Deterministic canonical serialization: minimal TOB text over all relabelings
// by internal isomorphisms (canonical node placement in the ambient tree plus
// canonical vertex names). Two structures are isomorphic iff their canonical
// forms are byte-identical.
std::string canonical_form(const TreeOfBSets& A);

bool are_isomorphic(const TreeOfBSets& A, const TreeOfBSets& B);

// All isomorphism classes with at most max_nodes nodes and at most max_root
// root-B-set vertices, colours drawn from a fixed window of the chain.
// Returns one canonical representative per class, sorted by canonical form.
std::vector<TreeOfBSets> enumerate_classes(const ColorChain& chain, int max_nodes, int max_root);

// All strong embeddings of A into E (as morphisms), up to none when A does
// not strongly embed. Intended for small structures.
std::vector<ArborealMorphism> find_strong_embeddings(const TreeOfBSets& A, const TreeOfBSets& E);

// Extension property check: every strong embedding A -> M with a one-point
// strong extension A -> E extends to E -> M. Used by tests on finite stages.
bool check_extension_property(const TreeOfBSets& M, const TreeOfBSets& A, const TreeOfBSets& E,
                              std::string* why = nullptr);

// Deterministic generic chain: alternate joint-embedding the enumerated small
// classes (cyclically) with closing off listed strong-embedding extension
// tasks by amalgamation; tasks whose source does not yet embed are deferred.
// Appends one log line per step:
//   step <i> task=<joint|extend> status=<done|deferred> sizes=<nodes,rootVerts>
struct ChainStage {
    TreeOfBSets M;           // the stage after this step
    int task = -1;           // extend steps: index into `tasks`
    // Joint steps: the strong embedding of the previous stage. Extend steps
    // leave this empty (the previous stage is literally contained).
    std::optional<ArborealMorphism> incl;
    // Extend steps that closed off an uncovered embedding: the resulting
    // strong embedding of the task's extension into M.
    std::optional<ArborealMorphism> realized;
};

struct ChainResult {
    TreeOfBSets M;
    std::vector<std::string> log;
    std::vector<std::pair<TreeOfBSets, TreeOfBSets>> tasks;  // (source, one-point extension)
    std::vector<ChainStage> stages;                          // one per step, in order
};

ChainResult build_chain(const ColorChain& chain, int steps, std::uint64_t seed);

// The derived C-relation at a root vertex p, read off the
// pre-branches omitting p: C(x;y,z) iff some such pre-branch contains y and z
// but not x. Also reports whether the family has typical pairs (two members
// overlapping without containment), which would break the C-axioms.
struct DerivedC {
    TernaryRelation c;
    bool typical_pair = false;
    std::string typical_witness;
};

DerivedC derive_c(const TreeOfBSets& A, const Id& p);

}  // namespace arbor
