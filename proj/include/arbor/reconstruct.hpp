#pragma once

// Reconstruction: recover a tree of B-sets (up to colour-erasing isomorphism)
// from its derived relation L alone.

#include "arbor/forest.hpp"

namespace arbor {

// Root adjacency from L: a ~ b iff no third point lies between them. The
// resulting graph is the root B-set's tree whenever L comes from a tree of
// B-sets (the root B-set is the unique positive-type B-relation inside L).
BSet root_bset_from_l(const LSet& l);

// Full recovery. Node identities are re-synthesised in a fixed ambient chain
// (colours carry no information recoverable from L), so compare results with
// align_colour_erasing, not operator==.
TreeOfBSets recover(const LSet& l);

// Isomorphism ignoring the ambient colouring: a tree isomorphism of node
// trees (roots to roots, order preserved) with coherent B-set isomorphisms.
bool align_colour_erasing(const TreeOfBSets& A, const TreeOfBSets& B);

// The intrinsic order criterion on nodes, stated purely via classes:
// s <= t iff every pair separated at t is present and separated at s.
bool order_criterion(const TreeOfBSets& A, const AmbientNode& s, const AmbientNode& t);

}  // namespace arbor
