#pragma once

// Seeded random instance generation. All randomness flows through a single
// mt19937_64 so identical seeds give identical instances on any platform.

#include <cstdint>
#include <random>

#include "arbor/forest.hpp"

namespace arbor {

struct GenParams {
    int max_nodes = 5;       // node-tree size bound (>= 1)
    int max_verts = 7;       // per-B-set vertex bound (>= 1)
    int colour_window = 8;   // colours drawn from a window of this many steps
};

// A uniformly-shaped random tree of B-sets: random node tree in the ambient
// chain, random free tree (via Prüfer sequences) at each node with every
// ramification point given a child where the node budget allows, random
// branch-respecting g maps. Always passes validate().
TreeOfBSets random_tob(const ColorChain& chain, GenParams p, std::mt19937_64& rng);

// A random one-point strong extension of A (uniform over the kinds available).
struct RandomExt {
    TreeOfBSets E;
    Id e;
};

RandomExt random_extension(const TreeOfBSets& A, std::mt19937_64& rng);

}  // namespace arbor
