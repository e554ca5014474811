#pragma once

// Textual formats. Serialization is deterministic and bit-exact: parsing a
// serialized value and re-serializing reproduces the bytes.

#include <string>

#include "arbor/forest.hpp"

namespace arbor {

// TOB v1:
//   TOB v1 chain=<preset-token>
//   node <c0 | (c1,n1) ...>        (nodes in structural order)
//   vertices <ids>
//   edges <v-w> ...
//   f <child-node> -> <vertex>     (one per child, children in order)
//   g <child-node>: <v>-><w> ...
std::string serialize_tob(const TreeOfBSets& A);
TreeOfBSets parse_tob(const std::string& text);

// LSET v1:
//   LSET v1
//   domain <ids>
//   L a b c                        (lexicographic order)
std::string serialize_lset(const LSet& l);
LSet parse_lset(const std::string& text);

// Graphviz rendering: one cluster per node with its B-set tree, dashed arrows
// for the f markers.
std::string export_dot(const TreeOfBSets& A);

}  // namespace arbor
