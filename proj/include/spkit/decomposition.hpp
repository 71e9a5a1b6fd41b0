/*
 * Copyright 2026 The spkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SPKIT_DECOMPOSITION_HPP
#define SPKIT_DECOMPOSITION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spkit/hypergraph.hpp"

namespace spkit {

/// Binary tree node shared by branch and tree decompositions. Leaves carry
/// the index of the hyperedge they stand for.
struct DecompNode {
    int left = -1;
    int right = -1;
    int edge_index = -1;          // >= 0 exactly for leaves
    std::vector<int> label;       // sorted vertex set

    bool is_leaf() const { return left < 0 && right < 0; }
};

/// Branch decomposition: leaves one-to-one with hyperedges; every node's
/// label is (union of edges below) ∩ (union of edges not below).
struct BranchDecomp {
    std::vector<DecompNode> nodes;
    int root = -1;

    bool empty() const { return nodes.empty(); }
};

/// Tree decomposition: every hyperedge inside some leaf label; internal
/// labels follow from the leaves by the running intersection property.
struct TreeDecomp {
    std::vector<DecompNode> nodes;
    int root = -1;

    bool empty() const { return nodes.empty(); }
};

/// Rooted tree (or forest under a virtual root) over the primal graph's
/// vertices; parent 0 marks a root.
struct PseudoTree {
    std::map<int, int> parent;

    std::vector<int> roots() const;
    std::vector<int> children_of(int v) const;
    /// True if a is a proper ancestor of b.
    bool is_ancestor(int a, int b) const;
};

/// Recomputes every label of b from its shape and the hyperedges.
void compute_branch_labels(BranchDecomp& b, const Hypergraph& h);

/// Fills internal labels from the (given) leaf labels by running
/// intersection. Leaf labels are left untouched.
void compute_tree_labels(TreeDecomp& t);

/// Branch width: maximum label size. Tree width: maximum label size - 1.
int width_of(const BranchDecomp& b);
int width_of(const TreeDecomp& t);

std::vector<std::string> validate(const BranchDecomp& b, const Hypergraph& h);
std::vector<std::string> validate(const TreeDecomp& t, const Hypergraph& h);
std::vector<std::string> validate(const PseudoTree& pt, const Graph& g);

/// Elimination order built from a tree decomposition: vertices sorted by
/// decreasing depth of the deepest common ancestor of the leaves containing
/// them, ties by vertex id. Isolated vertices are eliminated first.
ElimOrder order_from_treedec(const Hypergraph& h, const TreeDecomp& t);

/// Bottom-up merge construction: starting from one leaf per hyperedge,
/// repeatedly merges the trees containing the last yet-unprocessed vertex,
/// binarizing multi-way merges as left-leaning chains.
TreeDecomp treedec_from_order(const Hypergraph& h, const ElimOrder& pi);

/// Same tree shape as treedec_from_order, relabeled as a branch
/// decomposition. A one-edge hypergraph yields a single leaf; zero edges
/// is an error.
BranchDecomp branchdec_from_order(const Hypergraph& h, const ElimOrder& pi);

enum class OrderHeuristic { MinFill, MinDegree };

/// Greedy elimination order. Ties go to the smallest vertex id, or to a
/// seeded random pick among the tied candidates when seed != 0. Isolated
/// vertices always come first.
ElimOrder heuristic_order(const Hypergraph& h, OrderHeuristic method, std::uint64_t seed = 0);

/// Bucket-tree style pseudo tree: parent(v) is the earliest-eliminated
/// neighbor of v (in the induced graph) among those eliminated after v.
/// A disconnected graph yields a forest under the virtual root.
PseudoTree pseudo_tree_from_order(const Graph& g, const ElimOrder& pi);

/// Depth-first preorder over b; at each node appends the label variables
/// not seen at an earlier node. Vertices exclusive to a single hyperedge
/// never enter any label and are appended at the end, ascending.
std::vector<int> static_order_from_branchdec(const BranchDecomp& b, const Hypergraph& h);

} // namespace spkit

#endif
