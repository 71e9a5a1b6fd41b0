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

#ifndef SPKIT_HYPERGRAPH_HPP
#define SPKIT_HYPERGRAPH_HPP

#include <vector>

#include "spkit/formula.hpp"

namespace spkit {

/// Hypergraph over integer vertex ids. Edges form a multiset: duplicates
/// are kept, each edge is a sorted vertex set, no edge is empty.
struct Hypergraph {
    std::vector<int> vertices;             // sorted, unique
    std::vector<std::vector<int>> edges;   // each sorted

    bool has_vertex(int v) const;
};

Hypergraph make_hypergraph(std::vector<int> vertices, std::vector<std::vector<int>> edges);

/// One hyperedge per (non-empty) clause, vertices 1..num_vars.
Hypergraph hypergraph_of(const Formula& f);

/// Undirected graph as sorted adjacency lists over the same vertex ids.
struct Graph {
    std::vector<int> vertices;
    std::vector<std::vector<int>> adj;  // parallel to vertices

    int index_of(int v) const;
    bool has_edge(int u, int v) const;
    std::vector<std::pair<int, int>> edge_list() const;
};

/// Edge (u,v) present iff u and v appear together in some hyperedge.
Graph primal_graph(const Hypergraph& h);

/// Vertex elimination order: position i holds the i-th vertex eliminated.
struct ElimOrder {
    std::vector<int> order;
};

struct InducedWidthResult {
    int width = 0;
    /// The hypergraph sequence H_n .. H_1: entry 0 is the input, each later
    /// entry eliminates the next vertex of the order.
    std::vector<Hypergraph> trace;
};

/// Eliminates vertices in order; at each step the edges containing the
/// vertex are merged into one edge and the vertex is removed. Width is the
/// largest edge size anywhere in the trace, the input included.
InducedWidthResult induced_width(const Hypergraph& h, const ElimOrder& pi);

} // namespace spkit

#endif
