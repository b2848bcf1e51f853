#pragma once

#include "z3o/graph.hpp"

namespace z3o {

struct Cut {
    /// Canonical side: the one not containing the minimum vertex id. Sorted.
    std::vector<VertexId> side_a;
    std::vector<EdgeId> edges; // crossing edges, sorted
    int size = 0;
};

/// Global min-cut size of the multigraph. 0 when disconnected, kUnbounded
/// on a single vertex.
int edge_connectivity(const Instance& g);

/// All cuts of size <= kmax with both sides of at least `robust` vertices
/// (robust <= 1 admits every bipartition, so vertex stars are included).
/// Each bipartition reported once, sorted by (size, side_a).
std::vector<Cut> enumerate_cuts(const Instance& g, int kmax, int robust);

/// One side avoids every specified-face boundary vertex. Requires at least
/// one specified face.
bool is_internal(const Instance& inst, const Cut& c);

/// 1 = crossing edges touch neither specified boundary's edge set, 2 =
/// exactly one, 3 = both. Requires both faces.
int cut_type(const Instance& inst, const Cut& c);

/// All four corner sets nonempty.
bool crossing(const Instance& g, const Cut& a, const Cut& b);

/// Max number of edge-disjoint paths from v to the union of specified-face
/// boundaries (unit edge capacities). kUnbounded when v is itself on a
/// boundary.
int boundary_connectivity(const Instance& inst, VertexId v);

/// Unit-capacity max-flow between two vertex sets; the primitive behind the
/// two entry points above, exposed for reuse.
int edge_disjoint_paths(const Instance& g, const std::set<VertexId>& sources,
                        const std::set<VertexId>& sinks);

} // namespace z3o
