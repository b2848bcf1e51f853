#pragma once

#include <optional>

#include "z3o/graph.hpp"

namespace z3o {

/// Result of a structural mutation. Specified faces of the child follow the
/// face update rules: each parent face is re-identified through a surviving
/// boundary dart; a face whose boundary vanished is re-chosen at the
/// contraction vertex (or dropped, for the second face). `pull_back` maps a
/// total child orientation to parent edges: surviving edges map through
/// moved endpoints, the lifted edge expands to its pair, and edges the
/// mutation removed come back with their committed direction.
struct Mutation {
    Instance child;

    std::vector<std::pair<EdgeId, VertexId>> committed; // removed oriented edges
    std::vector<EdgeId> dropped_unoriented;             // removed without a direction

    struct MovedEnd {
        EdgeId edge;
        int end;
        VertexId old_vertex;
    };
    std::vector<MovedEnd> moved_ends;
    VertexId contraction_vertex = -1;

    struct LiftRec {
        EdgeId lifted;
        EdgeId e1, e2; // e1 = u-mid, e2 = mid-w
        VertexId u, mid, w;
    };
    std::optional<LiftRec> lift;

    bool disconnected = false; // deletion split a component (bridge flag)
    bool faces_merged = false; // the two specified faces became one

    /// Child orientation -> orientation of every parent edge this mutation
    /// accounts for. Throws if an edge was dropped without a direction.
    Orientation pull_back(const Orientation& child_o) const;
};

/// Face rule 3. Structural when the edge is unoriented; an oriented edge's
/// contribution is folded into its endpoints' prescriptions so transfer-back
/// stays exact.
Mutation delete_edge(const Instance& inst, EdgeId e);

/// Face rule 4. Requires every incident edge oriented (fold as above);
/// loops at v are dropped without folding.
Mutation delete_vertex(const Instance& inst, VertexId v);

/// Face rules 1, 2, 5. S must induce a connected subgraph and meet each
/// specified face boundary in nothing, everything, or one contiguous arc.
/// Internal edges disappear (loops created by the contraction are removed);
/// the new vertex carries the folded prescription sum and inherits the d
/// mark when d is inside and every remaining edge is oriented.
Mutation contract(const Instance& inst, const std::set<VertexId>& S);

/// Face rule 6. e1 = uv and e2 = vw must be unoriented, non-loop, and
/// consecutive in v's rotation; they are replaced by a fresh edge uw.
Mutation lift(const Instance& inst, EdgeId e1, EdgeId e2);

/// Directions for the unoriented edges at v making residual(v) = p(v):
/// the lexicographically smallest set of edges is pointed inward.
/// nullopt when no completion exists.
std::optional<std::vector<std::pair<EdgeId, VertexId>>>
orientation_satisfying(const Instance& inst, VertexId v);

/// Compose pull-backs of a mutation chain (parent-to-child order) over the
/// final child's total orientation.
Orientation pull_back_chain(const std::vector<Mutation>& chain, const Orientation& leaf_o);

} // namespace z3o
