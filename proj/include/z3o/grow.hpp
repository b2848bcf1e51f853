#pragma once

#include "z3o/graph.hpp"

namespace z3o {

// Planarity-preserving embedding edits. These are construction helpers for
// generators and tests, not the paper's reduction operators: prescriptions,
// marks, and orientations pass through untouched (new elements get p = 0,
// no orientation). Specified faces are re-identified through their handle
// darts, which all survive.

/// Parallel copy of e forming a bigon with it. Returns the new edge id.
Instance add_parallel_edge(const Instance& inst, EdgeId e, EdgeId* new_edge = nullptr);

/// New edge across the face containing `corner_a`/`corner_b`, inserted at
/// those corners. A corner is named by a dart of the face orbit; the new
/// edge runs from dart_vertex(corner_a) to dart_vertex(corner_b) and splits
/// the face in two.
Instance add_edge_in_face(const Instance& inst, int corner_a, int corner_b,
                          EdgeId* new_edge = nullptr);

/// New vertex inside the face, attached to the listed corners (darts of one
/// face orbit, in face-walk order; repeats allowed for parallel spokes).
Instance add_vertex_in_face(const Instance& inst, const std::vector<int>& corners,
                            VertexId* new_vertex = nullptr);

/// The face of inst whose boundary edge multiset equals `edges` (sorted
/// comparison). Throws BuildError when absent.
FaceRef face_with_edges(const Instance& inst, std::vector<EdgeId> edges);

} // namespace z3o
