#pragma once

#include "z3o/graph.hpp"

namespace z3o {

struct SearchStats {
    long long nodes = 0;        // branch decisions
    long long propagations = 0; // forced edges
};

struct SolveResult {
    bool sat = false;
    Orientation orientation; // total, verified, when sat
    SearchStats stats;
};

/// Exact decision by propagation-guided backtracking. Deterministic: free
/// edges branch in ascending id, direction tail-at-lower-endpoint first; a
/// vertex with one remaining free non-loop edge forces it. Loops are pinned
/// to their vertex up front (they carry no residual).
SolveResult solve(const Instance& inst);

/// Number of valid total orientations extending the fixed edges. Exhaustive;
/// throws BudgetError past 26 free edges.
long long count(const Instance& inst);

long long count(const Instance& inst, SearchStats& stats);

} // namespace z3o
