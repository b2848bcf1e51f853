#pragma once

#include <functional>

#include "z3o/classes.hpp"
#include "z3o/cuts.hpp"
#include "z3o/graph.hpp"
#include "z3o/oracle.hpp"

namespace z3o {

enum class StepKind {
    Base,
    OrientVertex,
    DeleteBoundaryEdge,
    CutSplit,
    ChordSplit,
    LiftAndDelete,
    ContractParallelAtD,
};

const char* step_name(StepKind k);

struct Step {
    StepKind kind = StepKind::Base;
    Cut cut;            // CutSplit
    EdgeId edge = -1;   // ChordSplit chord / DeleteBoundaryEdge edge
    VertexId vertex = -1; // OrientVertex vertex / ChordSplit u / ContractParallelAtD partner
    VertexId vertex2 = -1; // LiftAndDelete: the degree-3 special vertex
    EdgeId lift_e1 = -1, lift_e2 = -1; // LiftAndDelete
};

/// Measure pair from the minimal-counterexample ordering: (|E|, number of
/// unoriented edges). The second coordinate equals |E| - deg(d) on canonical
/// instances whose only fixed edges sit at d.
struct Measure {
    long long edges = 0;
    long long unoriented = 0;
    bool operator<(const Measure& o) const {
        return edges != o.edges ? edges < o.edges : unoriented < o.unoriented;
    }
    bool operator==(const Measure& o) const {
        return edges == o.edges && unoriented == o.unoriented;
    }
};

Measure measure_of(const Instance& inst);

struct TraceNode {
    std::string label; // step name, "oracle", or "oracle-fallback"
    Measure measure;
    std::vector<TraceNode> children;
};

/// Two-phase application plan. `first` is buildable immediately; when
/// `second` is set the next child depends on the first child's solution
/// (CutSplit contracts A only after the other side fixed the cut directions;
/// ChordSplit orients u only after H/uv is solved). `glue` recombines the
/// children's orientations into one for the parent.
struct StepPlan {
    std::vector<Instance> first;
    std::function<Instance(const Orientation&)> second;
    std::function<Orientation(const std::vector<Orientation>&)> glue;
};

struct ReducerConfig {
    int oracle_vertex_budget = 12; // at or below: solve leaves exactly
    bool strict_glue = true;       // throw on a glue that fails verify
};

struct ReduceResult {
    bool sat = false;
    Orientation orientation;
    TraceNode trace;
    long long steps = 0;
    long long oracle_leaves = 0;
    long long fallbacks = 0; // parent re-solved by the oracle after a step misfired
};

/// First applicable step under the precedence Base > ContractParallelAtD >
/// CutSplit (smallest cut first) > ChordSplit > OrientVertex >
/// DeleteBoundaryEdge > LiftAndDelete. Guards require every child to pass
/// some class check and to shrink the measure; none applicable -> nullopt.
std::optional<Step> find_step(const Instance& inst);

/// Builds the children and glue for an applicable step. Throws
/// MutationError when the step's guard no longer holds.
StepPlan apply(const Instance& inst, const Step& step);

/// Recursive reduction with oracle leaves: sound and total. A child that
/// unexpectedly comes back UNSAT (possible since steps commit direction
/// choices) falls back to solving the parent with the oracle, so UNSAT is
/// only ever decided by the oracle.
ReduceResult reduce_solve(const Instance& inst, const ReducerConfig& cfg = {});

/// Assign free t/s (or r/s/t) marks to unmarked degree-3 vertices so class
/// checks can pass on reduction children.
Instance normalize_marks(const Instance& inst);

} // namespace z3o
