#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "z3o/ids.hpp"

namespace z3o {

/// A dart named by stable ids: end 0 emanates from the edge's first endpoint,
/// end 1 from the second. For a loop, end 0 is the first occurrence in the
/// vertex's rotation.
struct FaceRef {
    EdgeId edge = -1;
    int end = 0;
    /// Alternative naming used by z3g files: (edge, emanating vertex).
    /// When vertex >= 0 it takes precedence at resolution time.
    VertexId vertex = -1;

    static FaceRef by_end(EdgeId e, int end) { return FaceRef{e, end, -1}; }
    static FaceRef by_vertex(EdgeId e, VertexId v) { return FaceRef{e, 0, v}; }
};

struct VertexSpec {
    VertexId id = -1;
    int p = 0;       // signed: -1, 0, +1
    char mark = 0;   // 0 or one of 'd', 't', 's', 'r'
};

struct EdgeSpec {
    EdgeId id = -1;
    VertexId u = -1;
    VertexId v = -1;
};

/// External description of an instance; what the z3g format and the
/// generators produce, and what mutations edit before rebuilding.
struct BuildSpec {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    /// Counterclockwise cyclic edge order per vertex; a loop's id appears
    /// twice. Vertices without an entry default to ascending edge id.
    std::map<VertexId, std::vector<EdgeId>> rotation;
    std::map<EdgeId, VertexId> orient; // edge -> tail vertex
    std::optional<FaceRef> fg, fgs;
};

struct SpecialVertices {
    std::optional<VertexId> d, t, s, r;
};

/// A (partial or total) orientation given externally: edge -> tail vertex.
using Orientation = std::map<EdgeId, VertexId>;

struct VerifyOffender {
    VertexId vertex;
    int residual;   // signed
    int prescribed; // signed
};

struct VerifyReport {
    std::vector<EdgeId> unoriented;     // edges the orientation misses
    std::vector<EdgeId> unknown;        // edges not in the instance / bad tails
    std::vector<EdgeId> fixed_mismatch; // disagreement with the instance's fixed edges
    std::vector<VerifyOffender> offenders;

    bool extends_fixed() const { return fixed_mismatch.empty(); }
    bool valid() const {
        return unoriented.empty() && unknown.empty() && fixed_mismatch.empty() &&
               offenders.empty();
    }
};

/// Embedded planar multigraph with prescription, partial orientation,
/// specified faces and special-vertex marks. Immutable after build; all
/// mutations return fresh instances.
class Instance {
  public:
    /// Validates and builds. Throws BuildError on: non-planar rotation
    /// system (per-component Euler check), invalid prescription sum,
    /// directed-vertex residual mismatch, malformed rotation, bad ids.
    static Instance build(const BuildSpec& spec);

    /// Same but skips the prescription-sum and directed-vertex residual
    /// gates. Structural checks still apply. Exists so tests can reach
    /// states the normal gates make unreachable.
    static Instance build_unchecked(const BuildSpec& spec);

    // --- graph shape ---
    int vertex_count() const { return static_cast<int>(vids_.size()); }
    int edge_count() const { return static_cast<int>(eids_.size()); }
    int face_count() const; // dart orbits + one per edgeless component
    int component_count() const { return ncomp_; }
    const std::vector<VertexId>& vertex_ids() const { return vids_; }
    const std::vector<EdgeId>& edge_ids() const { return eids_; }
    bool has_vertex(VertexId v) const { return vidx_.count(v) != 0; }
    bool has_edge(EdgeId e) const { return eidx_.count(e) != 0; }
    VertexId edge_u(EdgeId e) const { return vids_[ev_[eix(e)][0]]; }
    VertexId edge_v(EdgeId e) const { return vids_[ev_[eix(e)][1]]; }
    VertexId edge_other(EdgeId e, VertexId v) const;
    bool is_loop(EdgeId e) const { return edge_u(e) == edge_v(e); }
    int degree(VertexId v) const; // = number of darts at v (a loop counts twice)
    std::vector<EdgeId> incident_edges(VertexId v) const; // rotation order, loop twice
    std::vector<VertexId> neighbors(VertexId v) const;    // deduplicated, sorted

    // --- prescription / orientation / marks ---
    int p(VertexId v) const { return p_[vix(v)]; } // canonical 0..2
    int p_signed(VertexId v) const { return z3_to_signed(p(v)); }
    std::optional<VertexId> tail(EdgeId e) const;
    bool oriented(EdgeId e) const { return tail_end_[eix(e)] >= 0; }
    int unoriented_count() const;
    Orientation fixed_orientation() const;
    const SpecialVertices& marks() const { return marks_; }

    // --- darts (dense, internal ids; stable only within one instance) ---
    int dart_count() const { return 2 * edge_count(); }
    int dart(EdgeId e, int end) const { return 2 * eix(e) + end; }
    EdgeId dart_edge(int d) const { return eids_[d >> 1]; }
    int dart_end(int d) const { return d & 1; }
    VertexId dart_vertex(int d) const { return vids_[dart_v_[d]]; }
    static int twin(int d) { return d ^ 1; }
    int rot_next(int d) const { return rot_next_[d]; }
    int rot_prev(int d) const { return rot_prev_[d]; }
    /// Next dart along the face walk: orbits of (rotation o twin).
    int face_next(int d) const { return rot_next_[twin(d)]; }
    int face_index(int d) const { return face_of_[d]; }
    std::vector<int> face_orbit(int d) const;
    int face_orbit_count() const { return static_cast<int>(face_min_dart_.size()); }
    int face_canonical_dart(int faceIndex) const { return face_min_dart_[faceIndex]; }

    // --- specified faces ---
    std::optional<FaceRef> fg() const;  // canonical dart of the orbit
    std::optional<FaceRef> fgs() const;
    int resolve_dart(const FaceRef& f) const; // throws BuildError if stale
    std::vector<EdgeId> face_edges(const FaceRef& f) const;    // multiset along walk
    std::vector<VertexId> face_vertices(const FaceRef& f) const; // dedup, sorted
    bool on_face(const FaceRef& f, VertexId v) const;
    /// Vertices on the boundary of any specified face.
    std::set<VertexId> specified_boundary_vertices() const;
    std::set<EdgeId> specified_boundary_edges() const;
    /// Cheap functional update: same graph, different specified faces.
    Instance with_faces(std::optional<FaceRef> fg, std::optional<FaceRef> fgs) const;

    // --- residuals & verification ---
    /// (indegree - outdegree) mod 3 at v over the instance's own fixed edges;
    /// loops contribute 0.
    int residual(VertexId v) const;
    /// Same over an external (partial) orientation; o may only mention edges
    /// of the instance.
    int residual(VertexId v, const Orientation& o) const;
    /// Checks a total orientation: totality, agreement with fixed edges,
    /// residual(v) == p(v) everywhere.
    VerifyReport verify(const Orientation& o) const;

    // --- functional updates (rebuild-free where possible) ---
    Instance with_orientations(const std::vector<std::pair<EdgeId, VertexId>>& tails) const;
    Instance with_marks(const SpecialVertices& m) const;

    /// Canonical external description (vertices/edges ascending, rotations
    /// explicit). write(parse(.)) stability builds on this.
    BuildSpec to_spec() const;

    /// Same graph, prescription, orientation, marks, and specified-face
    /// orbits (compared by boundary edge multiset).
    bool structurally_equal(const Instance& o) const;

  private:
    Instance() = default;
    static Instance build_impl(const BuildSpec& spec, bool checked);
    int vix(VertexId v) const;
    int eix(EdgeId e) const;

    std::vector<VertexId> vids_;
    std::vector<EdgeId> eids_;
    std::map<VertexId, int> vidx_;
    std::map<EdgeId, int> eidx_;
    std::vector<std::array<int, 2>> ev_; // per edge: vertex index of end 0 / end 1
    std::vector<int> rot_next_, rot_prev_, dart_v_;
    std::vector<int> face_of_;
    std::vector<int> face_min_dart_;
    std::vector<int> tail_end_; // per edge: -1 unoriented, else 0/1
    std::vector<int> p_;        // canonical 0..2 per vertex index
    std::vector<int> comp_;     // component index per vertex index
    int ncomp_ = 0;
    int edgeless_components_ = 0;
    SpecialVertices marks_;
    std::optional<int> fg_dart_, fgs_dart_;
};

} // namespace z3o
