#include "z3o/grow.hpp"

#include <algorithm>
#include <map>

namespace z3o {

namespace {

// Collects ring insertions against the *original* rotation positions and
// applies them in one pass, so several edits at one vertex cannot shift
// each other.
struct SpecEdit {
    const Instance& inst;
    BuildSpec spec;
    std::map<VertexId, std::vector<std::pair<size_t, EdgeId>>> inserts; // (orig pos, edge)
    int seq = 0;

    explicit SpecEdit(const Instance& i) : inst(i), spec(i.to_spec()) {}

    size_t ring_position(int dart) const {
        VertexId v = inst.dart_vertex(dart);
        int start = -1;
        for (int d = 0; d < inst.dart_count() && start < 0; ++d)
            if (inst.dart_vertex(d) == v)
                start = d;
        int d = start;
        size_t pos = 0;
        while (d != dart) {
            d = inst.rot_next(d);
            ++pos;
        }
        return pos;
    }

    /// Queue `new_edge` for insertion immediately before `dart` in its
    /// vertex's rotation. Multiple inserts at one position keep call order.
    void insert_before(int dart, EdgeId new_edge) {
        inserts[inst.dart_vertex(dart)].push_back({ring_position(dart), new_edge});
    }

    /// Same but immediately after `dart`.
    void insert_after(int dart, EdgeId new_edge) {
        inserts[inst.dart_vertex(dart)].push_back({ring_position(dart) + 1, new_edge});
    }

    Instance rebuild() {
        for (auto& [v, ins] : inserts) {
            std::stable_sort(ins.begin(), ins.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<EdgeId> original = inst.incident_edges(v);
            std::vector<EdgeId> ring;
            size_t k = 0;
            for (size_t pos = 0; pos <= original.size(); ++pos) {
                while (k < ins.size() && ins[k].first == pos)
                    ring.push_back(ins[k++].second);
                if (pos < original.size())
                    ring.push_back(original[pos]);
            }
            spec.rotation[v] = ring;
        }
        return Instance::build(spec);
    }
};

} // namespace

Instance add_parallel_edge(const Instance& inst, EdgeId e, EdgeId* new_edge) {
    if (inst.is_loop(e))
        throw MutationError("add_parallel_edge: loops not supported");
    EdgeId g = inst.edge_ids().back() + 1;
    SpecEdit edit(inst);
    edit.spec.edges.push_back({g, inst.edge_u(e), inst.edge_v(e)});
    // Inserting before e at u and after e at v forms the bigon on the side
    // of dart (e,0). Keep specified-face handles out of the bigon.
    bool handle_on_end0 = false;
    for (const auto& f : {inst.fg(), inst.fgs()})
        if (f && f->edge == e && f->end == 0)
            handle_on_end0 = true;
    if (handle_on_end0) {
        edit.insert_after(inst.dart(e, 0), g);
        edit.insert_before(inst.dart(e, 1), g);
    } else {
        edit.insert_before(inst.dart(e, 0), g);
        edit.insert_after(inst.dart(e, 1), g);
    }
    if (new_edge)
        *new_edge = g;
    return edit.rebuild().with_faces(inst.fg(), inst.fgs());
}

Instance add_edge_in_face(const Instance& inst, int corner_a, int corner_b,
                          EdgeId* new_edge) {
    if (corner_a == corner_b)
        throw MutationError("add_edge_in_face: corners must differ");
    if (inst.face_index(corner_a) != inst.face_index(corner_b))
        throw MutationError("add_edge_in_face: corners on different faces");
    EdgeId g = inst.edge_ids().back() + 1;
    SpecEdit edit(inst);
    edit.spec.edges.push_back({g, inst.dart_vertex(corner_a), inst.dart_vertex(corner_b)});
    edit.insert_before(corner_a, g);
    edit.insert_before(corner_b, g);
    if (new_edge)
        *new_edge = g;
    return edit.rebuild().with_faces(inst.fg(), inst.fgs());
}

Instance add_vertex_in_face(const Instance& inst, const std::vector<int>& corners,
                            VertexId* new_vertex) {
    if (corners.empty())
        throw MutationError("add_vertex_in_face: no attachments");
    int f = inst.face_index(corners.front());
    for (int c : corners)
        if (inst.face_index(c) != f)
            throw MutationError("add_vertex_in_face: corners on different faces");
    VertexId x = inst.vertex_ids().empty() ? 0 : inst.vertex_ids().back() + 1;
    EdgeId next_edge = inst.edge_ids().empty() ? 0 : inst.edge_ids().back() + 1;
    SpecEdit edit(inst);
    edit.spec.vertices.push_back({x, 0, 0});
    std::vector<EdgeId> spokes;
    for (int c : corners) {
        EdgeId g = next_edge++;
        spokes.push_back(g);
        edit.spec.edges.push_back({g, inst.dart_vertex(c), x});
        edit.insert_before(c, g);
    }
    // the hub's rotation is the attachments reversed
    edit.spec.rotation[x] = std::vector<EdgeId>(spokes.rbegin(), spokes.rend());
    if (new_vertex)
        *new_vertex = x;
    return edit.rebuild().with_faces(inst.fg(), inst.fgs());
}

FaceRef face_with_edges(const Instance& inst, std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    for (int f = 0; f < inst.face_orbit_count(); ++f) {
        std::vector<EdgeId> got;
        for (int d : inst.face_orbit(inst.face_canonical_dart(f)))
            got.push_back(inst.dart_edge(d));
        std::sort(got.begin(), got.end());
        if (got == edges) {
            int d = inst.face_canonical_dart(f);
            return FaceRef::by_end(inst.dart_edge(d), inst.dart_end(d));
        }
    }
    throw BuildError("no face with the requested boundary edges");
}

} // namespace z3o
