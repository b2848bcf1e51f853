#include "helpers.hpp"

#include "z3o/mutate.hpp"

namespace z3o::testing {

Instance dts8_configuration(bool with_marks) {
    // hexagon d=0, u=1, t=2, v=3, s=4, y=5
    BuildSpec s;
    for (int i = 0; i < 6; ++i)
        s.vertices.push_back({i, 0, 0});
    for (int i = 0; i < 6; ++i) {
        s.edges.push_back({i, i, (i + 1) % 6});
        s.rotation[i] = {(i + 5) % 6, i};
    }
    Instance inst = Instance::build(s);
    std::vector<EdgeId> hexagon{0, 1, 2, 3, 4, 5};
    inst = inst.with_faces(face_with_edges(inst, hexagon), std::nullopt);
    // corners of a face at given vertices, in face-walk order
    auto walk_corners = [](const Instance& g, int face, std::vector<VertexId> at) {
        std::vector<int> corners;
        for (int d : g.face_orbit(g.face_canonical_dart(face)))
            for (VertexId v : at)
                if (g.dart_vertex(d) == v)
                    corners.push_back(d);
        return corners;
    };
    // w = 6 adjacent to u, t, v, inside the inner hexagon face
    {
        int fg_face = inst.face_index(inst.resolve_dart(*inst.fg()));
        int inner = fg_face == 0 ? 1 : 0;
        for (int f = 0; f < inst.face_orbit_count(); ++f)
            if (f != fg_face)
                inner = f;
        inst = add_vertex_in_face(inst, walk_corners(inst, inner, {1, 2, 3}));
    }
    // z = 7 adjacent to v, s, y (inside the face still holding them)
    {
        int fv = -1;
        int fg_face = inst.face_index(inst.resolve_dart(*inst.fg()));
        for (int f = 0; f < inst.face_orbit_count(); ++f) {
            if (f == fg_face)
                continue;
            std::set<VertexId> vs;
            for (int d : inst.face_orbit(inst.face_canonical_dart(f)))
                vs.insert(inst.dart_vertex(d));
            if (vs.count(3) && vs.count(4) && vs.count(5))
                fv = f;
        }
        inst = add_vertex_in_face(inst, walk_corners(inst, fv, {3, 4, 5}));
    }
    // central face now walks d, u, w, v, z, y; b1 = 8 attaches d, u, w, w
    auto central = [&](const Instance& g, const std::set<VertexId>& want) {
        for (int f = 0; f < g.face_orbit_count(); ++f) {
            std::set<VertexId> vs;
            for (int d : g.face_orbit(g.face_canonical_dart(f)))
                vs.insert(g.dart_vertex(d));
            if (std::includes(vs.begin(), vs.end(), want.begin(), want.end()))
                return f;
        }
        throw BuildError("no central face");
    };
    {
        int f = central(inst, {0, 1, 6, 3, 7, 5});
        auto orbit = inst.face_orbit(inst.face_canonical_dart(f));
        std::vector<int> attach;
        for (int d : orbit) {
            VertexId v = inst.dart_vertex(d);
            if (v == 0 || v == 1)
                attach.push_back(d);
            if (v == 6) {
                attach.push_back(d);
                attach.push_back(d);
            }
        }
        inst = add_vertex_in_face(inst, attach);
    }
    // b2 = 9 attaches b1 x2, z x2, y
    {
        int f = central(inst, {8, 7, 5});
        auto orbit = inst.face_orbit(inst.face_canonical_dart(f));
        std::vector<int> attach;
        for (int d : orbit) {
            VertexId v = inst.dart_vertex(d);
            if (v == 8 || v == 7) {
                attach.push_back(d);
                attach.push_back(d);
            }
            if (v == 5)
                attach.push_back(d);
        }
        inst = add_vertex_in_face(inst, attach);
    }
    if (with_marks) {
        BuildSpec spec = inst.to_spec();
        for (auto& v : spec.vertices) {
            if (v.id == 2)
                v.mark = 't';
            if (v.id == 4)
                v.mark = 's';
        }
        // prescriptions stay zero; orient d's three edges to hit p(d) = 0
        Instance tmp = Instance::build(spec).with_faces(inst.fg(), inst.fgs());
        auto tails = orientation_satisfying(tmp, 0);
        tmp = tmp.with_orientations(*tails);
        SpecialVertices m = tmp.marks();
        m.d = 0;
        inst = tmp.with_marks(m);
    }
    return inst;
}

long long brute_force_count(const Instance& inst) {
    std::vector<EdgeId> free;
    for (EdgeId e : inst.edge_ids())
        if (!inst.oriented(e))
            free.push_back(e);
    long long total = 0;
    for (unsigned long long m = 0; m < (1ull << free.size()); ++m) {
        Orientation o = inst.fixed_orientation();
        for (size_t i = 0; i < free.size(); ++i) {
            EdgeId e = free[i];
            o[e] = (m >> i) & 1 ? inst.edge_v(e) : inst.edge_u(e);
        }
        bool ok = true;
        for (VertexId v : inst.vertex_ids())
            if (inst.residual(v, o) != inst.p(v)) {
                ok = false;
                break;
            }
        if (ok)
            ++total;
    }
    // both assignments of a loop name the same tail vertex: de-duplicate
    int loops = 0;
    for (EdgeId e : free)
        if (inst.is_loop(e))
            ++loops;
    for (int i = 0; i < loops; ++i)
        total /= 2;
    return total;
}

std::vector<std::pair<std::vector<VertexId>, std::vector<EdgeId>>>
brute_force_cuts(const Instance& inst, int kmax, int robust) {
    std::vector<std::pair<std::vector<VertexId>, std::vector<EdgeId>>> out;
    const auto& vids = inst.vertex_ids();
    int n = static_cast<int>(vids.size());
    if (n <= 1)
        return out;
    for (unsigned long long m = 1; m < (1ull << (n - 1)); ++m) {
        std::set<VertexId> side;
        for (int i = 0; i < n - 1; ++i)
            if (m & (1ull << i))
                side.insert(vids[i + 1]);
        int a = static_cast<int>(side.size());
        if (robust > 1 && (a < robust || n - a < robust))
            continue;
        std::vector<EdgeId> cut;
        for (EdgeId e : inst.edge_ids())
            if (side.count(inst.edge_u(e)) != side.count(inst.edge_v(e)))
                cut.push_back(e);
        if (static_cast<int>(cut.size()) <= kmax)
            out.push_back({{side.begin(), side.end()}, cut});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second.size() != y.second.size())
            return x.second.size() < y.second.size();
        return x.first < y.first;
    });
    return out;
}

int brute_force_boundary_cut(const Instance& inst, VertexId v,
                             const std::set<VertexId>& boundary) {
    std::vector<VertexId> inner;
    for (VertexId x : inst.vertex_ids())
        if (!boundary.count(x) && x != v)
            inner.push_back(x);
    int best = kUnbounded;
    for (unsigned long long m = 0; m < (1ull << inner.size()); ++m) {
        std::set<VertexId> side{v};
        for (size_t i = 0; i < inner.size(); ++i)
            if (m & (1ull << i))
                side.insert(inner[i]);
        int sz = 0;
        for (EdgeId e : inst.edge_ids())
            if (side.count(inst.edge_u(e)) != side.count(inst.edge_v(e)))
                ++sz;
        best = std::min(best, sz);
    }
    return best;
}

std::vector<EdgeId> sorted_face_edge_multiset(const Instance& inst, const FaceRef& f) {
    auto e = inst.face_edges(f);
    std::sort(e.begin(), e.end());
    return e;
}

namespace {

std::vector<EdgeId> orbit_edges_of_face(const Instance& inst, int face) {
    std::vector<EdgeId> out;
    for (int d : inst.face_orbit(inst.face_canonical_dart(face)))
        out.push_back(inst.dart_edge(d));
    return out;
}

void remove_all(std::vector<EdgeId>& v, EdgeId e) {
    v.erase(std::remove(v.begin(), v.end(), e), v.end());
}

void remove_one(std::vector<EdgeId>& v, EdgeId e) {
    auto it = std::find(v.begin(), v.end(), e);
    if (it != v.end())
        v.erase(it);
}

} // namespace

std::optional<std::vector<EdgeId>> predict_delete_edge(const Instance& inst, EdgeId e) {
    if (!inst.fg())
        return std::nullopt;
    int fg = inst.face_index(inst.resolve_dart(*inst.fg()));
    int f0 = inst.face_index(inst.dart(e, 0));
    int f1 = inst.face_index(inst.dart(e, 1));
    if (f0 != fg && f1 != fg)
        return std::nullopt; // e not on the F_G boundary
    if (f0 == f1)
        return std::nullopt; // bridge: deleting merges nothing
    int other = f0 == fg ? f1 : f0;
    std::vector<EdgeId> expect = orbit_edges_of_face(inst, fg);
    auto add = orbit_edges_of_face(inst, other);
    expect.insert(expect.end(), add.begin(), add.end());
    remove_all(expect, e);
    std::sort(expect.begin(), expect.end());
    return expect;
}

std::optional<std::vector<EdgeId>> predict_delete_vertex(const Instance& inst, VertexId v) {
    if (!inst.fg())
        return std::nullopt;
    int fg = inst.face_index(inst.resolve_dart(*inst.fg()));
    bool on_fg = false;
    for (int d : inst.face_orbit(inst.face_canonical_dart(fg)))
        if (inst.dart_vertex(d) == v)
            on_fg = true;
    if (!on_fg)
        return std::nullopt;
    std::set<int> faces{fg};
    for (EdgeId e : inst.incident_edges(v)) {
        if (inst.is_loop(e))
            return std::nullopt;
        faces.insert(inst.face_index(inst.dart(e, 0)));
        faces.insert(inst.face_index(inst.dart(e, 1)));
    }
    std::vector<EdgeId> expect;
    for (int f : faces) {
        auto add = orbit_edges_of_face(inst, f);
        expect.insert(expect.end(), add.begin(), add.end());
    }
    for (EdgeId e : inst.incident_edges(v))
        remove_all(expect, e);
    std::sort(expect.begin(), expect.end());
    return expect;
}

std::optional<std::vector<EdgeId>> predict_contract(const Instance& inst,
                                                    const std::set<VertexId>& S) {
    if (!inst.fg())
        return std::nullopt;
    auto fg_edges = orbit_edges_of_face(inst, inst.face_index(inst.resolve_dart(*inst.fg())));
    std::vector<EdgeId> expect;
    for (EdgeId e : fg_edges)
        if (!(S.count(inst.edge_u(e)) && S.count(inst.edge_v(e))))
            expect.push_back(e);
    if (expect.empty())
        return std::nullopt; // rule 2: re-chosen arbitrarily
    std::sort(expect.begin(), expect.end());
    return expect;
}

std::optional<std::vector<EdgeId>> predict_lift(const Instance& inst, EdgeId e1, EdgeId e2,
                                                EdgeId lifted) {
    if (!inst.fg())
        return std::nullopt;
    int fg = inst.face_index(inst.resolve_dart(*inst.fg()));
    int a0 = inst.face_index(inst.dart(e1, 0)), a1 = inst.face_index(inst.dart(e1, 1));
    if (a0 != fg && a1 != fg)
        return std::nullopt;
    int f1 = a0 == fg ? a1 : a0; // shared corner face of e1 and e2
    int b0 = inst.face_index(inst.dart(e2, 0)), b1 = inst.face_index(inst.dart(e2, 1));
    if (b0 != f1 && b1 != f1)
        return std::nullopt;
    int f2 = b0 == f1 ? b1 : b0;
    if (f2 == fg || f1 == fg)
        return std::nullopt;
    std::vector<EdgeId> expect = orbit_edges_of_face(inst, fg);
    auto add = orbit_edges_of_face(inst, f2);
    expect.insert(expect.end(), add.begin(), add.end());
    remove_one(expect, e1);
    remove_one(expect, e2);
    expect.push_back(lifted);
    std::sort(expect.begin(), expect.end());
    return expect;
}

} // namespace z3o::testing

namespace z3o::testing {

bool star_down_chain_forced(const Instance& star, int k, int j) {
    auto vid = [](int m) { return VertexId(2 + m); };
    int lo = 3 * (k - j), hi = 3 * k;
    std::set<VertexId> window, constrained;
    for (int m = lo; m <= hi; ++m)
        window.insert(vid(m));
    for (int m = lo; m < hi; ++m)
        constrained.insert(vid(m));
    std::vector<EdgeId> edges, free;
    for (EdgeId e : star.edge_ids()) {
        if (!window.count(star.edge_u(e)) && !window.count(star.edge_v(e)))
            continue;
        edges.push_back(e);
        if (!star.oriented(e))
            free.push_back(e);
    }
    // the two down-chain edges head toward v_{lo-1} and v_{lo-2}
    // (w = v_{-1}, t = v_{-2} at the seam)
    VertexId head = vid(lo);
    auto ring_id = [&](int m) { return m >= 0 ? vid(m) : (m == -1 ? VertexId(1) : VertexId(0)); };
    std::vector<EdgeId> down;
    for (EdgeId e : star.incident_edges(head)) {
        VertexId o = star.edge_other(e, head);
        if (o == ring_id(lo - 1) || o == ring_id(lo - 2))
            down.push_back(e);
    }
    if (down.size() != 2)
        return false;

    long long consistent = 0;
    for (unsigned long long m = 0; m < (1ull << free.size()); ++m) {
        Orientation o;
        for (EdgeId e : edges)
            if (auto t = star.tail(e))
                o[e] = *t;
        for (size_t i = 0; i < free.size(); ++i) {
            EdgeId e = free[i];
            o[e] = (m >> i) & 1 ? star.edge_v(e) : star.edge_u(e);
        }
        bool ok = true;
        for (VertexId v : constrained)
            if (star.residual(v, o) != star.p(v)) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        ++consistent;
        for (EdgeId e : down)
            if (o.at(e) != head)
                return false; // a consistent assignment points one inward
    }
    return consistent > 0;
}

} // namespace z3o::testing
