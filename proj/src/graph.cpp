#include "z3o/graph.hpp"

#include <algorithm>
#include <sstream>

namespace z3o {

namespace {

std::string describe_vertex(VertexId v) {
    return "vertex " + std::to_string(v);
}

} // namespace

int Instance::vix(VertexId v) const {
    auto it = vidx_.find(v);
    if (it == vidx_.end())
        throw BuildError("unknown " + describe_vertex(v));
    return it->second;
}

int Instance::eix(EdgeId e) const {
    auto it = eidx_.find(e);
    if (it == eidx_.end())
        throw BuildError("unknown edge " + std::to_string(e));
    return it->second;
}

Instance Instance::build(const BuildSpec& spec) { return build_impl(spec, true); }

Instance Instance::build_unchecked(const BuildSpec& spec) { return build_impl(spec, false); }

Instance Instance::build_impl(const BuildSpec& spec, bool checked) {
    Instance inst;

    // Vertices: ascending unique ids.
    std::vector<VertexSpec> vs = spec.vertices;
    std::sort(vs.begin(), vs.end(),
              [](const VertexSpec& a, const VertexSpec& b) { return a.id < b.id; });
    for (size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].id < 0)
            throw BuildError("negative vertex id");
        if (i > 0 && vs[i].id == vs[i - 1].id)
            throw BuildError("duplicate vertex id " + std::to_string(vs[i].id));
        inst.vidx_[vs[i].id] = static_cast<int>(i);
        inst.vids_.push_back(vs[i].id);
        if (vs[i].p < -1 || vs[i].p > 1)
            throw BuildError("prescription out of range at " + describe_vertex(vs[i].id));
        inst.p_.push_back(z3_of_signed(vs[i].p));
    }

    // Edges: ascending unique ids, endpoints must exist.
    std::vector<EdgeSpec> es = spec.edges;
    std::sort(es.begin(), es.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (size_t j = 0; j < es.size(); ++j) {
        if (es[j].id < 0)
            throw BuildError("negative edge id");
        if (j > 0 && es[j].id == es[j - 1].id)
            throw BuildError("duplicate edge id " + std::to_string(es[j].id));
        if (!inst.vidx_.count(es[j].u) || !inst.vidx_.count(es[j].v))
            throw BuildError("edge " + std::to_string(es[j].id) + " has unknown endpoint");
        inst.eidx_[es[j].id] = static_cast<int>(j);
        inst.eids_.push_back(es[j].id);
        inst.ev_.push_back({inst.vidx_[es[j].u], inst.vidx_[es[j].v]});
    }

    const int nv = inst.vertex_count();
    const int ne = inst.edge_count();
    const int nd = 2 * ne;

    // Incident edge multiset per vertex (loop twice).
    std::vector<std::vector<EdgeId>> incident(nv);
    for (int j = 0; j < ne; ++j) {
        incident[inst.ev_[j][0]].push_back(inst.eids_[j]);
        if (inst.ev_[j][1] != inst.ev_[j][0])
            incident[inst.ev_[j][1]].push_back(inst.eids_[j]);
        else
            incident[inst.ev_[j][0]].push_back(inst.eids_[j]);
    }

    // Resolve rotations to darts.
    inst.rot_next_.assign(nd, -1);
    inst.rot_prev_.assign(nd, -1);
    inst.dart_v_.assign(nd, -1);
    for (int j = 0; j < ne; ++j) {
        inst.dart_v_[2 * j] = inst.ev_[j][0];
        inst.dart_v_[2 * j + 1] = inst.ev_[j][1];
    }
    for (int i = 0; i < nv; ++i) {
        VertexId v = inst.vids_[i];
        std::vector<EdgeId> ring;
        auto it = spec.rotation.find(v);
        if (it != spec.rotation.end()) {
            ring = it->second;
        } else {
            ring = incident[i];
            std::sort(ring.begin(), ring.end());
        }
        std::vector<EdgeId> want = incident[i];
        std::vector<EdgeId> got = ring;
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got)
            throw BuildError("malformed rotation at " + describe_vertex(v) +
                             " (listed edges do not match incidences)");
        std::vector<int> darts;
        std::map<EdgeId, int> seen;
        for (EdgeId e : ring) {
            int j = inst.eidx_[e];
            int end;
            if (inst.ev_[j][0] == inst.ev_[j][1]) {
                end = seen[e]++; // loop: first occurrence is end 0
            } else if (inst.ev_[j][0] == i) {
                end = 0;
            } else {
                end = 1;
            }
            darts.push_back(2 * j + end);
        }
        for (size_t k = 0; k < darts.size(); ++k) {
            int d = darts[k];
            int n = darts[(k + 1) % darts.size()];
            if (inst.rot_next_[d] != -1)
                throw BuildError("malformed rotation at " + describe_vertex(v) +
                                 " (repeated dart)");
            inst.rot_next_[d] = n;
        }
    }
    for (int d = 0; d < nd; ++d) {
        if (inst.rot_next_[d] < 0)
            throw BuildError("internal rotation resolution failure");
        inst.rot_prev_[inst.rot_next_[d]] = d;
    }

    // Connected components over vertices.
    inst.comp_.assign(nv, -1);
    std::vector<std::vector<int>> adj(nv);
    for (int j = 0; j < ne; ++j) {
        adj[inst.ev_[j][0]].push_back(inst.ev_[j][1]);
        adj[inst.ev_[j][1]].push_back(inst.ev_[j][0]);
    }
    int ncomp = 0;
    for (int i = 0; i < nv; ++i) {
        if (inst.comp_[i] >= 0)
            continue;
        std::vector<int> stack{i};
        inst.comp_[i] = ncomp;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (inst.comp_[y] < 0) {
                    inst.comp_[y] = ncomp;
                    stack.push_back(y);
                }
        }
        ++ncomp;
    }
    inst.ncomp_ = ncomp;

    // Faces: orbits of (rotation o twin).
    inst.face_of_.assign(nd, -1);
    for (int d = 0; d < nd; ++d) {
        if (inst.face_of_[d] >= 0)
            continue;
        int f = static_cast<int>(inst.face_min_dart_.size());
        int mind = d;
        int x = d;
        do {
            inst.face_of_[x] = f;
            mind = std::min(mind, x);
            x = inst.face_next(x);
        } while (x != d);
        inst.face_min_dart_.push_back(mind);
    }

    // Planarity: per-component Euler check V - E + F = 2 (edgeless: F := 1).
    std::vector<int> cv(ncomp, 0), ce(ncomp, 0), cf(ncomp, 0);
    for (int i = 0; i < nv; ++i)
        ++cv[inst.comp_[i]];
    for (int j = 0; j < ne; ++j)
        ++ce[inst.comp_[inst.ev_[j][0]]];
    for (int f = 0; f < static_cast<int>(inst.face_min_dart_.size()); ++f)
        ++cf[inst.comp_[inst.dart_v_[inst.face_min_dart_[f]]]];
    inst.edgeless_components_ = 0;
    for (int c = 0; c < ncomp; ++c) {
        if (ce[c] == 0) {
            ++inst.edgeless_components_;
            continue; // single vertex: 1 implicit face, 1 - 0 + 1 = 2
        }
        if (cv[c] - ce[c] + cf[c] != 2)
            throw BuildError("non-planar embedding (Euler check failed: V=" +
                             std::to_string(cv[c]) + " E=" + std::to_string(ce[c]) +
                             " F=" + std::to_string(cf[c]) + ")");
    }

    // Orientation.
    inst.tail_end_.assign(ne, -1);
    for (const auto& [e, t] : spec.orient) {
        auto it = inst.eidx_.find(e);
        if (it == inst.eidx_.end())
            throw BuildError("orient line names unknown edge " + std::to_string(e));
        int j = it->second;
        int ti = inst.vidx_.count(t) ? inst.vidx_[t] : -1;
        if (ti == inst.ev_[j][0])
            inst.tail_end_[j] = 0;
        else if (ti == inst.ev_[j][1])
            inst.tail_end_[j] = 1;
        else
            throw BuildError("tail of edge " + std::to_string(e) + " is not an endpoint");
    }

    // Marks.
    for (const auto& v : vs) {
        auto set_mark = [&](std::optional<VertexId>& slot, const char* name) {
            if (slot)
                throw BuildError(std::string("two vertices marked ") + name);
            slot = v.id;
        };
        switch (v.mark) {
        case 0: break;
        case 'd': set_mark(inst.marks_.d, "d"); break;
        case 't': set_mark(inst.marks_.t, "t"); break;
        case 's': set_mark(inst.marks_.s, "s"); break;
        case 'r': set_mark(inst.marks_.r, "r"); break;
        default: throw BuildError("unknown mark on " + describe_vertex(v.id));
        }
    }

    // Validity gates.
    if (checked) {
        long long sum = 0;
        for (int x : inst.p_)
            sum += x;
        if (mod3(sum) != 0)
            throw BuildError("invalid prescription (sum not 0 mod 3)");
    }
    if (inst.marks_.d) {
        VertexId d = *inst.marks_.d;
        for (EdgeId e : inst.incident_edges(d))
            if (!inst.oriented(e))
                throw BuildError("directed vertex has unoriented edge " + std::to_string(e));
        if (checked && inst.residual(d) != inst.p(d))
            throw BuildError("directed-vertex residual mismatch at " + describe_vertex(d));
    }

    // Specified faces.
    if (spec.fg)
        inst.fg_dart_ = inst.resolve_dart(*spec.fg);
    if (spec.fgs)
        inst.fgs_dart_ = inst.resolve_dart(*spec.fgs);
    if (inst.fg_dart_)
        inst.fg_dart_ = inst.face_min_dart_[inst.face_of_[*inst.fg_dart_]];
    if (inst.fgs_dart_)
        inst.fgs_dart_ = inst.face_min_dart_[inst.face_of_[*inst.fgs_dart_]];

    return inst;
}

int Instance::face_count() const {
    // Orbits count each component's outer walk separately; a plane drawing
    // shares one outer face, so V - E + F = 1 + C with this convention.
    int per_component = static_cast<int>(face_min_dart_.size()) + edgeless_components_;
    return per_component - std::max(0, ncomp_ - 1);
}

VertexId Instance::edge_other(EdgeId e, VertexId v) const {
    VertexId u = edge_u(e), w = edge_v(e);
    if (u == v)
        return w;
    if (w == v)
        return u;
    throw BuildError("vertex " + std::to_string(v) + " is not an endpoint of edge " +
                     std::to_string(e));
}

int Instance::degree(VertexId v) const {
    int i = vix(v), deg = 0;
    for (int j = 0; j < edge_count(); ++j) {
        if (ev_[j][0] == i)
            ++deg;
        if (ev_[j][1] == i)
            ++deg;
    }
    return deg;
}

std::vector<EdgeId> Instance::incident_edges(VertexId v) const {
    int i = vix(v);
    std::vector<EdgeId> out;
    // walk the rotation ring if the vertex has darts
    int start = -1;
    for (int d = 0; d < dart_count() && start < 0; ++d)
        if (dart_v_[d] == i)
            start = d;
    if (start < 0)
        return out;
    int d = start;
    do {
        out.push_back(dart_edge(d));
        d = rot_next_[d];
    } while (d != start);
    return out;
}

std::vector<VertexId> Instance::neighbors(VertexId v) const {
    std::set<VertexId> out;
    for (EdgeId e : incident_edges(v)) {
        VertexId o = edge_other(e, v);
        if (o != v)
            out.insert(o);
    }
    return {out.begin(), out.end()};
}

std::optional<VertexId> Instance::tail(EdgeId e) const {
    int j = eix(e);
    if (tail_end_[j] < 0)
        return std::nullopt;
    return vids_[ev_[j][tail_end_[j]]];
}

int Instance::unoriented_count() const {
    int n = 0;
    for (int t : tail_end_)
        if (t < 0)
            ++n;
    return n;
}

Orientation Instance::fixed_orientation() const {
    Orientation o;
    for (int j = 0; j < edge_count(); ++j)
        if (tail_end_[j] >= 0)
            o[eids_[j]] = vids_[ev_[j][tail_end_[j]]];
    return o;
}

std::vector<int> Instance::face_orbit(int d) const {
    std::vector<int> out;
    int x = d;
    do {
        out.push_back(x);
        x = face_next(x);
    } while (x != d);
    return out;
}

std::optional<FaceRef> Instance::fg() const {
    if (!fg_dart_)
        return std::nullopt;
    return FaceRef::by_end(dart_edge(*fg_dart_), dart_end(*fg_dart_));
}

std::optional<FaceRef> Instance::fgs() const {
    if (!fgs_dart_)
        return std::nullopt;
    return FaceRef::by_end(dart_edge(*fgs_dart_), dart_end(*fgs_dart_));
}

int Instance::resolve_dart(const FaceRef& f) const {
    int j = eix(f.edge);
    if (f.vertex >= 0) {
        int vi = vix(f.vertex);
        if (ev_[j][0] == vi)
            return 2 * j;
        if (ev_[j][1] == vi)
            return 2 * j + 1;
        throw BuildError("face handle (" + std::to_string(f.edge) + ", " +
                         std::to_string(f.vertex) + ") does not name a dart");
    }
    if (f.end != 0 && f.end != 1)
        throw BuildError("face handle end out of range");
    return 2 * j + f.end;
}

std::vector<EdgeId> Instance::face_edges(const FaceRef& f) const {
    std::vector<EdgeId> out;
    for (int d : face_orbit(resolve_dart(f)))
        out.push_back(dart_edge(d));
    return out;
}

std::vector<VertexId> Instance::face_vertices(const FaceRef& f) const {
    std::set<VertexId> s;
    for (int d : face_orbit(resolve_dart(f)))
        s.insert(dart_vertex(d));
    return {s.begin(), s.end()};
}

bool Instance::on_face(const FaceRef& f, VertexId v) const {
    for (int d : face_orbit(resolve_dart(f)))
        if (dart_vertex(d) == v)
            return true;
    return false;
}

std::set<VertexId> Instance::specified_boundary_vertices() const {
    std::set<VertexId> s;
    for (const auto& f : {fg(), fgs()})
        if (f)
            for (int d : face_orbit(resolve_dart(*f)))
                s.insert(dart_vertex(d));
    return s;
}

std::set<EdgeId> Instance::specified_boundary_edges() const {
    std::set<EdgeId> s;
    for (const auto& f : {fg(), fgs()})
        if (f)
            for (int d : face_orbit(resolve_dart(*f)))
                s.insert(dart_edge(d));
    return s;
}

Instance Instance::with_faces(std::optional<FaceRef> fg, std::optional<FaceRef> fgs) const {
    Instance copy = *this;
    copy.fg_dart_.reset();
    copy.fgs_dart_.reset();
    if (fg)
        copy.fg_dart_ = face_min_dart_[face_of_[resolve_dart(*fg)]];
    if (fgs)
        copy.fgs_dart_ = face_min_dart_[face_of_[resolve_dart(*fgs)]];
    return copy;
}

int Instance::residual(VertexId v) const {
    return residual(v, fixed_orientation());
}

int Instance::residual(VertexId v, const Orientation& o) const {
    int i = vix(v);
    for (const auto& [e, t] : o) {
        int j = eix(e); // throws on unknown edge
        if (ev_[j][0] != vidx_.at(t) && ev_[j][1] != vidx_.at(t))
            throw BuildError("orientation tail of edge " + std::to_string(e) +
                             " is not an endpoint");
    }
    long long sum = 0;
    for (int j = 0; j < edge_count(); ++j) {
        if (ev_[j][0] == ev_[j][1])
            continue; // loops contribute 0
        auto it = o.find(eids_[j]);
        if (it == o.end())
            continue;
        int ti = vidx_.at(it->second);
        if (ti == i)
            sum -= 1; // tail here: outgoing
        else if (ev_[j][0] == i || ev_[j][1] == i)
            sum += 1; // head here: incoming
    }
    return mod3(sum);
}

VerifyReport Instance::verify(const Orientation& o) const {
    VerifyReport rep;
    for (const auto& [e, t] : o) {
        if (!eidx_.count(e) || !vidx_.count(t)) {
            rep.unknown.push_back(e);
            continue;
        }
        int j = eidx_.at(e);
        int ti = vidx_.at(t);
        if (ev_[j][0] != ti && ev_[j][1] != ti) {
            rep.unknown.push_back(e);
            continue;
        }
        if (tail_end_[j] >= 0 && ev_[j][tail_end_[j]] != ti)
            rep.fixed_mismatch.push_back(e);
    }
    for (int j = 0; j < edge_count(); ++j)
        if (!o.count(eids_[j]))
            rep.unoriented.push_back(eids_[j]);
    if (!rep.unknown.empty() || !rep.unoriented.empty())
        return rep;
    for (VertexId v : vids_) {
        int r = residual(v, o);
        if (r != p(v))
            rep.offenders.push_back({v, z3_to_signed(r), p_signed(v)});
    }
    return rep;
}

Instance Instance::with_orientations(const std::vector<std::pair<EdgeId, VertexId>>& tails) const {
    Instance copy = *this;
    for (const auto& [e, t] : tails) {
        int j = eix(e);
        int ti = vix(t);
        if (ev_[j][0] == ti)
            copy.tail_end_[j] = 0;
        else if (ev_[j][1] == ti)
            copy.tail_end_[j] = 1;
        else
            throw BuildError("tail of edge " + std::to_string(e) + " is not an endpoint");
    }
    return copy;
}

Instance Instance::with_marks(const SpecialVertices& m) const {
    Instance copy = *this;
    for (const auto& slot : {m.d, m.t, m.s, m.r})
        if (slot)
            (void)vix(*slot);
    copy.marks_ = m;
    if (m.d) {
        for (EdgeId e : incident_edges(*m.d))
            if (!oriented(e))
                throw BuildError("directed vertex has unoriented edge " + std::to_string(e));
        if (residual(*m.d) != p(*m.d))
            throw BuildError("directed-vertex residual mismatch at vertex " +
                             std::to_string(*m.d));
    }
    return copy;
}

BuildSpec Instance::to_spec() const {
    BuildSpec spec;
    for (int i = 0; i < vertex_count(); ++i) {
        char mark = 0;
        VertexId v = vids_[i];
        if (marks_.d && *marks_.d == v)
            mark = 'd';
        else if (marks_.t && *marks_.t == v)
            mark = 't';
        else if (marks_.s && *marks_.s == v)
            mark = 's';
        else if (marks_.r && *marks_.r == v)
            mark = 'r';
        spec.vertices.push_back({v, z3_to_signed(p_[i]), mark});
    }
    for (int j = 0; j < edge_count(); ++j)
        spec.edges.push_back({eids_[j], vids_[ev_[j][0]], vids_[ev_[j][1]]});
    for (int i = 0; i < vertex_count(); ++i) {
        VertexId v = vids_[i];
        std::vector<EdgeId> ring = incident_edges(v);
        if (!ring.empty())
            spec.rotation[v] = ring;
    }
    for (int j = 0; j < edge_count(); ++j)
        if (tail_end_[j] >= 0)
            spec.orient[eids_[j]] = vids_[ev_[j][tail_end_[j]]];
    spec.fg = fg();
    spec.fgs = fgs();
    return spec;
}

namespace {

std::vector<EdgeId> normalized_ring(std::vector<EdgeId> ring) {
    if (ring.empty())
        return ring;
    size_t best = 0;
    for (size_t k = 1; k < ring.size(); ++k) {
        std::vector<EdgeId> a(ring.begin() + k, ring.end());
        a.insert(a.end(), ring.begin(), ring.begin() + k);
        std::vector<EdgeId> b(ring.begin() + best, ring.end());
        b.insert(b.end(), ring.begin(), ring.begin() + best);
        if (a < b)
            best = k;
    }
    std::rotate(ring.begin(), ring.begin() + best, ring.end());
    return ring;
}

std::vector<EdgeId> sorted_face_edges(const Instance& inst, const std::optional<FaceRef>& f) {
    if (!f)
        return {};
    auto e = inst.face_edges(*f);
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

bool Instance::structurally_equal(const Instance& o) const {
    if (vids_ != o.vids_ || eids_ != o.eids_)
        return false;
    for (int j = 0; j < edge_count(); ++j) {
        if (edge_u(eids_[j]) != o.edge_u(eids_[j]) || edge_v(eids_[j]) != o.edge_v(eids_[j]))
            return false;
        if (tail(eids_[j]) != o.tail(eids_[j]))
            return false;
    }
    for (VertexId v : vids_) {
        if (p(v) != o.p(v))
            return false;
        if (normalized_ring(incident_edges(v)) != normalized_ring(o.incident_edges(v)))
            return false;
    }
    auto mark_tuple = [](const SpecialVertices& m) {
        return std::array<int, 4>{m.d.value_or(-1), m.t.value_or(-1), m.s.value_or(-1),
                                  m.r.value_or(-1)};
    };
    if (mark_tuple(marks_) != mark_tuple(o.marks_))
        return false;
    if (sorted_face_edges(*this, fg()) != sorted_face_edges(o, o.fg()))
        return false;
    if (sorted_face_edges(*this, fgs()) != sorted_face_edges(o, o.fgs()))
        return false;
    return true;
}

} // namespace z3o
