#include "z3o/mutate.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace z3o {

namespace {

struct Ring {
    // (edge, end) pairs in rotation order
    std::vector<std::pair<EdgeId, int>> darts;
};

// Mutable external-level model shared by the mutation implementations.
struct Model {
    std::map<VertexId, int> p; // canonical
    std::map<VertexId, Ring> rings;
    std::map<EdgeId, std::array<VertexId, 2>> edges;
    std::map<EdgeId, int> tail_end;
    SpecialVertices marks;

    static Model of(const Instance& inst) {
        Model m;
        for (VertexId v : inst.vertex_ids()) {
            m.p[v] = inst.p(v);
            Ring r;
            if (inst.degree(v) > 0) {
                // walk the ring at dart level to keep ends
                int start = -1;
                for (int d = 0; d < inst.dart_count() && start < 0; ++d)
                    if (inst.dart_vertex(d) == v)
                        start = d;
                int d = start;
                do {
                    r.darts.push_back({inst.dart_edge(d), inst.dart_end(d)});
                    d = inst.rot_next(d);
                } while (d != start);
            }
            m.rings[v] = std::move(r);
        }
        for (EdgeId e : inst.edge_ids()) {
            m.edges[e] = {inst.edge_u(e), inst.edge_v(e)};
            if (auto t = inst.tail(e))
                m.tail_end[e] = (*t == inst.edge_u(e)) ? 0 : 1;
        }
        m.marks = inst.marks();
        return m;
    }

    BuildSpec to_spec() const {
        BuildSpec s;
        for (const auto& [v, pc] : p) {
            char mark = 0;
            if (marks.d && *marks.d == v)
                mark = 'd';
            else if (marks.t && *marks.t == v)
                mark = 't';
            else if (marks.s && *marks.s == v)
                mark = 's';
            else if (marks.r && *marks.r == v)
                mark = 'r';
            s.vertices.push_back({v, z3_to_signed(pc), mark});
        }
        for (const auto& [e, uv] : edges)
            s.edges.push_back({e, uv[0], uv[1]});
        for (const auto& [v, r] : rings) {
            if (r.darts.empty())
                continue;
            std::vector<EdgeId> ids;
            for (auto [e, end] : r.darts)
                ids.push_back(e);
            s.rotation[v] = ids;
        }
        for (const auto& [e, te] : tail_end)
            s.orient[e] = edges.at(e)[te];
        return s;
    }

    void erase_dart(VertexId v, EdgeId e, int end) {
        auto& d = rings.at(v).darts;
        auto it = std::find(d.begin(), d.end(), std::make_pair(e, end));
        assert(it != d.end());
        d.erase(it);
    }

    // Remove the edge from rings and tables. Returns its tail if oriented.
    std::optional<VertexId> erase_edge(EdgeId e) {
        auto uv = edges.at(e);
        erase_dart(uv[0], e, 0);
        erase_dart(uv[1], e, 1);
        std::optional<VertexId> t;
        if (auto it = tail_end.find(e); it != tail_end.end()) {
            t = uv[it->second];
            tail_end.erase(it);
        }
        edges.erase(e);
        return t;
    }

    void fold_oriented_contribution(EdgeId e) {
        // Called before erasing an oriented non-loop edge: the endpoints'
        // prescriptions absorb its residual contribution.
        auto uv = edges.at(e);
        if (uv[0] == uv[1])
            return;
        auto it = tail_end.find(e);
        if (it == tail_end.end())
            return;
        VertexId t = uv[it->second], h = uv[1 - it->second];
        p[t] = mod3(p[t] + 1);
        p[h] = mod3(p[h] - 1);
    }
};

// Re-identify a parent specified face in the child through a surviving
// boundary dart.
std::optional<FaceRef> surviving_face(const Instance& parent, const Instance& child,
                                      const std::optional<FaceRef>& f,
                                      const std::set<EdgeId>& gone) {
    if (!f)
        return std::nullopt;
    for (int d : parent.face_orbit(parent.resolve_dart(*f))) {
        EdgeId e = parent.dart_edge(d);
        if (gone.count(e) || !child.has_edge(e))
            continue;
        return FaceRef::by_end(e, parent.dart_end(d));
    }
    return std::nullopt;
}

// Rule 2 style fallback: a face incident with `at` (else any face), by
// minimum handle, excluding `avoid`.
std::optional<FaceRef> fallback_face(const Instance& child, VertexId at, int avoid_face) {
    int best = -1;
    for (int f = 0; f < child.face_orbit_count(); ++f) {
        if (f == avoid_face)
            continue;
        bool ok = at < 0;
        if (!ok)
            for (int d : child.face_orbit(child.face_canonical_dart(f)))
                if (child.dart_vertex(d) == at) {
                    ok = true;
                    break;
                }
        if (ok) {
            best = f;
            break; // faces are indexed by ascending canonical dart already
        }
    }
    if (best < 0 && avoid_face >= 0)
        best = avoid_face;
    if (best < 0)
        return std::nullopt;
    int d = child.face_canonical_dart(best);
    return FaceRef::by_end(child.dart_edge(d), child.dart_end(d));
}

// Shared tail end of face handling: resolve both faces in the child,
// collapsing duplicates per the "only one specified face remains" notes.
void attach_faces(const Instance& parent, Instance& child, Mutation& m,
                  const std::set<EdgeId>& gone, VertexId contraction_at) {
    auto fg = surviving_face(parent, child, parent.fg(), gone);
    auto fgs = surviving_face(parent, child, parent.fgs(), gone);
    bool had_fg = parent.fg().has_value();
    bool had_fgs = parent.fgs().has_value();
    if (had_fg && !fg) {
        fg = fallback_face(child, contraction_at, -1);
    }
    if (fg && fgs) {
        int a = child.face_index(child.resolve_dart(*fg));
        int b = child.face_index(child.resolve_dart(*fgs));
        if (a == b) {
            fgs.reset(); // merged; second face may be chosen later if needed
            m.faces_merged = true;
        }
    } else if (had_fgs && !fgs) {
        m.faces_merged = true;
    }
    child = child.with_faces(fg, fgs);
}

} // namespace

Orientation Mutation::pull_back(const Orientation& child_o) const {
    if (!dropped_unoriented.empty())
        throw MutationError("mutation removed unoriented edges; no total pull-back exists");
    Orientation out;
    for (const auto& [e, t] : child_o) {
        if (lift && e == lift->lifted) {
            if (t == lift->u) {
                out[lift->e1] = lift->u;
                out[lift->e2] = lift->mid;
            } else {
                out[lift->e2] = lift->w;
                out[lift->e1] = lift->mid;
            }
            continue;
        }
        VertexId tail = t;
        if (tail == contraction_vertex) {
            for (const auto& me : moved_ends)
                if (me.edge == e) {
                    tail = me.old_vertex;
                    break;
                }
        }
        out[e] = tail;
    }
    for (const auto& [e, t] : committed)
        out[e] = t;
    return out;
}

Orientation pull_back_chain(const std::vector<Mutation>& chain, const Orientation& leaf_o) {
    Orientation o = leaf_o;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        o = it->pull_back(o);
    return o;
}

Mutation delete_edge(const Instance& inst, EdgeId e) {
    (void)inst.edge_u(e); // validates
    Model m = Model::of(inst);
    Mutation out{Instance::build_unchecked(BuildSpec{})};
    m.fold_oriented_contribution(e);
    if (auto t = m.erase_edge(e))
        out.committed.push_back({e, *t});
    else
        out.dropped_unoriented.push_back(e);
    out.child = Instance::build(m.to_spec());
    attach_faces(inst, out.child, out, {e}, -1);
    out.disconnected = out.child.component_count() > inst.component_count();
    return out;
}

Mutation delete_vertex(const Instance& inst, VertexId v) {
    Mutation out{Instance::build_unchecked(BuildSpec{})};
    std::set<EdgeId> gone;
    for (EdgeId e : inst.incident_edges(v)) {
        gone.insert(e);
        if (!inst.is_loop(e) && !inst.oriented(e))
            throw MutationError("delete_vertex requires oriented incident edges (edge " +
                                std::to_string(e) + ")");
    }
    if (inst.residual(v) != inst.p(v))
        throw MutationError("delete_vertex: residual does not meet the prescription at " +
                            std::to_string(v));
    Model m = Model::of(inst);
    for (EdgeId e : gone) {
        m.fold_oriented_contribution(e);
        if (auto t = m.erase_edge(e))
            out.committed.push_back({e, *t});
    }
    m.p.erase(v);
    m.rings.erase(v);
    auto clear_mark = [&](std::optional<VertexId>& slot) {
        if (slot && *slot == v)
            slot.reset();
    };
    clear_mark(m.marks.d);
    clear_mark(m.marks.t);
    clear_mark(m.marks.s);
    clear_mark(m.marks.r);
    out.child = Instance::build(m.to_spec());
    attach_faces(inst, out.child, out, gone, -1);
    out.disconnected = out.child.component_count() > inst.component_count();
    return out;
}

Mutation contract(const Instance& inst, const std::set<VertexId>& S) {
    if (S.empty())
        throw MutationError("contract: empty set");
    for (VertexId v : S)
        (void)inst.degree(v);

    // Connectivity of G[S].
    {
        std::set<VertexId> seen{*S.begin()};
        std::vector<VertexId> stack{*S.begin()};
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (EdgeId e : inst.incident_edges(x)) {
                VertexId y = inst.edge_other(e, x);
                if (S.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    stack.push_back(y);
                }
            }
        }
        if (seen.size() != S.size())
            throw MutationError("contract: S does not induce a connected subgraph");
    }

    // Face precondition: internal boundary edges of each specified face form
    // one contiguous arc of the orbit (or none, or all of it).
    auto internal = [&](EdgeId e) {
        return S.count(inst.edge_u(e)) && S.count(inst.edge_v(e));
    };
    for (const auto& f : {inst.fg(), inst.fgs()}) {
        if (!f)
            continue;
        auto orbit = inst.face_orbit(inst.resolve_dart(*f));
        int n = static_cast<int>(orbit.size());
        int blocks = 0;
        for (int k = 0; k < n; ++k) {
            bool cur = internal(inst.dart_edge(orbit[k]));
            bool prev = internal(inst.dart_edge(orbit[(k + n - 1) % n]));
            if (cur && !prev)
                ++blocks;
        }
        if (blocks > 1)
            throw MutationError("contract: face intersection is not a single path");
    }

    Mutation out{Instance::build_unchecked(BuildSpec{})};
    Model m = Model::of(inst);
    VertexId c = inst.vertex_ids().empty() ? 0 : inst.vertex_ids().back() + 1;
    std::set<EdgeId> gone;

    // Merge one internal edge at a time; rings join via the standard planar
    // edge contraction splice. cur[] tracks the merged id of each original.
    std::map<VertexId, VertexId> cur;
    for (VertexId v : S)
        cur[v] = v;
    auto root = [&](VertexId v) {
        while (cur[v] != v)
            v = cur[v];
        return v;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& [e, uv] : m.edges) {
            if (!S.count(uv[0]) || !S.count(uv[1]))
                continue;
            VertexId x = root(uv[0]), y = root(uv[1]);
            if (x == y)
                continue;
            // contract edge e, merging y into x
            auto& rx = m.rings.at(x).darts;
            auto& ry = m.rings.at(y).darts;
            // which end of e currently sits in x's ring
            auto at_x = std::find(rx.begin(), rx.end(), std::make_pair(e, 0));
            int ex = 0;
            if (at_x == rx.end()) {
                at_x = std::find(rx.begin(), rx.end(), std::make_pair(e, 1));
                ex = 1;
            }
            assert(at_x != rx.end());
            auto at_y = std::find(ry.begin(), ry.end(), std::make_pair(e, 1 - ex));
            assert(at_y != ry.end());
            // splice: replace e's dart at x by y's ring rotated to start
            // after e's dart at y
            std::vector<std::pair<EdgeId, int>> spliced;
            spliced.insert(spliced.end(), rx.begin(), at_x);
            for (auto it = at_y + 1; it != ry.end(); ++it)
                spliced.push_back(*it);
            for (auto it = ry.begin(); it != at_y; ++it)
                spliced.push_back(*it);
            spliced.insert(spliced.end(), at_x + 1, rx.end());
            rx = std::move(spliced);
            m.rings.erase(y);
            m.tail_end.erase(e);
            m.edges.erase(e);
            gone.insert(e);
            cur[y] = x;
            // re-point y's edge ends to x
            for (auto& [e2, uv2] : m.edges) {
                if (uv2[0] == y)
                    uv2[0] = x;
                if (uv2[1] == y)
                    uv2[1] = x;
            }
            progress = true;
            break;
        }
    }
    VertexId host = root(*S.begin());

    // Remaining internal edges are loops at host now: remove them.
    {
        std::vector<EdgeId> loops;
        for (const auto& [e, uv] : m.edges)
            if (uv[0] == host && uv[1] == host)
                loops.push_back(e);
        for (EdgeId e : loops) {
            m.erase_edge(e);
            gone.insert(e);
        }
    }

    // Fold prescriptions, relabel host -> c, record moved ends.
    long long psum = 0;
    for (VertexId v : S)
        psum += inst.p(v);
    for (VertexId v : S) {
        m.p.erase(v);
        if (v != host)
            m.rings.erase(v);
    }
    Ring hostRing = m.rings.count(host) ? m.rings.at(host) : Ring{};
    m.rings.erase(host);
    m.rings[c] = hostRing;
    m.p[c] = mod3(psum);
    for (auto& [e, uv] : m.edges) {
        for (int end = 0; end < 2; ++end) {
            if (uv[end] == host || S.count(uv[end])) {
                VertexId original = end == 0 ? inst.edge_u(e) : inst.edge_v(e);
                out.moved_ends.push_back({e, end, original});
                uv[end] = c;
            }
        }
    }
    out.contraction_vertex = c;

    // Marks: members of S lose theirs; d transfers to c when the result is
    // fully oriented at c.
    auto in_S = [&](const std::optional<VertexId>& slot) { return slot && S.count(*slot); };
    bool d_inside = in_S(m.marks.d);
    if (in_S(m.marks.t))
        m.marks.t.reset();
    if (in_S(m.marks.s))
        m.marks.s.reset();
    if (in_S(m.marks.r))
        m.marks.r.reset();
    if (d_inside)
        m.marks.d.reset();
    if (!m.marks.d) {
        // a fully oriented contraction vertex is a directed vertex
        bool all_oriented = !m.rings[c].darts.empty();
        for (auto [e, end] : m.rings[c].darts)
            if (!m.tail_end.count(e))
                all_oriented = false;
        if (all_oriented)
            m.marks.d = c;
    }

    out.child = Instance::build(m.to_spec());
    attach_faces(inst, out.child, out, gone, c);
    return out;
}

Mutation lift(const Instance& inst, EdgeId e1, EdgeId e2) {
    if (e1 == e2)
        throw MutationError("lift: edges must be distinct");
    if (inst.is_loop(e1) || inst.is_loop(e2))
        throw MutationError("lift: loops cannot be lifted");
    if (inst.oriented(e1) || inst.oriented(e2))
        throw MutationError("lift: only unoriented pairs are lifted");

    // shared vertex with the two darts consecutive in its rotation
    VertexId mid = -1;
    int d1 = -1, d2 = -1;
    for (int end1 = 0; end1 < 2 && mid < 0; ++end1)
        for (int end2 = 0; end2 < 2 && mid < 0; ++end2) {
            int a = inst.dart(e1, end1), b = inst.dart(e2, end2);
            if (inst.dart_vertex(a) != inst.dart_vertex(b))
                continue;
            if (inst.rot_next(a) == b || inst.rot_next(b) == a) {
                mid = inst.dart_vertex(a);
                d1 = a;
                d2 = b;
            }
        }
    if (mid < 0)
        throw MutationError("lift: edges are not consecutive at a common vertex");

    VertexId u = inst.edge_other(e1, mid);
    VertexId w = inst.edge_other(e2, mid);

    Model m = Model::of(inst);
    EdgeId g = inst.edge_ids().back() + 1;
    // replace e1's dart at u by (g,0) and e2's dart at w by (g,1)
    auto replace = [&](VertexId v, EdgeId olde, int oldend, EdgeId newe, int newend) {
        auto& r = m.rings.at(v).darts;
        auto it = std::find(r.begin(), r.end(), std::make_pair(olde, oldend));
        assert(it != r.end());
        *it = {newe, newend};
    };
    replace(u, e1, 1 - inst.dart_end(d1), g, 0);
    replace(w, e2, 1 - inst.dart_end(d2), g, 1);
    m.erase_dart(mid, e1, inst.dart_end(d1));
    m.erase_dart(mid, e2, inst.dart_end(d2));
    m.edges.erase(e1);
    m.edges.erase(e2);
    m.edges[g] = {u, w};

    Mutation out{Instance::build_unchecked(BuildSpec{})};
    out.lift = Mutation::LiftRec{g, e1, e2, u, mid, w};
    out.child = Instance::build(m.to_spec());
    attach_faces(inst, out.child, out, {e1, e2}, -1);
    return out;
}

std::optional<std::vector<std::pair<EdgeId, VertexId>>>
orientation_satisfying(const Instance& inst, VertexId v) {
    std::vector<EdgeId> free;
    for (EdgeId e : inst.incident_edges(v))
        if (!inst.oriented(e) && !inst.is_loop(e))
            free.push_back(e);
    std::sort(free.begin(), free.end());
    free.erase(std::unique(free.begin(), free.end()), free.end());
    int k = static_cast<int>(free.size());
    int target = mod3(inst.p(v) - inst.residual(v));
    // choose the smallest inward count m with 2m - k = target (mod 3)
    int m = -1;
    for (int cand = 0; cand <= k; ++cand)
        if (mod3(2 * cand - k) == target) {
            m = cand;
            break;
        }
    if (m < 0)
        return std::nullopt;
    std::vector<std::pair<EdgeId, VertexId>> tails;
    for (int i = 0; i < k; ++i) {
        VertexId other = inst.edge_other(free[i], v);
        tails.push_back({free[i], i < m ? other : v}); // first m point inward
    }
    // loops at v may be oriented freely; pin them for totality downstream
    for (EdgeId e : inst.incident_edges(v))
        if (!inst.oriented(e) && inst.is_loop(e))
            tails.push_back({e, v});
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
    return tails;
}

} // namespace z3o
