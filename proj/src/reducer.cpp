#include "z3o/reducer.hpp"

#include <algorithm>
#include <memory>

#include "z3o/grow.hpp"
#include "z3o/mutate.hpp"

namespace z3o {

const char* step_name(StepKind k) {
    switch (k) {
    case StepKind::Base: return "base";
    case StepKind::OrientVertex: return "orient-vertex";
    case StepKind::DeleteBoundaryEdge: return "delete-boundary-edge";
    case StepKind::CutSplit: return "cut-split";
    case StepKind::ChordSplit: return "chord-split";
    case StepKind::LiftAndDelete: return "lift-and-delete";
    case StepKind::ContractParallelAtD: return "contract-parallel-at-d";
    }
    return "?";
}

Measure measure_of(const Instance& inst) {
    return {inst.edge_count(), inst.unoriented_count()};
}

Instance normalize_marks(const Instance& inst) {
    SpecialVertices m = inst.marks();
    auto taken = [&](VertexId v) {
        return (m.d && *m.d == v) || (m.t && *m.t == v) || (m.s && *m.s == v) ||
               (m.r && *m.r == v);
    };
    for (VertexId v : inst.vertex_ids()) {
        if (inst.degree(v) != 3 || taken(v))
            continue;
        if (!m.t)
            m.t = v;
        else if (!m.s)
            m.s = v;
        else if (!m.r && !m.d)
            m.r = v;
    }
    try {
        return inst.with_marks(m);
    } catch (const BuildError&) {
        return inst;
    }
}

namespace {

struct StepFail : MutationError {
    using MutationError::MutationError;
};

bool guarded(const Instance& parent, const Instance& child) {
    if (!(measure_of(child) < measure_of(parent)))
        return false;
    return any_class(child).has_value();
}

void require(bool ok, const char* why) {
    if (!ok)
        throw StepFail(why);
}

// merge orientations that must agree where they overlap
void merge_into(Orientation& into, const Orientation& from) {
    for (const auto& [e, t] : from) {
        auto it = into.find(e);
        if (it != into.end() && it->second != t)
            throw StepFail("recombination conflict");
        into[e] = t;
    }
}

int contribution_at(const Instance& inst, const Orientation& o, VertexId v, EdgeId e) {
    if (inst.is_loop(e))
        return 0;
    if (inst.edge_u(e) != v && inst.edge_v(e) != v)
        return 0;
    auto it = o.find(e);
    if (it == o.end())
        return 0;
    return it->second == v ? -1 : +1;
}

// ---------------------------------------------------------------------------
// sub-instance extraction (ChordSplit)
// ---------------------------------------------------------------------------

// Extract one side of a split. The side's prescriptions do not sum to zero
// on their own, so `balance_at` absorbs the difference; callers place it on
// a vertex whose individual prescription is about to be overridden anyway.
Instance sub_instance(const Instance& inst, const std::set<VertexId>& verts,
                      const std::set<EdgeId>& edges, const SpecialVertices& marks,
                      VertexId balance_at) {
    BuildSpec s;
    long long rest = 0;
    for (VertexId v : verts) {
        char mark = 0;
        if (marks.d && *marks.d == v)
            mark = 'd';
        else if (marks.t && *marks.t == v)
            mark = 't';
        else if (marks.s && *marks.s == v)
            mark = 's';
        else if (marks.r && *marks.r == v)
            mark = 'r';
        s.vertices.push_back({v, inst.p_signed(v), mark});
        if (v != balance_at)
            rest += inst.p(v);
    }
    for (auto& vs : s.vertices)
        if (vs.id == balance_at)
            vs.p = z3_to_signed(mod3(-rest));
    for (EdgeId e : edges)
        s.edges.push_back({e, inst.edge_u(e), inst.edge_v(e)});
    for (VertexId v : verts) {
        std::vector<EdgeId> ring;
        for (EdgeId e : inst.incident_edges(v))
            if (edges.count(e))
                ring.push_back(e);
        if (!ring.empty())
            s.rotation[v] = ring;
    }
    for (EdgeId e : edges)
        if (auto t = inst.tail(e))
            s.orient[e] = *t;
    return Instance::build(s);
}

std::optional<FaceRef> side_face(const Instance& inst, const std::optional<FaceRef>& f,
                                 const std::set<EdgeId>& edges) {
    if (!f)
        return std::nullopt;
    for (int d : inst.face_orbit(inst.resolve_dart(*f))) {
        if (edges.count(inst.dart_edge(d)))
            return FaceRef::by_end(inst.dart_edge(d), inst.dart_end(d));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// step plans
// ---------------------------------------------------------------------------

StepPlan make_contract_parallel_at_d(const Instance& inst, VertexId partner) {
    const auto& m = inst.marks();
    require(m.d.has_value(), "no directed vertex");
    VertexId d = *m.d;
    int parallels = 0;
    for (EdgeId e : inst.incident_edges(d))
        if (inst.edge_other(e, d) == partner)
            ++parallels;
    require(parallels >= 2, "not parallel-adjacent");
    require(inst.degree(partner) <= 4, "partner degree too high");
    auto tails = orientation_satisfying(inst, partner);
    require(tails.has_value(), "partner cannot be oriented");
    Instance oriented = inst.with_orientations(*tails);
    auto mu = std::make_shared<Mutation>(contract(oriented, {d, partner}));
    Instance child = normalize_marks(mu->child);
    require(guarded(inst, child), "child fails class guard");

    StepPlan plan;
    plan.first = {child};
    Orientation fixed = oriented.fixed_orientation();
    plan.glue = [mu, fixed](const std::vector<Orientation>& sols) {
        Orientation o = mu->pull_back(sols.at(0));
        for (const auto& [e, t] : fixed)
            if (!o.count(e))
                o[e] = t;
        return o;
    };
    return plan;
}

struct CutSplitState {
    Mutation mu1{Instance::build_unchecked(BuildSpec{})};
    std::optional<Mutation> mu2;
    std::optional<Mutation> del2;
};

// Deterministic placeholder directions making the contracted A-side vertex
// consistent; the real directions come from child1's solution.
std::vector<std::pair<EdgeId, VertexId>>
cut_placeholder(const Instance& inst, const Cut& cut, const std::set<VertexId>& A) {
    std::vector<EdgeId> free;
    int fixed_in = 0;
    for (EdgeId e : cut.edges) {
        if (auto t = inst.tail(e))
            fixed_in += A.count(*t) ? -1 : +1;
        else
            free.push_back(e);
    }
    long long pa = 0;
    for (VertexId v : A)
        pa += inst.p(v);
    int target = mod3(pa - fixed_in);
    int k = static_cast<int>(free.size());
    int m = -1;
    for (int cand = 0; cand <= k; ++cand)
        if (mod3(2 * cand - k) == target) {
            m = cand;
            break;
        }
    require(m >= 0, "cut directions cannot satisfy the contracted prescription");
    std::sort(free.begin(), free.end());
    std::vector<std::pair<EdgeId, VertexId>> tails;
    for (int i = 0; i < k; ++i) {
        EdgeId e = free[i];
        VertexId u = inst.edge_u(e), v = inst.edge_v(e);
        VertexId inside = A.count(u) ? u : v;
        VertexId outside = inside == u ? v : u;
        tails.push_back({e, i < m ? outside : inside}); // first m point into A
    }
    return tails;
}

// contract A to a directed vertex; for 6-cuts also orient-delete one
// boundary edge at it
std::pair<Instance, std::pair<Mutation, std::optional<Mutation>>>
build_cut_child2(const Instance& oriented, const std::set<VertexId>& A, int cut_size) {
    Mutation mu2 = contract(oriented, A);
    Instance child = mu2.child;
    std::optional<Mutation> del2;
    if (cut_size >= 6) {
        require(child.fg().has_value(), "no specified face for boundary deletion");
        auto boundary = child.face_edges(*child.fg());
        std::set<EdgeId> bset(boundary.begin(), boundary.end());
        EdgeId pick = -1;
        for (EdgeId e : child.incident_edges(mu2.contraction_vertex))
            if (bset.count(e) && (pick < 0 || e < pick))
                pick = e;
        require(pick >= 0, "contracted vertex is off the specified boundary");
        del2 = delete_edge(child, pick);
        child = del2->child;
    }
    return {normalize_marks(child), {std::move(mu2), std::move(del2)}};
}

StepPlan make_cut_split(const Instance& inst, const Cut& cut) {
    std::set<VertexId> sideA(cut.side_a.begin(), cut.side_a.end());
    std::set<VertexId> other;
    for (VertexId v : inst.vertex_ids())
        if (!sideA.count(v))
            other.insert(v);
    // A = the side holding d (convention), else the side holding the minimum
    // vertex id.
    std::set<VertexId> A, B;
    const auto& marks = inst.marks();
    if (marks.d) {
        A = sideA.count(*marks.d) ? sideA : other;
    } else {
        A = other; // canonical side_a excludes the minimum vertex
    }
    B = (A == sideA) ? other : sideA;
    require(A.size() >= 2 && B.size() >= 2, "cut is not 2-robust");

    auto state = std::make_shared<CutSplitState>();
    state->mu1 = contract(inst, B);
    Instance child1 = normalize_marks(state->mu1.child);
    require(guarded(inst, child1), "first child fails class guard");

    // structural pre-check of the second child under placeholder directions
    {
        Instance placeholder = inst.with_orientations(cut_placeholder(inst, cut, A));
        auto [probe, _] = build_cut_child2(placeholder, A, cut.size);
        require(guarded(inst, probe), "second child fails class guard");
    }

    StepPlan plan;
    plan.first = {child1};
    Instance parent = inst;
    Cut cut_copy = cut;
    std::set<VertexId> A_copy = A;
    plan.second = [state, parent, cut_copy, A_copy](const Orientation& o1) {
        Orientation po = state->mu1.pull_back(o1);
        std::vector<std::pair<EdgeId, VertexId>> tails;
        for (EdgeId e : cut_copy.edges)
            if (!parent.oriented(e))
                tails.push_back({e, po.at(e)});
        Instance oriented = parent.with_orientations(tails);
        auto [child, mus] = build_cut_child2(oriented, A_copy, cut_copy.size);
        state->mu2 = std::move(mus.first);
        state->del2 = std::move(mus.second);
        return child;
    };
    plan.glue = [state](const std::vector<Orientation>& sols) {
        Orientation o = state->mu1.pull_back(sols.at(0));
        Orientation o2 = sols.at(1);
        if (state->del2)
            o2 = state->del2->pull_back(o2);
        o2 = state->mu2->pull_back(o2);
        merge_into(o, o2);
        return o;
    };
    return plan;
}

struct ChordSides {
    std::set<VertexId> h_verts, k_verts; // exclude u, v
    std::set<EdgeId> h_edges, k_edges;   // chord belongs to both
};

// Split G along a chord uv of F_G into the two closed sides. Side 1 holds
// the boundary arc the face walk enters right after u; side 2 the rest.
ChordSides chord_sides(const Instance& inst, EdgeId chord, VertexId u, VertexId v) {
    auto fg = inst.fg();
    require(fg.has_value(), "no specified face");
    auto orbit = inst.face_orbit(inst.resolve_dart(*fg));

    std::vector<VertexId> walk;
    for (int d : orbit)
        walk.push_back(inst.dart_vertex(d));
    require(std::count(walk.begin(), walk.end(), u) == 1 &&
                std::count(walk.begin(), walk.end(), v) == 1,
            "boundary is pinched at the chord");
    size_t iu = std::find(walk.begin(), walk.end(), u) - walk.begin();
    std::rotate(walk.begin(), walk.begin() + iu, walk.end());
    std::rotate(orbit.begin(), orbit.begin() + iu, orbit.end());
    size_t iv = std::find(walk.begin(), walk.end(), v) - walk.begin();
    std::set<VertexId> arc1(walk.begin() + 1, walk.begin() + iv);
    std::set<VertexId> arc2(walk.begin() + iv + 1, walk.end());

    // components of G - {u, v}
    std::map<VertexId, int> comp;
    int ncomp = 0;
    for (VertexId x : inst.vertex_ids()) {
        if (x == u || x == v || comp.count(x))
            continue;
        std::vector<VertexId> stack{x};
        comp[x] = ncomp;
        while (!stack.empty()) {
            VertexId y = stack.back();
            stack.pop_back();
            for (EdgeId e : inst.incident_edges(y)) {
                VertexId z = inst.edge_other(e, y);
                if (z == u || z == v || comp.count(z))
                    continue;
                comp[z] = ncomp;
                stack.push_back(z);
            }
        }
        ++ncomp;
    }
    std::vector<int> side(ncomp, 0);
    for (const auto& [x, c] : comp) {
        int want = arc1.count(x) ? 1 : arc2.count(x) ? 2 : 0;
        if (want) {
            require(side[c] == 0 || side[c] == want, "component touches both arcs");
            side[c] = want;
        }
    }

    // Rotation fan sweep at a chord endpoint: its ring runs [A', L,
    // interior...] with the F_G corner between A' and L, where L is the
    // boundary dart the face walk leaves on. Interior darts before the
    // chord dart belong to the side L enters; after it, the other side.
    std::map<EdgeId, int> uv_edge_side; // parallel u-v and boundary u-v edges
    auto sweep = [&](VertexId at, int first_zone) {
        int L = -1, Aprime = -1;
        for (int d : orbit) {
            if (inst.dart_vertex(d) == at)
                L = d;
            if (inst.dart_vertex(Instance::twin(d)) == at)
                Aprime = Instance::twin(d);
        }
        require(L >= 0 && Aprime >= 0, "chord endpoint off the boundary");
        if (inst.edge_other(inst.dart_edge(L), at) == (at == u ? v : u))
            uv_edge_side[inst.dart_edge(L)] = first_zone;
        if (inst.edge_other(inst.dart_edge(Aprime), at) == (at == u ? v : u))
            uv_edge_side[inst.dart_edge(Aprime)] = first_zone == 1 ? 2 : 1;
        int zone = first_zone;
        for (int cur = inst.rot_next(L); cur != Aprime && cur != L;
             cur = inst.rot_next(cur)) {
            EdgeId e = inst.dart_edge(cur);
            if (e == chord) {
                zone = first_zone == 1 ? 2 : 1;
                continue;
            }
            VertexId z = inst.edge_other(e, at);
            if (z == u || z == v) {
                if (!uv_edge_side.count(e))
                    uv_edge_side[e] = zone;
            } else if (comp.count(z) && side[comp.at(z)] == 0) {
                side[comp.at(z)] = zone;
            }
        }
    };
    sweep(u, 1); // u's leaving dart heads into arc1
    sweep(v, 2); // v's leaving dart heads into arc2
    for (const auto& [x, c] : comp)
        require(side[c] != 0, "component side undecided");

    ChordSides out;
    for (const auto& [x, c] : comp)
        (side[c] == 1 ? out.h_verts : out.k_verts).insert(x);
    for (EdgeId e : inst.edge_ids()) {
        if (e == chord) {
            out.h_edges.insert(e);
            out.k_edges.insert(e);
            continue;
        }
        VertexId a = inst.edge_u(e), b = inst.edge_v(e);
        auto side_of = [&](VertexId x) -> int {
            if (x == u || x == v)
                return 0;
            return side[comp.at(x)];
        };
        int sa = side_of(a), sb = side_of(b);
        int s = 0;
        if (sa == 0 && sb == 0) {
            auto it = uv_edge_side.find(e);
            require(it != uv_edge_side.end(), "u-v edge side undecided");
            s = it->second;
        } else {
            require(sa == 0 || sb == 0 || sa == sb, "edge crosses the chord split");
            s = sa != 0 ? sa : sb;
        }
        (s == 1 ? out.h_edges : out.k_edges).insert(e);
    }
    return out;
}

struct ChordState {
    Mutation mu1{Instance::build_unchecked(BuildSpec{})};
    Orientation committed_u;           // chord + u's K-side edges
    std::optional<EdgeId> eprime;      // added directed edge in child2
};

StepPlan make_chord_split(const Instance& inst, EdgeId chord, VertexId u) {
    require(inst.fg().has_value(), "no specified face");
    require(!inst.is_loop(chord), "loop chord");
    VertexId v = inst.edge_other(chord, u);
    const auto& marks = inst.marks();
    require(!(marks.d && (*marks.d == u || *marks.d == v)), "chord at the directed vertex");

    ChordSides sides = chord_sides(inst, chord, u, v);
    // H = the side holding d when it exists, else side 1
    if (marks.d && sides.k_verts.count(*marks.d)) {
        std::swap(sides.h_verts, sides.k_verts);
        std::swap(sides.h_edges, sides.k_edges);
    }

    // u and v lose their marks in both children
    auto filter_marks = [&](const std::set<VertexId>& keep) {
        SpecialVertices out;
        auto pick = [&](const std::optional<VertexId>& slot) -> std::optional<VertexId> {
            if (slot && keep.count(*slot) && *slot != u && *slot != v)
                return slot;
            return std::nullopt;
        };
        out.d = pick(marks.d);
        out.t = pick(marks.t);
        out.s = pick(marks.s);
        out.r = pick(marks.r);
        return out;
    };

    std::set<VertexId> h_all = sides.h_verts;
    h_all.insert(u);
    h_all.insert(v);
    std::set<VertexId> k_all = sides.k_verts;
    k_all.insert(u);
    k_all.insert(v);

    // u's prescription inside H is immaterial (the chord contraction merges
    // it), so it takes the balancing slack; likewise in K, where u becomes a
    // directed vertex with a derived prescription.
    Instance H = sub_instance(inst, h_all, sides.h_edges, filter_marks(h_all), u);
    H = H.with_faces(side_face(inst, inst.fg(), sides.h_edges),
                     side_face(inst, inst.fgs(), sides.h_edges));
    Instance K0 = sub_instance(inst, k_all, sides.k_edges, filter_marks(k_all), u);
    K0 = K0.with_faces(side_face(inst, inst.fg(), sides.k_edges),
                       side_face(inst, inst.fgs(), sides.k_edges));
    require(K0.degree(u) >= 2, "u has no K side");
    bool needs_eprime = K0.degree(u) == 2;

    auto state = std::make_shared<ChordState>();
    state->mu1 = contract(H, {u, v});
    Instance child1 = normalize_marks(state->mu1.child);
    require(guarded(inst, child1), "first child fails class guard");

    // Structural probe of the second child: same graph and faces as the real
    // one; only prescriptions (which no class clause reads) differ.
    {
        Instance probe = K0;
        if (needs_eprime)
            probe = add_parallel_edge(probe, chord);
        auto tails = orientation_satisfying(probe, u);
        require(tails.has_value(), "u cannot be oriented in K");
        probe = probe.with_orientations(*tails);
        BuildSpec ps = probe.to_spec();
        for (auto& vs : ps.vertices)
            if (vs.id == u) {
                vs.p = z3_to_signed(probe.residual(u));
                vs.mark = 'd';
            }
        Instance probe2 = Instance::build_unchecked(ps).with_faces(probe.fg(), probe.fgs());
        require(guarded(inst, normalize_marks(probe2)), "second child fails class guard");
    }

    StepPlan plan;
    plan.first = {child1};
    Instance parent = inst;
    Instance K_base = K0;
    EdgeId chord_copy = chord;
    VertexId u_copy = u, v_copy = v;
    auto h_edges = sides.h_edges;
    // H-side u-v edges besides the chord vanish in the contraction; the
    // unoriented ones are committed alongside u's edges below, already-fixed
    // ones keep their direction.
    std::vector<EdgeId> lost_uv;
    std::vector<std::pair<EdgeId, VertexId>> lost_fixed;
    for (EdgeId e : sides.h_edges) {
        bool is_uv = (inst.edge_u(e) == u && inst.edge_v(e) == v) ||
                     (inst.edge_u(e) == v && inst.edge_v(e) == u);
        if (e == chord || !is_uv)
            continue;
        if (auto t = inst.tail(e))
            lost_fixed.push_back({e, *t});
        else
            lost_uv.push_back(e);
    }
    plan.second = [state, parent, K_base, chord_copy, u_copy, v_copy, h_edges, lost_uv,
                   lost_fixed, needs_eprime](const Orientation& o1) {
        Orientation po = state->mu1.pull_back(o1); // H edges minus chord and lost u-v
        int cu = 0, cv = 0;
        for (EdgeId e : h_edges) {
            if (e == chord_copy)
                continue;
            cu += contribution_at(parent, po, u_copy, e);
            cv += contribution_at(parent, po, v_copy, e);
        }
        Orientation fixed_lost(lost_fixed.begin(), lost_fixed.end());
        for (const auto& [e, t] : lost_fixed) {
            cu += contribution_at(parent, fixed_lost, u_copy, e);
            cv += contribution_at(parent, fixed_lost, v_copy, e);
        }
        Instance K = K_base;
        EdgeId ep = -1;
        if (needs_eprime)
            K = add_parallel_edge(K, chord_copy, &ep);
        if (needs_eprime) {
            BuildSpec ks = K.to_spec();
            ks.orient[ep] = u_copy;
            K = Instance::build_unchecked(ks).with_faces(K.fg(), K.fgs());
        }
        // orient u: the chord, u's K-side edges, and the lost H-side u-v
        // edges together meet p(u) minus the solved H contribution
        std::vector<EdgeId> free = lost_uv;
        for (EdgeId e : K.incident_edges(u_copy))
            if (!K.oriented(e))
                free.push_back(e);
        std::sort(free.begin(), free.end());
        free.erase(std::unique(free.begin(), free.end()), free.end());
        int target = mod3(parent.p(u_copy) - cu);
        int k = static_cast<int>(free.size());
        int mcnt = -1;
        for (int cand = 0; cand <= k; ++cand)
            if (mod3(2 * cand - k) == target) {
                mcnt = cand;
                break;
            }
        require(mcnt >= 0, "u cannot be oriented in K");
        state->committed_u.clear();
        std::vector<std::pair<EdgeId, VertexId>> k_tails;
        int lost_at_v = 0;
        for (int i = 0; i < k; ++i) {
            EdgeId e = free[i];
            VertexId tail = i < mcnt ? parent.edge_other(e, u_copy) : u_copy;
            state->committed_u[e] = tail;
            if (std::count(lost_uv.begin(), lost_uv.end(), e))
                lost_at_v += tail == v_copy ? -1 : +1;
            else
                k_tails.push_back({e, tail});
        }
        for (const auto& [e, t] : lost_fixed)
            state->committed_u[e] = t;
        Instance K2 = K.with_orientations(k_tails);
        state->eprime = needs_eprime ? std::optional<EdgeId>(ep) : std::nullopt;
        // v absorbs the solved H side, the committed lost edges, and e'
        BuildSpec fin = K2.to_spec();
        for (auto& vs : fin.vertices) {
            if (vs.id == v_copy)
                vs.p = z3_to_signed(
                    mod3(parent.p(v_copy) - cv - lost_at_v + (needs_eprime ? 1 : 0)));
            if (vs.id == u_copy) {
                vs.p = z3_to_signed(K2.residual(u_copy));
                vs.mark = 'd';
            }
        }
        Instance child2 = Instance::build(fin).with_faces(K2.fg(), K2.fgs());
        return normalize_marks(child2);
    };
    plan.glue = [state](const std::vector<Orientation>& sols) {
        Orientation o = state->mu1.pull_back(sols.at(0));
        Orientation o2 = sols.at(1);
        if (state->eprime)
            o2.erase(*state->eprime);
        merge_into(o, o2);
        merge_into(o, state->committed_u);
        return o;
    };
    return plan;
}

StepPlan make_orient_vertex(const Instance& inst, VertexId v) {
    require(!inst.marks().d.has_value(), "a directed vertex already exists");
    auto tails = orientation_satisfying(inst, v);
    require(tails.has_value() && !tails->empty(), "vertex cannot be oriented");
    Instance child = inst.with_orientations(*tails);
    SpecialVertices m = child.marks();
    for (auto* slot : {&m.t, &m.s, &m.r})
        if (*slot && **slot == v)
            slot->reset();
    m.d = v;
    child = child.with_marks(m);
    child = normalize_marks(child);
    require(guarded(inst, child), "child fails class guard");
    StepPlan plan;
    plan.first = {child};
    plan.glue = [](const std::vector<Orientation>& sols) { return sols.at(0); };
    return plan;
}

StepPlan make_delete_boundary_edge(const Instance& inst, EdgeId e) {
    Instance base = inst;
    if (!inst.oriented(e)) {
        VertexId t = std::min(inst.edge_u(e), inst.edge_v(e));
        base = inst.with_orientations({{e, t}});
    }
    auto mu = std::make_shared<Mutation>(delete_edge(base, e));
    require(!mu->disconnected, "edge is a bridge");
    Instance child = normalize_marks(mu->child);
    require(guarded(inst, child), "child fails class guard");
    StepPlan plan;
    plan.first = {child};
    plan.glue = [mu](const std::vector<Orientation>& sols) {
        return mu->pull_back(sols.at(0));
    };
    return plan;
}

StepPlan make_lift_and_delete(const Instance& inst, VertexId mv, VertexId u, EdgeId e1,
                              EdgeId e2) {
    auto mu_l = std::make_shared<Mutation>(lift(inst, e1, e2));
    Instance i1 = mu_l->child;
    auto tu = orientation_satisfying(i1, u);
    require(tu.has_value(), "u cannot be oriented");
    Instance i2 = i1.with_orientations(*tu);
    auto tm = orientation_satisfying(i2, mv);
    require(tm.has_value(), "the degree-3 vertex cannot be oriented");
    Instance i3 = i2.with_orientations(*tm);
    auto mu_du = std::make_shared<Mutation>(delete_vertex(i3, u));
    auto mu_dm = std::make_shared<Mutation>(delete_vertex(mu_du->child, mv));
    Instance child = normalize_marks(mu_dm->child);
    require(guarded(inst, child), "child fails class guard");
    StepPlan plan;
    plan.first = {child};
    plan.glue = [mu_l, mu_du, mu_dm](const std::vector<Orientation>& sols) {
        Orientation o = mu_dm->pull_back(sols.at(0));
        o = mu_du->pull_back(o);
        return mu_l->pull_back(o);
    };
    return plan;
}

StepPlan make_base(const Instance&) {
    // fully oriented: the oracle leaf checks the existing orientation
    throw StepFail("base steps are handled by the oracle leaf");
}

// ---------------------------------------------------------------------------
// candidate enumeration
// ---------------------------------------------------------------------------

std::vector<VertexId> boundary_candidates(const Instance& inst) {
    std::vector<VertexId> out;
    if (inst.fg() && inst.fgs()) {
        auto a = inst.face_vertices(*inst.fg());
        auto b = inst.face_vertices(*inst.fgs());
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(out));
    } else if (inst.fg()) {
        out = inst.face_vertices(*inst.fg());
    }
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
        int da = inst.degree(a), db = inst.degree(b);
        return da != db ? da < db : a < b;
    });
    return out;
}

std::optional<std::pair<Step, StepPlan>> find_plan(const Instance& inst) {
    const auto& marks = inst.marks();

    if (inst.edge_count() == 0 || inst.unoriented_count() == 0) {
        Step s;
        s.kind = StepKind::Base;
        return std::make_pair(s, StepPlan{});
    }

    // ContractParallelAtD
    if (marks.d) {
        std::map<VertexId, int> parallel;
        for (EdgeId e : inst.incident_edges(*marks.d)) {
            VertexId o = inst.edge_other(e, *marks.d);
            if (o != *marks.d)
                parallel[o]++;
        }
        for (const auto& [v, cnt] : parallel) {
            if (cnt < 2 || inst.degree(v) > 4)
                continue;
            try {
                StepPlan plan = make_contract_parallel_at_d(inst, v);
                Step s;
                s.kind = StepKind::ContractParallelAtD;
                s.vertex = v;
                return std::make_pair(s, std::move(plan));
            } catch (const MutationError&) {
            } catch (const BuildError&) {
            }
        }
    }

    // CutSplit: smallest cuts first
    try {
        for (const Cut& cut : enumerate_cuts(inst, 6, 2)) {
            try {
                StepPlan plan = make_cut_split(inst, cut);
                Step s;
                s.kind = StepKind::CutSplit;
                s.cut = cut;
                return std::make_pair(s, std::move(plan));
            } catch (const MutationError&) {
            } catch (const BuildError&) {
            }
        }
    } catch (const BudgetError&) {
    }

    // ChordSplit: chords of F_G with a low-degree endpoint
    if (inst.fg()) {
        auto fedges = inst.face_edges(*inst.fg());
        std::set<EdgeId> bset(fedges.begin(), fedges.end());
        auto fverts = inst.face_vertices(*inst.fg());
        std::set<VertexId> bverts(fverts.begin(), fverts.end());
        for (EdgeId e : inst.edge_ids()) {
            if (bset.count(e) || inst.is_loop(e))
                continue;
            VertexId a = inst.edge_u(e), b = inst.edge_v(e);
            if (!bverts.count(a) || !bverts.count(b))
                continue;
            for (VertexId u : {std::min(a, b), std::max(a, b)}) {
                if (inst.degree(u) > 4)
                    continue;
                if (marks.d && (*marks.d == u || *marks.d == inst.edge_other(e, u)))
                    continue;
                try {
                    StepPlan plan = make_chord_split(inst, e, u);
                    Step s;
                    s.kind = StepKind::ChordSplit;
                    s.edge = e;
                    s.vertex = u;
                    return std::make_pair(s, std::move(plan));
                } catch (const MutationError&) {
                } catch (const BuildError&) {
                }
            }
        }
    }

    // OrientVertex: no directed vertex, lowest-degree boundary vertex <= 5
    if (!marks.d) {
        for (VertexId v : boundary_candidates(inst)) {
            if (inst.degree(v) > 5)
                break;
            try {
                StepPlan plan = make_orient_vertex(inst, v);
                Step s;
                s.kind = StepKind::OrientVertex;
                s.vertex = v;
                return std::make_pair(s, std::move(plan));
            } catch (const MutationError&) {
            } catch (const BuildError&) {
            }
        }
    }

    // DeleteBoundaryEdge: min-degree boundary vertex of degree >= 6 (no d),
    // or an oriented boundary edge at a degree-4/5 d
    {
        std::vector<EdgeId> cands;
        if (!marks.d) {
            auto bc = boundary_candidates(inst);
            if (!bc.empty() && inst.degree(bc.front()) >= 6) {
                auto fedges = inst.face_edges(*inst.fg());
                std::set<EdgeId> bset(fedges.begin(), fedges.end());
                for (EdgeId e : inst.incident_edges(bc.front()))
                    if (bset.count(e))
                        cands.push_back(e);
            }
        } else if (inst.degree(*marks.d) >= 4 && inst.degree(*marks.d) <= 5 && inst.fg()) {
            auto fedges = inst.face_edges(*inst.fg());
            std::set<EdgeId> bset(fedges.begin(), fedges.end());
            for (EdgeId e : inst.incident_edges(*marks.d))
                if (bset.count(e))
                    cands.push_back(e);
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (EdgeId e : cands) {
            try {
                StepPlan plan = make_delete_boundary_edge(inst, e);
                Step s;
                s.kind = StepKind::DeleteBoundaryEdge;
                s.edge = e;
                return std::make_pair(s, std::move(plan));
            } catch (const MutationError&) {
            } catch (const BuildError&) {
            }
        }
    }

    // LiftAndDelete at a boundary neighbour of a marked degree-3 vertex
    if (inst.fg()) {
        auto fedges = inst.face_edges(*inst.fg());
        std::set<EdgeId> bset(fedges.begin(), fedges.end());
        for (const auto& slot : {marks.t, marks.s}) {
            if (!slot || inst.degree(*slot) != 3)
                continue;
            VertexId mv = *slot;
            for (EdgeId em : inst.incident_edges(mv)) {
                if (!bset.count(em))
                    continue; // u must be a boundary neighbour
                VertexId u = inst.edge_other(em, mv);
                if (inst.degree(u) != 4 || (marks.d && *marks.d == u))
                    continue;
                // e1 = the other boundary edge at u; e2 = its interior
                // rotation neighbour
                EdgeId e1 = -1;
                for (EdgeId e : inst.incident_edges(u))
                    if (e != em && bset.count(e))
                        e1 = e;
                if (e1 < 0)
                    continue;
                int d1 = inst.dart_vertex(inst.dart(e1, 0)) == u ? inst.dart(e1, 0)
                                                                 : inst.dart(e1, 1);
                EdgeId e2 = -1;
                for (int cand : {inst.rot_next(d1), inst.rot_prev(d1)}) {
                    EdgeId ce = inst.dart_edge(cand);
                    if (!bset.count(ce) && ce != em) {
                        e2 = ce;
                        break;
                    }
                }
                if (e2 < 0)
                    continue;
                try {
                    StepPlan plan = make_lift_and_delete(inst, mv, u, e1, e2);
                    Step s;
                    s.kind = StepKind::LiftAndDelete;
                    s.vertex = u;
                    s.vertex2 = mv;
                    s.lift_e1 = e1;
                    s.lift_e2 = e2;
                    return std::make_pair(s, std::move(plan));
                } catch (const MutationError&) {
                } catch (const BuildError&) {
                }
            }
        }
    }

    return std::nullopt;
}

} // namespace

std::optional<Step> find_step(const Instance& inst) {
    auto found = find_plan(inst);
    if (!found)
        return std::nullopt;
    return found->first;
}

StepPlan apply(const Instance& inst, const Step& step) {
    switch (step.kind) {
    case StepKind::Base: return make_base(inst);
    case StepKind::ContractParallelAtD: return make_contract_parallel_at_d(inst, step.vertex);
    case StepKind::CutSplit: return make_cut_split(inst, step.cut);
    case StepKind::ChordSplit: return make_chord_split(inst, step.edge, step.vertex);
    case StepKind::OrientVertex: return make_orient_vertex(inst, step.vertex);
    case StepKind::DeleteBoundaryEdge: return make_delete_boundary_edge(inst, step.edge);
    case StepKind::LiftAndDelete:
        return make_lift_and_delete(inst, step.vertex2, step.vertex, step.lift_e1,
                                    step.lift_e2);
    }
    throw std::logic_error("bad step kind");
}

namespace {

struct UnsatChild {};

TraceNode solve_rec(const Instance& inst, const ReducerConfig& cfg, ReduceResult& res,
                    Orientation& out, bool& sat) {
    TraceNode node;
    node.measure = measure_of(inst);

    auto oracle_leaf = [&](const char* label) {
        SolveResult r = solve(inst);
        ++res.oracle_leaves;
        node.label = label;
        node.children.clear();
        sat = r.sat;
        out = std::move(r.orientation);
    };

    if (inst.vertex_count() <= cfg.oracle_vertex_budget) {
        oracle_leaf("oracle");
        return node;
    }
    std::optional<std::pair<Step, StepPlan>> found;
    try {
        auto step = find_step(inst);
        if (!step || step->kind == StepKind::Base) {
            oracle_leaf(step ? "base" : "oracle");
            return node;
        }
        found = std::make_pair(*step, apply(inst, *step));
    } catch (const std::exception&) {
        found.reset();
    }
    if (!found) {
        oracle_leaf("oracle");
        return node;
    }

    try {
        auto& [step, plan] = *found;
        std::vector<Orientation> sols;
        std::vector<TraceNode> kids;
        for (const Instance& child : plan.first) {
            Orientation o;
            bool csat = false;
            kids.push_back(solve_rec(child, cfg, res, o, csat));
            if (!csat)
                throw UnsatChild{};
            sols.push_back(std::move(o));
        }
        if (plan.second) {
            Instance child2 = plan.second(sols.at(0));
            Orientation o;
            bool csat = false;
            kids.push_back(solve_rec(child2, cfg, res, o, csat));
            if (!csat)
                throw UnsatChild{};
            sols.push_back(std::move(o));
        }
        Orientation glued = plan.glue(sols);
        VerifyReport rep = inst.verify(glued);
        if (!rep.valid()) {
            if (cfg.strict_glue)
                throw std::logic_error("reducer glue produced an invalid orientation");
            throw UnsatChild{};
        }
        ++res.steps;
        node.label = step_name(step.kind);
        node.children = std::move(kids);
        sat = true;
        out = std::move(glued);
        return node;
    } catch (const std::logic_error&) {
        throw;
    } catch (const std::exception&) {
        // includes UnsatChild-free mutation failures
        ++res.fallbacks;
        oracle_leaf("oracle-fallback");
        return node;
    } catch (const UnsatChild&) {
        ++res.fallbacks;
        oracle_leaf("oracle-fallback");
        return node;
    }
}

} // namespace

ReduceResult reduce_solve(const Instance& inst, const ReducerConfig& cfg) {
    ReduceResult res;
    Orientation o;
    bool sat = false;
    res.trace = solve_rec(inst, cfg, res, o, sat);
    res.sat = sat;
    if (sat)
        res.orientation = std::move(o);
    return res;
}

} // namespace z3o
