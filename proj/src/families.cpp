#include "z3o/families.hpp"

#include <algorithm>
#include <random>

#include "z3o/cuts.hpp"
#include "z3o/grow.hpp"
#include "z3o/mutate.hpp"

namespace z3o {

const char* family_name(Family f) {
    switch (f) {
    case Family::D5a: return "d5a";
    case Family::D5b: return "d5b";
    case Family::TS33a: return "ts33a";
    case Family::TS33b: return "ts33b";
    case Family::Star: return "star";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : {Family::D5a, Family::D5b, Family::TS33a, Family::TS33b, Family::Star})
        if (name == family_name(f))
            return f;
    return std::nullopt;
}

namespace {

// Blob completion: `b` vertices in a row joined by doubled edges, drawn with
// the attachments around the outside. Attachment lists are given in the
// blob's counterclockwise rotation order starting east:
//   east (at the rightmost vertex), north (right to left), west (leftmost),
//   south (left to right).
struct BlobPlan {
    std::vector<EdgeId> east, north, west, south;
};

void attach_blob(BuildSpec& spec, const BlobPlan& plan, int b, VertexId placeholder,
                 EdgeId first_edge_id, int p_total) {
    std::vector<VertexId> B(b);
    for (int i = 0; i < b; ++i) {
        B[i] = placeholder + i;
        spec.vertices.push_back({B[i], i == 0 ? z3_to_signed(mod3(p_total)) : 0, 0});
    }
    // doubled row edges (lo_i, hi_i) between B[i], B[i+1]
    std::vector<EdgeId> lo(b), hi(b);
    EdgeId next = first_edge_id;
    for (int i = 0; i + 1 < b; ++i) {
        lo[i] = next++;
        hi[i] = next++;
        spec.edges.push_back({lo[i], B[i], B[i + 1]});
        spec.edges.push_back({hi[i], B[i], B[i + 1]});
    }
    auto spread = [&](const std::vector<EdgeId>& items, bool right_to_left)
        -> std::vector<std::vector<EdgeId>> {
        std::vector<std::vector<EdgeId>> at(b);
        int m = static_cast<int>(items.size());
        for (int j = 0; j < m; ++j) {
            int slot = m <= 1 ? 0 : j * b / m;
            if (slot >= b)
                slot = b - 1;
            at[right_to_left ? b - 1 - slot : slot].push_back(items[j]);
        }
        return at;
    };
    auto norths = spread(plan.north, true);
    auto souths = spread(plan.south, false);
    // re-point the attachment edges (built against the placeholder id, which
    // doubles as B[0])
    auto retarget = [&](EdgeId e, VertexId to) {
        for (auto& es : spec.edges)
            if (es.id == e) {
                if (es.u == placeholder)
                    es.u = to;
                else
                    es.v = to;
                return;
            }
        throw BuildError("blob attachment edge missing");
    };
    for (int i = 0; i < b; ++i) {
        std::vector<EdgeId> ring;
        if (i == b - 1)
            for (EdgeId e : plan.east) {
                retarget(e, B[i]);
                ring.push_back(e);
            }
        if (i + 1 < b) { // east side row pair: [hi, lo]
            ring.push_back(hi[i]);
            ring.push_back(lo[i]);
        }
        for (EdgeId e : norths[i]) {
            retarget(e, B[i]);
            ring.push_back(e);
        }
        if (i == 0)
            for (EdgeId e : plan.west) {
                retarget(e, B[i]);
                ring.push_back(e);
            }
        if (i > 0) { // west side row pair: [lo, hi]
            ring.push_back(lo[i - 1]);
            ring.push_back(hi[i - 1]);
        }
        for (EdgeId e : souths[i]) {
            retarget(e, B[i]);
            ring.push_back(e);
        }
        spec.rotation[B[i]] = ring;
    }
}

FamilyInstance gen_d5a(int blob) {
    // d = 0 (directed, degree 5), t = 1 (degree 3), blob placeholder id 2.
    BuildSpec s;
    s.vertices.push_back({0, +1, 'd'});
    s.vertices.push_back({1, -1, 't'});
    s.edges.push_back({0, 0, 1});
    s.edges.push_back({1, 0, 1});
    s.edges.push_back({2, 0, 2});
    s.edges.push_back({3, 0, 2});
    s.edges.push_back({4, 0, 2});
    s.edges.push_back({5, 1, 2});
    s.rotation[0] = {1, 4, 3, 2, 0};
    s.rotation[1] = {5, 1, 0};
    for (EdgeId e : {0, 1, 2, 3, 4})
        s.orient[e] = 0;
    BlobPlan plan;
    plan.south = {2, 3, 4, 5}; // left to right under the blob
    attach_blob(s, plan, blob, 2, 6, 0);
    Instance inst = Instance::build(s);
    // outer face = the side of the lower d-t edge away from the d-t bigon
    FaceRef outer = FaceRef::by_end(0, 0);
    {
        auto edges = inst.face_edges(outer);
        if (std::count(edges.begin(), edges.end(), 1))
            outer = FaceRef::by_end(0, 1);
    }
    inst = inst.with_faces(outer, std::nullopt);
    if (edge_connectivity(inst) < 3)
        throw BuildError("malformed blob completion (graph is not 3-edge-connected)");
    return {inst, true};
}

FamilyInstance gen_d5b() {
    // d = 0, t = 1, s = 2; d->t x2 fixed, s->d x2 fixed, s-t free.
    BuildSpec s;
    s.vertices.push_back({0, 0, 'd'});
    s.vertices.push_back({1, -1, 't'});
    s.vertices.push_back({2, +1, 's'});
    s.edges.push_back({0, 0, 1});
    s.edges.push_back({1, 0, 1});
    s.edges.push_back({2, 0, 2});
    s.edges.push_back({3, 0, 2});
    s.edges.push_back({4, 2, 1});
    s.rotation[0] = {0, 1, 2, 3};
    s.rotation[1] = {4, 1, 0};
    s.rotation[2] = {3, 2, 4};
    s.orient[0] = 0;
    s.orient[1] = 0;
    s.orient[2] = 2;
    s.orient[3] = 2;
    Instance inst = Instance::build(s);
    inst = inst.with_faces(face_with_edges(inst, {0, 3, 4}), std::nullopt);
    return {inst, true};
}

FamilyInstance gen_ts33a(int blob) {
    // square d=0 (top), r=1, s=2, t=3 around blob placeholder 4.
    BuildSpec s;
    s.vertices.push_back({0, -1, 'd'});
    s.vertices.push_back({1, 0, 'r'});
    s.vertices.push_back({2, 0, 's'});
    s.vertices.push_back({3, -1, 't'});
    s.edges.push_back({0, 0, 1}); // d-r
    s.edges.push_back({1, 1, 2}); // r-s
    s.edges.push_back({2, 2, 3}); // s-t
    s.edges.push_back({3, 3, 0}); // t-d
    s.edges.push_back({4, 0, 4}); // d-blob left
    s.edges.push_back({5, 0, 4}); // d-blob right
    s.edges.push_back({6, 1, 4}); // r-blob
    s.edges.push_back({7, 2, 4}); // s-blob
    s.edges.push_back({8, 3, 4}); // t-blob
    s.rotation[0] = {3, 4, 5, 0};
    s.rotation[1] = {0, 6, 1};
    s.rotation[2] = {1, 7, 2};
    s.rotation[3] = {8, 3, 2};
    for (EdgeId e : {0, 3, 4, 5})
        s.orient[e] = 0;
    BlobPlan plan;
    plan.east = {6};
    plan.north = {5, 4}; // right to left above the blob
    plan.west = {8};
    plan.south = {7};
    attach_blob(s, plan, blob, 4, 9, z3_of_signed(-1));
    Instance inst = Instance::build(s);
    inst = inst.with_faces(face_with_edges(inst, {0, 1, 2, 3}), std::nullopt);
    if (edge_connectivity(inst) < 3)
        throw BuildError("malformed blob completion (graph is not 3-edge-connected)");
    return {inst, true};
}

FamilyInstance gen_ts33b() {
    // pentagon d=0, r=1, s=2, t=3, u=4 with hub h=5; everything p = 0, free.
    BuildSpec s;
    // the figure's d is unoriented here (all 2^10 orientations are explored),
    // so no vertex carries the d mark
    for (VertexId v = 0; v <= 5; ++v) {
        char mark = 0;
        if (v == 1)
            mark = 'r';
        else if (v == 2)
            mark = 's';
        else if (v == 3)
            mark = 't';
        s.vertices.push_back({v, 0, mark});
    }
    s.edges.push_back({0, 0, 1}); // d-r
    s.edges.push_back({1, 1, 2}); // r-s
    s.edges.push_back({2, 2, 3}); // s-t
    s.edges.push_back({3, 3, 4}); // t-u
    s.edges.push_back({4, 4, 0}); // u-d
    s.edges.push_back({5, 0, 5}); // spokes
    s.edges.push_back({6, 1, 5});
    s.edges.push_back({7, 2, 5});
    s.edges.push_back({8, 3, 5});
    s.edges.push_back({9, 4, 5});
    s.rotation[0] = {4, 5, 0};
    s.rotation[1] = {0, 6, 1};
    s.rotation[2] = {1, 7, 2};
    s.rotation[3] = {2, 8, 3};
    s.rotation[4] = {4, 3, 9};
    s.rotation[5] = {6, 5, 9, 8, 7};
    Instance inst = Instance::build(s);
    inst = inst.with_faces(face_with_edges(inst, {0, 1, 2, 3, 4}), std::nullopt);
    return {inst, true};
}

FamilyInstance gen_star(int k) {
    if (k < 1)
        throw BuildError("star family requires k >= 1");
    const int n = 6 * k;
    // vertex ids: t = 0, w = 1, v_j = 2 + j
    auto vid = [&](int j) -> VertexId {
        if (j == -2 || j == n + 2)
            return 0;
        if (j == -1 || j == n + 1)
            return 1;
        return 2 + j;
    };
    // edge ids: for i in [-2, n]: short edge (v_i, v_{i+1}) = 2(i+2),
    // long edge (v_i, v_{i+2}) = 2(i+2)+1
    auto e_short = [&](int i) -> EdgeId { return 2 * (i + 2); };
    auto e_long = [&](int i) -> EdgeId { return 2 * (i + 2) + 1; };

    BuildSpec s;
    for (int j = 0; j <= n; ++j) {
        int pj;
        if (j == 3 * k)
            pj = -1;
        else if (j >= 3 * k - 2 && j <= 3 * k + 2)
            pj = +1;
        else if (j < 3 * k - 2)
            pj = +1;
        else
            pj = -1;
        char mark = (j == 3 * k) ? 'd' : 0;
        s.vertices.push_back({vid(j), pj, mark});
    }
    s.vertices.push_back({0, 0, 't'});
    s.vertices.push_back({1, 0, 0});
    for (int i = -2; i <= n; ++i) {
        s.edges.push_back({e_short(i), vid(i), vid(i + 1)});
        s.edges.push_back({e_long(i), vid(i), vid(i + 2)});
    }
    // rotations
    s.rotation[0] = {e_long(-2), e_short(-2), e_long(n)}; // t: v0, w, vn
    s.rotation[1] = {e_long(n - 1), e_short(n), e_short(-2), e_short(-1), e_long(-1)};
    for (int j = 0; j <= n; ++j) {
        if (j % 2 == 0) // inner: toward j+2, j+1, j-1, j-2
            s.rotation[vid(j)] = {e_long(j), e_short(j), e_short(j - 1), e_long(j - 2)};
        else // outer: toward j+2, j-2, j-1, j+1
            s.rotation[vid(j)] = {e_long(j), e_long(j - 2), e_short(j - 1), e_short(j)};
    }
    // d = v_{3k}: all four edges point out
    VertexId d = vid(3 * k);
    for (EdgeId e : {e_long(3 * k), e_short(3 * k), e_short(3 * k - 1), e_long(3 * k - 2)})
        s.orient[e] = d;

    Instance inst = Instance::build(s);
    std::vector<EdgeId> inner{e_long(-2)}, outer{e_long(-1)};
    for (int i = 0; i <= n - 2; ++i)
        (i % 2 == 0 ? inner : outer).push_back(e_long(i));
    inner.push_back(e_long(n));
    outer.push_back(e_long(n - 1));
    inst = inst.with_faces(face_with_edges(inst, inner), face_with_edges(inst, outer));
    return {inst, true};
}

} // namespace

FamilyInstance gen(const FamilySpec& spec) {
    switch (spec.family) {
    case Family::D5a: return gen_d5a(std::max(1, spec.blob));
    case Family::D5b: return gen_d5b();
    case Family::TS33a: return gen_ts33a(std::max(1, spec.blob));
    case Family::TS33b: return gen_ts33b();
    case Family::Star: return gen_star(spec.k);
    }
    throw BuildError("unknown family");
}

// ---------------------------------------------------------------------------
// randomized corpus
// ---------------------------------------------------------------------------

namespace {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(g() % n); }
    bool chance(int percent) { return below(100) < percent; }
};

// doubled-or-single polygon; returns the instance with FG = the all-low face
Instance base_polygon(Rng& rng, int n, int double_percent) {
    BuildSpec s;
    for (int i = 0; i < n; ++i)
        s.vertices.push_back({i, 0, 0});
    std::vector<EdgeId> lo(n), hi(n, -1);
    EdgeId next = 0;
    std::vector<bool> dbl(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = next++;
        dbl[i] = rng.chance(double_percent);
        if (dbl[i])
            hi[i] = next++;
        s.edges.push_back({lo[i], i, (i + 1) % n});
        if (dbl[i])
            s.edges.push_back({hi[i], i, (i + 1) % n});
    }
    for (int i = 0; i < n; ++i) {
        int prev = (i + n - 1) % n;
        std::vector<EdgeId> ring;
        ring.push_back(lo[prev]);
        if (dbl[prev])
            ring.push_back(hi[prev]);
        if (dbl[i])
            ring.push_back(hi[i]);
        ring.push_back(lo[i]);
        s.rotation[i] = ring;
    }
    Instance inst = Instance::build(s);
    std::vector<EdgeId> boundary(lo.begin(), lo.end());
    return inst.with_faces(face_with_edges(inst, boundary), std::nullopt);
}

std::vector<int> face_corners(const Instance& inst, int face) {
    return inst.face_orbit(inst.face_canonical_dart(face));
}

// faces other than the specified ones
std::vector<int> growable_faces(const Instance& inst) {
    std::set<int> skip;
    if (inst.fg())
        skip.insert(inst.face_index(inst.resolve_dart(*inst.fg())));
    if (inst.fgs())
        skip.insert(inst.face_index(inst.resolve_dart(*inst.fgs())));
    std::vector<int> out;
    for (int f = 0; f < inst.face_orbit_count(); ++f)
        if (!skip.count(f))
            out.push_back(f);
    return out;
}

Instance random_double(const Instance& inst, Rng& rng) {
    EdgeId e = inst.edge_ids()[rng.below(inst.edge_count())];
    if (inst.is_loop(e))
        return inst;
    return add_parallel_edge(inst, e);
}

Instance random_chord(const Instance& inst, Rng& rng) {
    auto faces = growable_faces(inst);
    if (faces.empty())
        return inst;
    auto corners = face_corners(inst, faces[rng.below(static_cast<int>(faces.size()))]);
    if (corners.size() < 2)
        return inst;
    int a = rng.below(static_cast<int>(corners.size()));
    int b = rng.below(static_cast<int>(corners.size()));
    if (a == b || inst.dart_vertex(corners[a]) == inst.dart_vertex(corners[b]))
        return inst; // no loops
    return add_edge_in_face(inst, corners[a], corners[b]);
}

Instance random_hub(const Instance& inst, Rng& rng, VertexId* hub = nullptr) {
    auto faces = growable_faces(inst);
    std::vector<int> big;
    for (int f : faces)
        if (face_corners(inst, f).size() >= 3)
            big.push_back(f);
    if (big.empty())
        return inst;
    auto corners = face_corners(inst, big[rng.below(static_cast<int>(big.size()))]);
    int m = static_cast<int>(corners.size());
    int k = 5 + rng.below(2);
    int off = rng.below(m);
    std::vector<int> attach;
    for (int j = 0; j < k; ++j)
        attach.push_back(corners[(off + j * m / k) % m]); // cyclic face-walk order
    return add_vertex_in_face(inst, attach, hub);
}

// insert an interior hub pair (adjacent interior vertices)
Instance hub_chain(const Instance& inst0, Rng& rng) {
    VertexId h1 = -1;
    Instance inst = random_hub(inst0, rng, &h1);
    if (h1 < 0)
        return inst;
    // pick a face with >= 2 corners at h1 is impossible right after the
    // split (h1 appears once per new face); attach twice to the same corner
    std::vector<int> cand;
    for (int f = 0; f < inst.face_orbit_count(); ++f) {
        auto cs = face_corners(inst, f);
        bool has_h1 = false;
        for (int c : cs)
            if (inst.dart_vertex(c) == h1)
                has_h1 = true;
        if (has_h1 && cs.size() >= 3)
            cand.push_back(f);
    }
    if (cand.empty())
        return inst;
    auto cs = face_corners(inst, cand[rng.below(static_cast<int>(cand.size()))]);
    std::vector<int> attach;
    for (int c : cs) {
        attach.push_back(c);
        if (inst.dart_vertex(c) == h1)
            attach.push_back(c); // doubled spoke into the interior vertex
    }
    while (attach.size() < 5)
        attach.push_back(cs[0]);
    return add_vertex_in_face(inst, attach);
}

std::optional<Instance> small_instance(Rng& rng, GraphClass klass, int n) {
    if (n <= 1) {
        if (klass == GraphClass::RST || klass == GraphClass::RST3)
            return std::nullopt; // needs a specifiable face
        BuildSpec s;
        s.vertices.push_back({0, 0, 0});
        return Instance::build(s);
    }
    int m = 3 + rng.below(4);
    BuildSpec s;
    int x = rng.below(3) - 1;
    s.vertices.push_back({0, x, 0});
    s.vertices.push_back({1, z3_to_signed(mod3(-x)), 0});
    for (int j = 0; j < m; ++j)
        s.edges.push_back({j, 0, 1});
    std::vector<EdgeId> up(m), down(m);
    for (int j = 0; j < m; ++j)
        up[j] = j;
    down.assign(up.rbegin(), up.rend());
    s.rotation[0] = up;
    s.rotation[1] = down;
    if ((klass == GraphClass::RST || klass == GraphClass::RST3) && m == 3) {
        s.vertices[0].mark = 'r';
        s.vertices[1].mark = 's';
    }
    Instance inst = Instance::build(s);
    inst = inst.with_faces(face_with_edges(inst, {0, m - 1}), std::nullopt);
    if (klass == GraphClass::FT)
        inst = inst.with_faces(inst.fg(), face_with_edges(inst, {0, 1}));
    return inst;
}

int quota_deg3(GraphClass klass) {
    switch (klass) {
    case GraphClass::DTS: return 3; // t, s, and possibly a degree-3 d
    case GraphClass::DTS3: return 3;
    case GraphClass::RST: return 3;
    case GraphClass::RST3: return 3;
    case GraphClass::FT: return 1;
    }
    return 0;
}

std::optional<Instance> try_generate(Rng& rng, int n_max, GraphClass klass) {
    int n = 1 + rng.below(n_max);
    if (n <= 2)
        return small_instance(rng, klass, n);

    Instance inst = base_polygon(rng, n, 75);
    int ops = 1 + rng.below(2 * n);
    bool deep = rng.chance(30);
    for (int i = 0; i < ops; ++i) {
        try {
            int roll = rng.below(100);
            if (deep && i == 0 && inst.vertex_count() + 2 <= n_max)
                inst = hub_chain(inst, rng);
            else if (roll < 45)
                inst = random_double(inst, rng);
            else if (roll < 85 || inst.vertex_count() >= n_max)
                inst = random_chord(inst, rng);
            else
                inst = random_hub(inst, rng);
        } catch (const std::exception&) {
            // skipped op
        }
    }
    if (inst.vertex_count() > n_max)
        return std::nullopt;

    // degree repair: nothing below 3; at most quota degree-3 vertices, all
    // on the F_G boundary
    auto fg = *inst.fg();
    for (int round = 0; round < 64; ++round) {
        VertexId fix = -1;
        int seen3 = 0;
        for (VertexId v : inst.vertex_ids()) {
            int deg = inst.degree(v);
            if (deg < 3) {
                fix = v;
                break;
            }
            if (deg == 3) {
                if (!inst.on_face(fg, v) || ++seen3 > quota_deg3(klass)) {
                    fix = v;
                    break;
                }
            }
        }
        if (fix < 0)
            break;
        auto inc = inst.incident_edges(fix);
        EdgeId e = *std::min_element(inc.begin(), inc.end());
        inst = add_parallel_edge(inst, e);
        fg = *inst.fg();
    }

    // marks
    std::vector<VertexId> deg3;
    for (VertexId v : inst.vertex_ids())
        if (inst.degree(v) == 3)
            deg3.push_back(v);
    SpecialVertices marks;
    std::optional<VertexId> want_d;
    switch (klass) {
    case GraphClass::DTS:
    case GraphClass::DTS3: {
        size_t i = 0;
        if (deg3.size() > static_cast<size_t>(2)) {
            // third degree-3 vertex becomes the directed vertex
            want_d = deg3[0];
            i = 1;
        }
        if (i < deg3.size())
            marks.t = deg3[i++];
        if (i < deg3.size())
            marks.s = deg3[i++];
        if (!want_d && rng.chance(60)) {
            // a boundary vertex of degree <= 5 - a
            int a = static_cast<int>(deg3.size()) - (want_d ? 1 : 0);
            for (int d : inst.face_orbit(inst.resolve_dart(fg))) {
                VertexId v = inst.dart_vertex(d);
                int deg = inst.degree(v);
                if (deg >= 3 && deg <= 5 - a && v != marks.t && v != marks.s) {
                    want_d = v;
                    break;
                }
            }
        }
        break;
    }
    case GraphClass::RST:
    case GraphClass::RST3: {
        size_t i = 0;
        if (i < deg3.size())
            marks.r = deg3[i++];
        if (i < deg3.size())
            marks.s = deg3[i++];
        if (i < deg3.size())
            marks.t = deg3[i++];
        break;
    }
    case GraphClass::FT: {
        if (!deg3.empty())
            marks.t = deg3[0];
        // second specified face: any other face sharing a vertex with F_G
        auto fgv = inst.face_vertices(fg);
        std::set<VertexId> fgset(fgv.begin(), fgv.end());
        std::vector<int> cand;
        int fgi = inst.face_index(inst.resolve_dart(fg));
        for (int f = 0; f < inst.face_orbit_count(); ++f) {
            if (f == fgi)
                continue;
            for (int d : inst.face_orbit(inst.face_canonical_dart(f)))
                if (fgset.count(inst.dart_vertex(d))) {
                    cand.push_back(f);
                    break;
                }
        }
        if (cand.empty())
            return std::nullopt;
        int f = cand[rng.below(static_cast<int>(cand.size()))];
        int d = inst.face_canonical_dart(f);
        inst = inst.with_faces(fg, FaceRef::by_end(inst.dart_edge(d), inst.dart_end(d)));
        break;
    }
    }

    // prescriptions: uniform then repaired at one non-d vertex
    {
        BuildSpec s = inst.to_spec();
        long long sum = 0;
        for (auto& v : s.vertices) {
            v.p = rng.below(3) - 1;
            sum += z3_of_signed(v.p);
        }
        for (auto it = s.vertices.rbegin(); it != s.vertices.rend(); ++it) {
            if (want_d && it->id == *want_d)
                continue;
            sum -= z3_of_signed(it->p);
            it->p = z3_to_signed(mod3(-(sum)));
            break;
        }
        inst = Instance::build(s).with_faces(inst.fg(), inst.fgs());
    }

    // apply marks; orient d last so its residual can be made to match
    inst = inst.with_marks(SpecialVertices{}); // clear
    if (want_d) {
        auto tails = orientation_satisfying(inst, *want_d);
        if (!tails)
            return std::nullopt;
        inst = inst.with_orientations(*tails);
        marks.d = want_d;
    }
    try {
        inst = inst.with_marks(marks);
    } catch (const BuildError&) {
        return std::nullopt;
    }

    if (!check_class(inst, klass).pass)
        return std::nullopt;
    return inst;
}

} // namespace

std::vector<Instance> gen_corpus(std::uint64_t seed, int n_max, GraphClass klass, int count) {
    Rng rng(seed);
    std::vector<Instance> out;
    long long attempts = 0, limit = 2000LL * count + 2000;
    while (static_cast<int>(out.size()) < count && attempts++ < limit) {
        try {
            if (auto inst = try_generate(rng, n_max, klass))
                out.push_back(std::move(*inst));
        } catch (const std::exception&) {
            // rejected attempt
        }
    }
    return out;
}

std::vector<Instance> gen_random_3ec(std::uint64_t seed, int n_max, int count) {
    Rng rng(seed);
    std::vector<Instance> out;
    long long attempts = 0, limit = 2000LL * count + 2000;
    while (static_cast<int>(out.size()) < count && attempts++ < limit) {
        try {
            int n = 3 + rng.below(std::max(1, n_max - 2));
            Instance inst = base_polygon(rng, n, 85);
            int ops = rng.below(2 * n);
            for (int i = 0; i < ops; ++i) {
                try {
                    int roll = rng.below(100);
                    if (roll < 50)
                        inst = random_double(inst, rng);
                    else if (roll < 90 || inst.vertex_count() >= n_max)
                        inst = random_chord(inst, rng);
                    else
                        inst = random_hub(inst, rng);
                } catch (const std::exception&) {
                }
            }
            if (inst.vertex_count() > n_max)
                continue;
            int k = edge_connectivity(inst);
            if (k != kUnbounded && k < 3)
                continue;
            out.push_back(std::move(inst));
        } catch (const std::exception&) {
        }
    }
    return out;
}

std::vector<Instance> gen_random_small(std::uint64_t seed, int max_edges, int count) {
    Rng rng(seed);
    std::vector<Instance> out;
    long long attempts = 0, limit = 2000LL * count + 2000;
    while (static_cast<int>(out.size()) < count && attempts++ < limit) {
        try {
            int n = 2 + rng.below(5);
            Instance inst = n == 2 ? *small_instance(rng, GraphClass::DTS, 2)
                                   : base_polygon(rng, n, 50);
            int ops = rng.below(6);
            for (int i = 0; i < ops && inst.edge_count() < max_edges; ++i) {
                try {
                    inst = rng.chance(60) ? random_double(inst, rng)
                                          : random_chord(inst, rng);
                } catch (const std::exception&) {
                }
            }
            if (inst.edge_count() > max_edges)
                continue;
            // random valid prescription
            BuildSpec s = inst.to_spec();
            long long sum = 0;
            for (auto& v : s.vertices) {
                v.p = rng.below(3) - 1;
                sum += z3_of_signed(v.p);
            }
            sum -= z3_of_signed(s.vertices.back().p);
            s.vertices.back().p = z3_to_signed(mod3(-sum));
            // random partial orientation
            s.orient.clear();
            for (const auto& e : s.edges)
                if (rng.chance(20))
                    s.orient[e.id] = rng.chance(50) ? e.u : e.v;
            out.push_back(Instance::build(s).with_faces(inst.fg(), inst.fgs()));
        } catch (const std::exception&) {
        }
    }
    return out;
}

} // namespace z3o
