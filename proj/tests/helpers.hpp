#pragma once

// Shared test fixtures and independent oracles. Everything here recomputes
// results from first principles (bit loops over assignments, subset
// enumeration, orbit arithmetic) so the library code under test is never on
// both sides of an assertion.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "z3o/graph.hpp"
#include "z3o/grow.hpp"

namespace z3o::testing {

// --- fixtures ---------------------------------------------------------------

inline Instance single_vertex(int p = 0) {
    BuildSpec s;
    s.vertices.push_back({0, p, 0});
    return Instance::build(s);
}

/// m parallel edges between vertices 0 and 1; FG = the outer face.
inline Instance parallel_edges(int m, int p0 = 0, int p1 = 0) {
    BuildSpec s;
    s.vertices.push_back({0, p0, 0});
    s.vertices.push_back({1, p1, 0});
    std::vector<EdgeId> up, down;
    for (int j = 0; j < m; ++j) {
        s.edges.push_back({j, 0, 1});
        up.push_back(j);
    }
    down.assign(up.rbegin(), up.rend());
    s.rotation[0] = up;
    s.rotation[1] = down;
    Instance inst = Instance::build(s);
    if (m >= 2)
        inst = inst.with_faces(face_with_edges(inst, {0, m - 1}), std::nullopt);
    return inst;
}

/// plain n-cycle, FG = orbit of dart (edge 0, end 0)
inline Instance cycle(int n) {
    BuildSpec s;
    for (int i = 0; i < n; ++i) {
        s.vertices.push_back({i, 0, 0});
        s.edges.push_back({i, i, (i + 1) % n});
        s.rotation[i] = {(i + n - 1) % n, i};
    }
    Instance inst = Instance::build(s);
    return inst.with_faces(FaceRef::by_end(0, 0), std::nullopt);
}

/// cycle with every edge doubled; FG = the all-low face
inline Instance doubled_cycle(int n) {
    BuildSpec s;
    for (int i = 0; i < n; ++i)
        s.vertices.push_back({i, 0, 0});
    for (int i = 0; i < n; ++i) {
        s.edges.push_back({2 * i, i, (i + 1) % n});
        s.edges.push_back({2 * i + 1, i, (i + 1) % n});
    }
    for (int i = 0; i < n; ++i) {
        int prev = (i + n - 1) % n;
        s.rotation[i] = {2 * prev, 2 * prev + 1, 2 * i + 1, 2 * i};
    }
    Instance inst = Instance::build(s);
    std::vector<EdgeId> lows;
    for (int i = 0; i < n; ++i)
        lows.push_back(2 * i);
    return inst.with_faces(face_with_edges(inst, lows), std::nullopt);
}

/// wheel: rim cycle 0..n-1 (single edges, ids 0..n-1), hub n with one spoke
/// per rim vertex (ids n..2n-1); FG = the rim face away from the hub
inline Instance wheel(int n) {
    BuildSpec s;
    for (int i = 0; i < n; ++i)
        s.vertices.push_back({i, 0, 0});
    s.vertices.push_back({n, 0, 0});
    for (int i = 0; i < n; ++i)
        s.edges.push_back({i, i, (i + 1) % n});
    for (int i = 0; i < n; ++i)
        s.edges.push_back({n + i, i, n});
    for (int i = 0; i < n; ++i)
        s.rotation[i] = {(i + n - 1) % n, n + i, i};
    std::vector<EdgeId> hub;
    for (int i = n - 1; i >= 0; --i)
        hub.push_back(n + i);
    s.rotation[n] = hub;
    Instance inst = Instance::build(s);
    std::vector<EdgeId> rim;
    for (int i = 0; i < n; ++i)
        rim.push_back(i);
    return inst.with_faces(face_with_edges(inst, rim), std::nullopt);
}

/// K4: outer triangle 0,1,2 with 3 inside
inline Instance k4() {
    BuildSpec s;
    for (int i = 0; i < 4; ++i)
        s.vertices.push_back({i, 0, 0});
    s.edges.push_back({0, 0, 1});
    s.edges.push_back({1, 0, 2});
    s.edges.push_back({2, 0, 3});
    s.edges.push_back({3, 1, 2});
    s.edges.push_back({4, 1, 3});
    s.edges.push_back({5, 2, 3});
    s.rotation[0] = {0, 2, 1};
    s.rotation[1] = {4, 0, 3};
    s.rotation[2] = {1, 5, 3};
    s.rotation[3] = {2, 4, 5};
    Instance inst = Instance::build(s);
    return inst.with_faces(face_with_edges(inst, {0, 1, 3}), std::nullopt);
}

/// The end-of-proof configuration: hexagon d,u,t,v,s,y with internal w and z
/// of degree 5 and a two-vertex interior remainder behind a 7-edge-cut.
/// Vertex ids: d=0 u=1 t=2 v=3 s=4 y=5 w=6 z=7 b1=8 b2=9.
Instance dts8_configuration(bool with_marks);

// --- independent oracles -----------------------------------------------------

/// Count valid total orientations by looping over all 2^free assignments.
long long brute_force_count(const Instance& inst);

/// All cuts of size <= kmax with both sides >= robust, as canonical sorted
/// (side, edges) pairs, by direct bipartition enumeration.
std::vector<std::pair<std::vector<VertexId>, std::vector<EdgeId>>>
brute_force_cuts(const Instance& inst, int kmax, int robust);

/// Minimum |delta(X)| over connected-or-not X containing v and avoiding the
/// boundary set entirely (the min-cut side of Menger).
int brute_force_boundary_cut(const Instance& inst, VertexId v,
                             const std::set<VertexId>& boundary);

// --- face-rule predictors ----------------------------------------------------
// Expected new F_G boundary edge multiset per the face update rules,
// computed on the parent instance only.

std::vector<EdgeId> sorted_face_edge_multiset(const Instance& inst, const FaceRef& f);

/// rule 3: union of F_G and the other face of e, without e
std::optional<std::vector<EdgeId>> predict_delete_edge(const Instance& inst, EdgeId e);

/// rule 4: union of F_G and every face at v, without v's edges
std::optional<std::vector<EdgeId>> predict_delete_vertex(const Instance& inst, VertexId v);

/// rules 1/5: F_G unchanged / minus the contracted boundary path
std::optional<std::vector<EdgeId>> predict_contract(const Instance& inst,
                                                    const std::set<VertexId>& S);

/// rule 6: F_G and the far face of e2 joined through the lifted edge
std::optional<std::vector<EdgeId>> predict_lift(const Instance& inst, EdgeId e1, EdgeId e2,
                                                EdgeId lifted);

} // namespace z3o::testing

namespace z3o::testing {

/// Lemma-star induction step, checked exhaustively on a window: every
/// assignment of the edges at {v_m : 3(k-j) <= m <= 3k} that extends d's
/// fixed edges and satisfies the prescriptions at v_m, 3(k-j) <= m < 3k,
/// points both down-chain edges out of v_{3(k-j)}. Star vertex ids follow
/// gen(): t = 0, w = 1, v_m = 2 + m.
bool star_down_chain_forced(const Instance& star, int k, int j);

} // namespace z3o::testing
