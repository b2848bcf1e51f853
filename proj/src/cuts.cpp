#include "z3o/cuts.hpp"

#include <algorithm>
#include <queue>

namespace z3o {

namespace {

// Edmonds-Karp on a unit-capacity digraph with antiparallel arcs per edge.
struct FlowNet {
    struct Arc {
        int to, cap;
        size_t rev;
    };
    std::vector<std::vector<Arc>> arcs;

    explicit FlowNet(size_t n) : arcs(n) {}

    void add(int a, int b, int cap) {
        arcs[a].push_back({b, cap, arcs[b].size()});
        arcs[b].push_back({a, 0, arcs[a].size() - 1});
    }

    int max_flow(int s, int t, int stop_at) {
        int flow = 0;
        while (flow < stop_at) {
            std::vector<std::pair<int, size_t>> pred(arcs.size(), {-1, 0});
            std::queue<int> q;
            q.push(s);
            pred[s] = {s, 0};
            while (!q.empty() && pred[t].first < 0) {
                int x = q.front();
                q.pop();
                for (size_t i = 0; i < arcs[x].size(); ++i) {
                    const Arc& a = arcs[x][i];
                    if (a.cap > 0 && pred[a.to].first < 0) {
                        pred[a.to] = {x, i};
                        q.push(a.to);
                    }
                }
            }
            if (pred[t].first < 0)
                break;
            for (int x = t; x != s;) {
                auto [px, pi] = pred[x];
                arcs[px][pi].cap -= 1;
                arcs[x][arcs[px][pi].rev].cap += 1;
                x = px;
            }
            ++flow;
        }
        return flow;
    }
};

std::map<VertexId, int> dense_index(const Instance& g) {
    std::map<VertexId, int> ix;
    for (VertexId v : g.vertex_ids())
        ix[v] = static_cast<int>(ix.size());
    return ix;
}

Cut make_cut(const Instance& g, const std::set<VertexId>& one_side) {
    Cut c;
    VertexId minv = g.vertex_ids().front();
    bool flip = one_side.count(minv) != 0;
    for (VertexId v : g.vertex_ids()) {
        bool in = one_side.count(v) != 0;
        if (in != flip)
            c.side_a.push_back(v);
    }
    for (EdgeId e : g.edge_ids()) {
        bool u_in = one_side.count(g.edge_u(e)) != 0;
        bool v_in = one_side.count(g.edge_v(e)) != 0;
        if (u_in != v_in)
            c.edges.push_back(e);
    }
    c.size = static_cast<int>(c.edges.size());
    return c;
}

void enumerate_brute(const Instance& g, int kmax, int robust, std::vector<Cut>& out) {
    int n = g.vertex_count();
    const auto& vids = g.vertex_ids();
    // subsets of V \ {v0}: each unordered bipartition once
    for (unsigned long long m = 1; m < (1ull << (n - 1)); ++m) {
        std::set<VertexId> side;
        for (int i = 0; i < n - 1; ++i)
            if (m & (1ull << i))
                side.insert(vids[i + 1]);
        int a = static_cast<int>(side.size());
        int b = n - a;
        if (robust > 1 && (a < robust || b < robust))
            continue;
        int sz = 0;
        for (EdgeId e : g.edge_ids()) {
            bool u_in = side.count(g.edge_u(e)) != 0;
            bool v_in = side.count(g.edge_v(e)) != 0;
            if (u_in != v_in && ++sz > kmax)
                break;
        }
        if (sz <= kmax)
            out.push_back(make_cut(g, side));
    }
}

} // namespace

int edge_disjoint_paths(const Instance& g, const std::set<VertexId>& sources,
                        const std::set<VertexId>& sinks) {
    auto ix = dense_index(g);
    int n = static_cast<int>(ix.size());
    FlowNet net(n + 2);
    int S = n, T = n + 1;
    for (EdgeId e : g.edge_ids()) {
        if (g.is_loop(e))
            continue;
        int a = ix[g.edge_u(e)], b = ix[g.edge_v(e)];
        net.add(a, b, 1);
        net.add(b, a, 1);
    }
    int cap_bound = 0;
    for (VertexId v : sources) {
        net.add(S, ix.at(v), kUnbounded / 4);
        cap_bound += g.degree(v);
    }
    for (VertexId v : sinks)
        net.add(ix.at(v), T, kUnbounded / 4);
    return net.max_flow(S, T, cap_bound + 1);
}

int edge_connectivity(const Instance& g) {
    int n = g.vertex_count();
    if (n <= 1)
        return kUnbounded;
    if (g.component_count() > 1)
        return 0;
    VertexId v0 = g.vertex_ids().front();
    int best = kUnbounded;
    for (VertexId v : g.vertex_ids()) {
        if (v == v0)
            continue;
        best = std::min(best, edge_disjoint_paths(g, {v0}, {v}));
    }
    return best;
}

std::vector<Cut> enumerate_cuts(const Instance& g, int kmax, int robust) {
    std::vector<Cut> out;
    int n = g.vertex_count();
    if (n <= 1)
        return out;
    if (n <= 22) {
        enumerate_brute(g, kmax, robust, out);
    } else {
        // Instances past brute-force scale do not appear in this toolkit's
        // workloads; refuse loudly rather than silently truncating.
        throw BudgetError("enumerate_cuts: instance too large for exhaustive enumeration");
    }
    std::sort(out.begin(), out.end(), [](const Cut& a, const Cut& b) {
        if (a.size != b.size)
            return a.size < b.size;
        return a.side_a < b.side_a;
    });
    return out;
}

bool is_internal(const Instance& inst, const Cut& c) {
    if (!inst.fg() && !inst.fgs())
        throw BuildError("is_internal: no specified face");
    std::set<VertexId> boundary = inst.specified_boundary_vertices();
    std::set<VertexId> a(c.side_a.begin(), c.side_a.end());
    bool a_clean = true, b_clean = true;
    for (VertexId v : inst.vertex_ids()) {
        bool in_a = a.count(v) != 0;
        if (boundary.count(v)) {
            if (in_a)
                a_clean = false;
            else
                b_clean = false;
        }
    }
    return a_clean || b_clean;
}

int cut_type(const Instance& inst, const Cut& c) {
    if (!inst.fg() || !inst.fgs())
        throw BuildError("cut_type: both specified faces are required");
    auto touches = [&](const FaceRef& f) {
        auto edges = inst.face_edges(f);
        std::set<EdgeId> b(edges.begin(), edges.end());
        for (EdgeId e : c.edges)
            if (b.count(e))
                return true;
        return false;
    };
    int k = (touches(*inst.fg()) ? 1 : 0) + (touches(*inst.fgs()) ? 1 : 0);
    return k + 1;
}

bool crossing(const Instance& g, const Cut& a, const Cut& b) {
    std::set<VertexId> A(a.side_a.begin(), a.side_a.end());
    std::set<VertexId> B(b.side_a.begin(), b.side_a.end());
    int ab = 0, a_not_b = 0, b_not_a = 0, neither = 0;
    for (VertexId v : g.vertex_ids()) {
        bool ia = A.count(v) != 0, ib = B.count(v) != 0;
        if (ia && ib)
            ++ab;
        else if (ia)
            ++a_not_b;
        else if (ib)
            ++b_not_a;
        else
            ++neither;
    }
    return ab > 0 && a_not_b > 0 && b_not_a > 0 && neither > 0;
}

int boundary_connectivity(const Instance& inst, VertexId v) {
    std::set<VertexId> boundary = inst.specified_boundary_vertices();
    if (boundary.empty())
        throw BuildError("boundary_connectivity: no specified face");
    if (boundary.count(v))
        return kUnbounded;
    return edge_disjoint_paths(inst, {v}, boundary);
}

} // namespace z3o
