#include "z3o/oracle.hpp"

#include <algorithm>

namespace z3o {

namespace {

// Dense search state over one instance.
struct Search {
    const Instance& inst;
    SearchStats stats;

    int nv, ne;
    std::vector<int> need;       // per vertex index: p - (fixed residual), updated as we go
    std::vector<int> free_cnt;   // unassigned non-loop edges at vertex
    std::vector<int> assign;     // per edge index: -1 free, else tail end 0/1
    std::vector<int> vix_of_end; // 2e -> vertex index of end0, 2e+1 -> end1
    std::vector<EdgeId> order;   // free non-loop edges ascending

    explicit Search(const Instance& i) : inst(i) {
        nv = inst.vertex_count();
        ne = inst.edge_count();
        need.assign(nv, 0);
        free_cnt.assign(nv, 0);
        assign.assign(ne, -1);
        vix_of_end.assign(2 * ne, 0);
        std::map<VertexId, int> vix;
        for (VertexId v : inst.vertex_ids())
            vix[v] = static_cast<int>(vix.size());
        for (int j = 0; j < ne; ++j) {
            EdgeId e = inst.edge_ids()[j];
            vix_of_end[2 * j] = vix[inst.edge_u(e)];
            vix_of_end[2 * j + 1] = vix[inst.edge_v(e)];
        }
        for (int i2 = 0; i2 < nv; ++i2)
            need[i2] = inst.p(inst.vertex_ids()[i2]);
        for (int j = 0; j < ne; ++j) {
            EdgeId e = inst.edge_ids()[j];
            bool loop = inst.edge_u(e) == inst.edge_v(e);
            if (auto t = inst.tail(e)) {
                int te = (*t == inst.edge_u(e)) ? 0 : 1;
                assign[j] = te;
                if (!loop)
                    apply_contribution(j, te);
            } else if (loop) {
                assign[j] = 0; // loops contribute nothing; pin for totality
            } else {
                free_cnt[vix_of_end[2 * j]]++;
                free_cnt[vix_of_end[2 * j + 1]]++;
                order.push_back(e);
            }
        }
    }

    void apply_contribution(int j, int tail_end) {
        int t = vix_of_end[2 * j + tail_end];
        int h = vix_of_end[2 * j + (1 - tail_end)];
        need[t] = mod3(need[t] + 1); // tail must make up an outgoing unit
        need[h] = mod3(need[h] - 1);
    }

    void undo_contribution(int j, int tail_end) {
        int t = vix_of_end[2 * j + tail_end];
        int h = vix_of_end[2 * j + (1 - tail_end)];
        need[t] = mod3(need[t] - 1);
        need[h] = mod3(need[h] + 1);
    }

    // Set a free edge; returns affected vertex indices for propagation.
    void set_edge(int j, int tail_end, std::vector<std::pair<int, int>>& trail) {
        assign[j] = tail_end;
        apply_contribution(j, tail_end);
        free_cnt[vix_of_end[2 * j]]--;
        free_cnt[vix_of_end[2 * j + 1]]--;
        trail.push_back({j, tail_end});
    }

    void unwind(std::vector<std::pair<int, int>>& trail, size_t mark) {
        while (trail.size() > mark) {
            auto [j, te] = trail.back();
            trail.pop_back();
            assign[j] = -1;
            undo_contribution(j, te);
            free_cnt[vix_of_end[2 * j]]++;
            free_cnt[vix_of_end[2 * j + 1]]++;
        }
    }

    // Close under the two propagation rules: a vertex with no free edge must
    // have need 0; a vertex with one free edge forces its direction.
    bool propagate(std::vector<std::pair<int, int>>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < nv; ++i) {
                if (free_cnt[i] == 0) {
                    if (need[i] != 0)
                        return false;
                } else if (free_cnt[i] == 1) {
                    int j = -1, end_at_i = -1;
                    for (int jj = 0; jj < ne && j < 0; ++jj) {
                        if (assign[jj] >= 0)
                            continue;
                        if (vix_of_end[2 * jj] == i)
                            j = jj, end_at_i = 0;
                        else if (vix_of_end[2 * jj + 1] == i)
                            j = jj, end_at_i = 1;
                    }
                    if (need[i] == 0)
                        return false; // one edge cannot contribute 0
                    int tail_end = need[i] == 2 ? end_at_i : 1 - end_at_i;
                    set_edge(j, tail_end, trail);
                    ++stats.propagations;
                    changed = true;
                }
            }
        }
        return true;
    }

    int pick() const {
        for (EdgeId e : order) {
            // index lookup: order holds external ids ascending; recover index
            int j = static_cast<int>(
                std::lower_bound(inst.edge_ids().begin(), inst.edge_ids().end(), e) -
                inst.edge_ids().begin());
            if (assign[j] < 0)
                return j;
        }
        return -1;
    }

    template <typename OnSolution> bool dfs(bool count_all, long long& found,
                                            OnSolution&& emit) {
        std::vector<std::pair<int, int>> trail;
        bool stop = false;
        if (propagate(trail)) {
            int j = pick();
            if (j < 0) {
                ++found;
                emit();
                stop = !count_all; // stop at first solution unless counting
            } else {
                EdgeId e = inst.edge_ids()[j];
                int lower_end = inst.edge_u(e) < inst.edge_v(e) ? 0 : 1;
                for (int attempt = 0; attempt < 2 && !stop; ++attempt) {
                    int tail_end = attempt == 0 ? lower_end : 1 - lower_end;
                    ++stats.nodes;
                    std::vector<std::pair<int, int>> local;
                    set_edge(j, tail_end, local);
                    stop = dfs(count_all, found, emit);
                    unwind(local, 0);
                }
            }
        }
        unwind(trail, 0);
        return stop;
    }

    Orientation snapshot() const {
        Orientation o;
        for (int j = 0; j < ne; ++j) {
            EdgeId e = inst.edge_ids()[j];
            o[e] = assign[j] == 0 ? inst.edge_u(e) : inst.edge_v(e);
        }
        return o;
    }
};

} // namespace

SolveResult solve(const Instance& inst) {
    Search s(inst);
    SolveResult res;
    long long found = 0;
    Orientation best;
    s.dfs(false, found, [&] { best = s.snapshot(); });
    res.stats = s.stats;
    res.sat = found > 0;
    if (res.sat) {
        res.orientation = std::move(best);
        VerifyReport rep = inst.verify(res.orientation);
        if (!rep.valid())
            throw std::logic_error("oracle produced an invalid certificate");
    }
    return res;
}

long long count(const Instance& inst, SearchStats& stats) {
    if (inst.unoriented_count() > 26)
        throw BudgetError("count: more than 26 unoriented edges");
    Search s(inst);
    long long found = 0;
    s.dfs(true, found, [] {});
    stats = s.stats;
    return found;
}

long long count(const Instance& inst) {
    SearchStats st;
    return count(inst, st);
}

} // namespace z3o
