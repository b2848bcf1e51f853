#include <doctest.h>

#include "helpers.hpp"
#include "z3o/cuts.hpp"
#include "z3o/families.hpp"

using namespace z3o;
using namespace z3o::testing;

TEST_CASE("edge connectivity basics") {
    CHECK(edge_connectivity(parallel_edges(3)) == 3);
    CHECK(edge_connectivity(cycle(4)) == 2);
    CHECK(edge_connectivity(single_vertex()) == kUnbounded);
    // disconnected
    BuildSpec s;
    s.vertices.push_back({0, 0, 0});
    s.vertices.push_back({1, 0, 0});
    CHECK(edge_connectivity(Instance::build(s)) == 0);
}

TEST_CASE("edge connectivity of the 3-vertex figure matches brute force") {
    Instance inst = gen({Family::D5b}).instance;
    // brute force over the 3 bipartitions
    int best = 1 << 20;
    for (auto side : {std::set<VertexId>{0}, std::set<VertexId>{1}, std::set<VertexId>{2}}) {
        int sz = 0;
        for (EdgeId e : inst.edge_ids())
            if (side.count(inst.edge_u(e)) != side.count(inst.edge_v(e)))
                ++sz;
        best = std::min(best, sz);
    }
    CHECK(best == 3);
    CHECK(edge_connectivity(inst) == 3);
}

TEST_CASE("enumerate_cuts on C4 with robustness 2 finds the two opposite pairs") {
    auto cuts = enumerate_cuts(cycle(4), 2, 2);
    REQUIRE(cuts.size() == 2);
    for (const auto& c : cuts) {
        CHECK(c.size == 2);
        CHECK(c.side_a.size() == 2);
    }
    CHECK(cuts[0].side_a != cuts[1].side_a);
}

TEST_CASE("a 3-edge-connected graph has no 2-robust cut of size 2") {
    CHECK(enumerate_cuts(doubled_cycle(5), 2, 2).empty());
}

TEST_CASE("the end-of-proof configuration contains the internal 7-edge-cut") {
    Instance inst = dts8_configuration(false);
    bool found = false;
    for (const Cut& c : enumerate_cuts(inst, 7, 2)) {
        if (c.size != 7)
            continue;
        std::set<VertexId> a(c.side_a.begin(), c.side_a.end());
        if (a == std::set<VertexId>{8, 9}) {
            found = true;
            CHECK(is_internal(inst, c));
        }
    }
    CHECK(found);
}

TEST_CASE("the closed figure's only 3-cuts are its degree-3 vertex stars") {
    Instance inst = gen({Family::D5b}).instance;
    auto cuts = enumerate_cuts(inst, 3, 1);
    REQUIRE(cuts.size() == 2);
    CHECK(cuts[0].side_a == std::vector<VertexId>{1}); // t
    CHECK(cuts[1].side_a == std::vector<VertexId>{2}); // s
}

TEST_CASE("is_internal distinguishes interior cuts") {
    Instance inst = wheel(5);
    Cut hub_star;
    hub_star.side_a = {5};
    for (EdgeId e : inst.edge_ids())
        if (inst.edge_u(e) == 5 || inst.edge_v(e) == 5)
            hub_star.edges.push_back(e);
    hub_star.size = static_cast<int>(hub_star.edges.size());
    CHECK(is_internal(inst, hub_star));

    Cut split; // both sides touch the rim
    split.side_a = {0, 1};
    for (EdgeId e : inst.edge_ids()) {
        bool a = split.side_a[0] == inst.edge_u(e) || split.side_a[1] == inst.edge_u(e);
        bool b = split.side_a[0] == inst.edge_v(e) || split.side_a[1] == inst.edge_v(e);
        if (a != b)
            split.edges.push_back(e);
    }
    split.size = static_cast<int>(split.edges.size());
    CHECK(!is_internal(inst, split));

    CHECK_THROWS_AS(is_internal(cycle(4).with_faces(std::nullopt, std::nullopt), hub_star),
                    BuildError);
}

TEST_CASE("the square-with-blob figure has an internal 5-edge-cut around the blob") {
    Instance inst = gen({Family::TS33a}).instance;
    bool found = false;
    for (const Cut& c : enumerate_cuts(inst, 5, 1)) {
        if (c.size == 5 && c.side_a == std::vector<VertexId>{4}) {
            found = true;
            CHECK(is_internal(inst, c));
        }
    }
    CHECK(found);
}

TEST_CASE("cut types count touched specified boundaries") {
    Instance inst = gen({Family::Star, 1}).instance; // two disjoint boundaries
    REQUIRE(inst.fgs().has_value());
    auto cuts = enumerate_cuts(inst, 6, 1);
    bool saw1 = false, saw2 = false, saw3 = false;
    for (const Cut& c : cuts) {
        int t = cut_type(inst, c);
        saw1 |= t == 1;
        saw2 |= t == 2;
        saw3 |= t == 3;
    }
    // every vertex star here touches some boundary; type 2 and 3 both occur
    CHECK(saw2);
    CHECK(saw3);
    CHECK(!saw1);
    Instance nofaces = inst.with_faces(inst.fg(), std::nullopt);
    CHECK_THROWS_AS(cut_type(nofaces, cuts.front()), BuildError);
}

TEST_CASE("crossing requires all four corners") {
    Instance c6 = cycle(6);
    Cut top, left, inner;
    auto mk = [&](std::vector<VertexId> side) {
        Cut c;
        c.side_a = std::move(side);
        std::set<VertexId> s(c.side_a.begin(), c.side_a.end());
        for (EdgeId e : c6.edge_ids())
            if (s.count(c6.edge_u(e)) != s.count(c6.edge_v(e)))
                c.edges.push_back(e);
        c.size = static_cast<int>(c.edges.size());
        return c;
    };
    top = mk({1, 2});      // nested inside {1,2,3}
    inner = mk({1, 2, 3});
    left = mk({2, 3, 4});
    CHECK(!crossing(c6, top, inner));       // nesting
    CHECK(!crossing(c6, inner, mk({0, 4, 5}))); // complementary description
    CHECK(crossing(c6, inner, left));       // the four corners 1 / 4 / {2,3} / {0,5}
}

TEST_CASE("boundary connectivity: wheel hubs and low-degree interiors") {
    CHECK(boundary_connectivity(wheel(5), 5) == 5);
    CHECK(boundary_connectivity(wheel(4), 4) == 4); // degree bound fails the clause
    CHECK(boundary_connectivity(wheel(5), 0) == kUnbounded);
}

TEST_CASE("Menger consistency against brute-force cuts") {
    auto corpus = gen_random_3ec(41, 9, 25);
    int interior_checked = 0;
    for (const Instance& inst : corpus) {
        if (!inst.fg())
            continue;
        auto boundary = inst.specified_boundary_vertices();
        for (VertexId v : inst.vertex_ids()) {
            if (boundary.count(v))
                continue;
            int flow = boundary_connectivity(inst, v);
            int cut = brute_force_boundary_cut(inst, v, boundary);
            CHECK(flow == cut);
            ++interior_checked;
        }
    }
    CHECK(interior_checked > 3);
}

TEST_CASE("enumerate_cuts agrees with brute-force bipartitions") {
    auto corpus = gen_random_3ec(42, 12, 20);
    for (const Instance& inst : corpus) {
        for (int kmax : {3, 4}) {
            auto got = enumerate_cuts(inst, kmax, 2);
            auto want = brute_force_cuts(inst, kmax, 2);
            REQUIRE(got.size() == want.size());
            for (size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].side_a == want[i].first);
                CHECK(got[i].edges == want[i].second);
            }
        }
    }
}

TEST_CASE("odd cuts of a 3-edge-connected graph do not cross") {
    auto corpus = gen_random_3ec(43, 12, 30);
    for (const Instance& inst : corpus) {
        auto cuts = enumerate_cuts(inst, 3, 1);
        for (size_t i = 0; i < cuts.size(); ++i)
            for (size_t j = i + 1; j < cuts.size(); ++j)
                CHECK(!crossing(inst, cuts[i], cuts[j]));
    }
}
