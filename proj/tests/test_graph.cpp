#include <doctest.h>

#include "helpers.hpp"
#include "z3o/families.hpp"

using namespace z3o;
using namespace z3o::testing;

TEST_CASE("build: single vertex has one face") {
    Instance inst = single_vertex();
    CHECK(inst.vertex_count() == 1);
    CHECK(inst.edge_count() == 0);
    CHECK(inst.face_count() == 1);
}

TEST_CASE("build: three parallel edges satisfy Euler") {
    Instance inst = parallel_edges(3, +1, -1);
    CHECK(inst.face_count() == 3); // V - E + F = 2
    CHECK(inst.degree(0) == 3);
}

TEST_CASE("build: the closed 3-vertex figure has 5 edges and 4 faces") {
    Instance inst = gen({Family::D5b}).instance;
    CHECK(inst.vertex_count() == 3);
    CHECK(inst.edge_count() == 5);
    CHECK(inst.face_count() == 4);
    CHECK(inst.marks().d == 0);
}

TEST_CASE("build rejects a non-planar rotation system") {
    // theta graph with both rings in the same order traces one face
    BuildSpec s;
    s.vertices.push_back({0, 0, 0});
    s.vertices.push_back({1, 0, 0});
    for (int j = 0; j < 3; ++j)
        s.edges.push_back({j, 0, 1});
    s.rotation[0] = {0, 1, 2};
    s.rotation[1] = {0, 1, 2};
    CHECK_THROWS_AS(Instance::build(s), BuildError);
}

TEST_CASE("build rejects an invalid prescription sum") {
    BuildSpec s;
    s.vertices.push_back({0, 1, 0});
    s.vertices.push_back({1, 1, 0});
    s.edges.push_back({0, 0, 1});
    CHECK_THROWS_WITH_AS(Instance::build(s), doctest::Contains("prescription"), BuildError);
    CHECK_NOTHROW(Instance::build_unchecked(s));
}

TEST_CASE("build rejects a directed-vertex residual mismatch") {
    BuildSpec s;
    s.vertices.push_back({0, 0, 'd'});
    s.vertices.push_back({1, 0, 0});
    for (int j = 0; j < 3; ++j)
        s.edges.push_back({j, 0, 1});
    s.rotation[0] = {0, 1, 2};
    s.rotation[1] = {2, 1, 0};
    for (int j = 0; j < 3; ++j)
        s.orient[j] = 0; // residual(d) = -3 = 0, fine; flip p to break it
    s.vertices[0].p = 1;
    s.vertices[1].p = -1;
    CHECK_THROWS_WITH_AS(Instance::build(s), doctest::Contains("residual"), BuildError);
}

TEST_CASE("build rejects malformed rotations") {
    BuildSpec s;
    s.vertices.push_back({0, 0, 0});
    s.vertices.push_back({1, 0, 0});
    s.edges.push_back({0, 0, 1});
    s.edges.push_back({1, 0, 1});
    s.rotation[0] = {0, 0}; // repeats one edge, omits the other
    s.rotation[1] = {0, 1};
    CHECK_THROWS_WITH_AS(Instance::build(s), doctest::Contains("rotation"), BuildError);
}

TEST_CASE("residual: an oriented loop contributes nothing") {
    BuildSpec s;
    s.vertices.push_back({0, 0, 0});
    s.edges.push_back({0, 0, 0});
    s.rotation[0] = {0, 0};
    s.orient[0] = 0;
    Instance inst = Instance::build(s);
    CHECK(inst.residual(0) == 0);
}

TEST_CASE("residual: two in, one out gives +1") {
    Instance inst = parallel_edges(3, +1, -1);
    Orientation o{{0, 1}, {1, 1}, {2, 0}}; // edges 0,1 into vertex 0
    CHECK(inst.residual(0, o) == 1);
    CHECK(inst.residual(1, o) == 2);
    CHECK_THROWS_AS(inst.residual(7, o), BuildError);
}

TEST_CASE("residual at t of the closed figure over its fixed edges is 2") {
    Instance inst = gen({Family::D5b}).instance;
    CHECK(inst.residual(1) == 2); // t: both d->t edges point in
}

TEST_CASE("verify: empty graph and simple instances") {
    CHECK(single_vertex().verify({}).valid());
    Instance inst = parallel_edges(3, +1, -1);
    Orientation good{{0, 1}, {1, 1}, {2, 0}};
    CHECK(inst.verify(good).valid());
    Orientation bad{{0, 0}, {1, 1}, {2, 0}};
    auto rep = inst.verify(bad);
    CHECK(!rep.valid());
    CHECK(rep.offenders.size() == 2);
}

TEST_CASE("verify flags disagreement with fixed edges") {
    Instance inst = gen({Family::D5b}).instance;
    Orientation o = inst.fixed_orientation();
    o[4] = 2;
    o[0] = 1; // contradicts orient 0 0
    auto rep = inst.verify(o);
    CHECK(!rep.extends_fixed());
    CHECK(rep.fixed_mismatch == std::vector<EdgeId>{0});
}

TEST_CASE("incidence accessors agree with the rotation structure") {
    Instance inst = k4();
    for (VertexId v : inst.vertex_ids()) {
        CHECK(inst.degree(v) == 3);
        CHECK(inst.incident_edges(v).size() == 3);
        CHECK(inst.neighbors(v).size() == 3);
    }
    CHECK(inst.face_count() == 4);
}

TEST_CASE("specified boundary accessors") {
    Instance inst = wheel(5);
    auto b = inst.specified_boundary_vertices();
    CHECK(b.size() == 5);
    CHECK(!b.count(5)); // hub is interior
    CHECK(inst.on_face(*inst.fg(), 0));
    CHECK(!inst.on_face(*inst.fg(), 5));
}

TEST_CASE("structural equality and to_spec round trip") {
    for (auto fam : {Family::D5a, Family::D5b, Family::TS33a, Family::TS33b}) {
        Instance inst = gen({fam}).instance;
        Instance again = Instance::build(inst.to_spec());
        again = again.with_faces(inst.fg(), inst.fgs());
        CHECK(inst.structurally_equal(again));
    }
}
