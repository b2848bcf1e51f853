#include <doctest.h>

#include "helpers.hpp"
#include "z3o/families.hpp"
#include "z3o/io.hpp"
#include "z3o/mutate.hpp"
#include "z3o/oracle.hpp"
#include "z3o/reducer.hpp"

using namespace z3o;
using namespace z3o::testing;

namespace {

void check_progress(const TraceNode& node, const Measure* parent) {
    if (parent)
        CHECK(node.measure < *parent);
    for (const auto& c : node.children)
        check_progress(c, &node.measure);
}

} // namespace

TEST_CASE("a fully oriented instance is a base step") {
    Instance inst = parallel_edges(3, +1, -1);
    inst = inst.with_orientations({{0, 1}, {1, 1}, {2, 0}});
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::Base);
}

TEST_CASE("a 2-robust 4-cut triggers a cut split") {
    Instance inst = doubled_cycle(8);
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::CutSplit);
    CHECK(step->cut.size == 4);
    auto plan = apply(inst, *step);
    REQUIRE(plan.first.size() == 1);
    REQUIRE(plan.second);
    auto r1 = solve(plan.first[0]);
    REQUIRE(r1.sat);
    Instance c2 = plan.second(r1.orientation);
    CHECK(c2.marks().d.has_value());
    auto r2 = solve(c2);
    REQUIRE(r2.sat);
    Orientation o = plan.glue({r1.orientation, r2.orientation});
    CHECK(inst.verify(o).valid());
}

TEST_CASE("parallel boundary copies are chords and split the doubled triangle") {
    // the doubled C3 has no 2-robust cut, and its high copies are chords
    Instance inst = doubled_cycle(3);
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::ChordSplit);
    auto plan = apply(inst, *step);
    auto r1 = solve(plan.first[0]);
    REQUIRE(r1.sat);
    Instance c2 = plan.second(r1.orientation);
    auto r2 = solve(c2);
    REQUIRE(r2.sat);
    CHECK(inst.verify(plan.glue({r1.orientation, r2.orientation})).valid());
}

TEST_CASE("orient-vertex marks the chosen boundary vertex as d") {
    auto corpus = gen_corpus(85, 12, GraphClass::RST, 40);
    int seen = 0;
    for (const Instance& inst : corpus) {
        auto step = find_step(inst);
        if (!step || step->kind != StepKind::OrientVertex)
            continue;
        auto plan = apply(inst, *step);
        Instance child = plan.first[0];
        CHECK(child.marks().d == step->vertex);
        CHECK(measure_of(child) < measure_of(inst));
        CHECK(measure_of(child).unoriented ==
              measure_of(inst).unoriented - inst.degree(step->vertex));
        ++seen;
    }
    CHECK(seen >= 1);
}

TEST_CASE("a degree-6 boundary vertex loses one boundary edge instead") {
    // tripled cycle: every vertex degree 6
    BuildSpec s;
    for (int i = 0; i < 3; ++i)
        s.vertices.push_back({i, 0, 0});
    EdgeId next = 0;
    std::vector<std::array<EdgeId, 3>> tri(3);
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) {
            tri[i][c] = next;
            s.edges.push_back({next++, i, (i + 1) % 3});
        }
    for (int i = 0; i < 3; ++i) {
        int prev = (i + 2) % 3;
        s.rotation[i] = {tri[prev][0], tri[prev][1], tri[prev][2],
                         tri[i][2], tri[i][1], tri[i][0]};
    }
    Instance inst = Instance::build(s);
    inst = inst.with_faces(face_with_edges(inst, {tri[0][0], tri[1][0], tri[2][0]}),
                           std::nullopt);
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::DeleteBoundaryEdge);
    auto plan = apply(inst, *step);
    auto r = solve(plan.first[0]);
    REQUIRE(r.sat);
    CHECK(inst.verify(plan.glue({r.orientation})).valid());
}

TEST_CASE("parallel edges at d are contracted first") {
    Instance inst = doubled_cycle(4);
    auto tails = orientation_satisfying(inst, 0);
    inst = inst.with_orientations(*tails);
    SpecialVertices m;
    m.d = 0;
    inst = inst.with_marks(m);
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::ContractParallelAtD);
    auto plan = apply(inst, *step);
    auto r = solve(plan.first[0]);
    REQUIRE(r.sat);
    CHECK(inst.verify(plan.glue({r.orientation})).valid());
}

TEST_CASE("a chord with a low-degree endpoint splits the instance") {
    // reduction child observed in the corpus: a triangle-ish multigraph
    // whose F_G has the chord 7 at the degree-4 vertex 4
    const char* text = R"(z3g 1
vertex 0 p=0
vertex 1 p=-1 mark=d
vertex 4 p=1
edge 1 0 1
edge 3 1 4
edge 6 4 0
edge 7 4 0
edge 9 4 0
edge 10 0 1
rot 0 1 10 6 7 9
rot 1 1 3 10
rot 4 3 9 7 6
orient 1 0
orient 3 1
orient 10 1
face FG 3 4
)";
    Instance inst = Instance::build(parse_z3g_string(text));
    auto step = find_step(inst);
    REQUIRE(step.has_value());
    CHECK(step->kind == StepKind::ChordSplit);
    auto plan = apply(inst, *step);
    auto r1 = solve(plan.first[0]);
    REQUIRE(r1.sat);
    Instance c2 = plan.second(r1.orientation);
    auto r2 = solve(c2);
    REQUIRE(r2.sat);
    CHECK(inst.verify(plan.glue({r1.orientation, r2.orientation})).valid());
}

TEST_CASE("reduce_solve matches the oracle across the corpus") {
    auto dts = gen_corpus(81, 12, GraphClass::DTS, 40);
    auto ft = gen_corpus(82, 12, GraphClass::FT, 20);
    auto rst = gen_corpus(83, 12, GraphClass::RST, 20);
    std::vector<Instance> all;
    for (auto* v : {&dts, &ft, &rst})
        for (auto& i : *v)
            all.push_back(i);
    ReducerConfig cfg;
    cfg.oracle_vertex_budget = 2;
    for (const Instance& inst : all) {
        auto r = reduce_solve(inst, cfg);
        CHECK(r.sat == solve(inst).sat);
        CHECK(r.sat);
        CHECK(inst.verify(r.orientation).valid());
        check_progress(r.trace, nullptr);
    }
}

TEST_CASE("reduce_solve decides the UNSAT families too") {
    ReducerConfig cfg;
    cfg.oracle_vertex_budget = 2;
    for (auto fam : {Family::D5a, Family::D5b, Family::TS33a, Family::TS33b}) {
        auto fi = gen({fam});
        auto r = reduce_solve(fi.instance, cfg);
        CHECK(!r.sat);
    }
    auto star = gen({Family::Star, 1});
    CHECK(!reduce_solve(star.instance, cfg).sat);
}

TEST_CASE("every direction choice at the oriented vertex keeps the child solvable") {
    auto corpus = gen_corpus(84, 10, GraphClass::RST, 20);
    int exercised = 0;
    for (const Instance& inst : corpus) {
        if (inst.edge_count() > 20 || inst.marks().d)
            continue;
        auto step = find_step(inst);
        if (!step || step->kind != StepKind::OrientVertex)
            continue;
        VertexId v = step->vertex;
        std::vector<EdgeId> free;
        for (EdgeId e : inst.incident_edges(v))
            if (!inst.oriented(e) && !inst.is_loop(e))
                free.push_back(e);
        std::sort(free.begin(), free.end());
        free.erase(std::unique(free.begin(), free.end()), free.end());
        int k = static_cast<int>(free.size());
        int target = mod3(inst.p(v) - inst.residual(v));
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            int in = __builtin_popcount(mask);
            if (mod3(2 * in - k) != target)
                continue;
            std::vector<std::pair<EdgeId, VertexId>> tails;
            for (int i = 0; i < k; ++i)
                tails.push_back(
                    {free[i], (mask >> i) & 1 ? inst.edge_other(free[i], v) : v});
            Instance child = inst.with_orientations(tails);
            CHECK(solve(child).sat);
        }
        ++exercised;
    }
    CHECK(exercised >= 3);
}

TEST_CASE("trace labels and step counters are populated") {
    ReducerConfig cfg;
    cfg.oracle_vertex_budget = 2;
    auto r = reduce_solve(doubled_cycle(8), cfg);
    CHECK(r.sat);
    CHECK(r.steps + r.oracle_leaves + r.fallbacks > 0);
    CHECK(!r.trace.label.empty());
}
