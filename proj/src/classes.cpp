#include "z3o/classes.hpp"

#include <algorithm>
#include <sstream>

namespace z3o {

const char* class_name(GraphClass k) {
    switch (k) {
    case GraphClass::DTS: return "dts";
    case GraphClass::DTS3: return "3dts";
    case GraphClass::RST: return "rst";
    case GraphClass::RST3: return "3rst";
    case GraphClass::FT: return "ft";
    }
    return "?";
}

std::optional<GraphClass> class_from_name(const std::string& name) {
    for (GraphClass k : {GraphClass::DTS, GraphClass::DTS3, GraphClass::RST,
                         GraphClass::RST3, GraphClass::FT})
        if (name == class_name(k))
            return k;
    return std::nullopt;
}

namespace {

struct Checker {
    const Instance& inst;
    ClassReport rep;

    explicit Checker(const Instance& i, GraphClass k) : inst(i) { rep.klass = k; }

    void fail(const std::string& clause, const std::string& note,
              std::optional<Cut> cut = std::nullopt,
              std::optional<VertexId> v = std::nullopt) {
        rep.violations.push_back({clause, note, std::move(cut), v});
    }

    ClassReport done() {
        rep.pass = rep.violations.empty();
        return rep;
    }

    bool three_edge_connected(const std::string& clause) {
        int k = edge_connectivity(inst);
        if (k < 3 && k != kUnbounded) {
            fail(clause, "edge connectivity " + std::to_string(k) + " < 3");
            return false;
        }
        return true;
    }

    // every 3-edge-cut is the star of one of the allowed marked vertices
    void three_cuts_are_marked_stars(const std::string& clause,
                                     const std::vector<std::optional<VertexId>>& allowed) {
        for (const Cut& c : enumerate_cuts(inst, 3, 1)) {
            if (c.size != 3)
                continue;
            bool ok = false;
            if (c.side_a.size() == 1 || c.side_a.size() + 1 == inst.vertex_ids().size()) {
                VertexId lone = c.side_a.size() == 1
                                    ? c.side_a.front()
                                    : [&] {
                                          for (VertexId v : inst.vertex_ids())
                                              if (!std::count(c.side_a.begin(),
                                                              c.side_a.end(), v))
                                                  return v;
                                          return VertexId(-1);
                                      }();
                // the star cut of `lone` only when the whole degree crosses
                if (inst.degree(lone) == 3)
                    for (const auto& m : allowed)
                        if (m && *m == lone)
                            ok = true;
            }
            if (!ok) {
                fail(clause, "3-edge-cut is not an allowed vertex star", c);
                return; // one witness is enough
            }
        }
    }

    void interior_five_paths(const std::string& clause) {
        auto boundary = inst.specified_boundary_vertices();
        for (VertexId v : inst.vertex_ids()) {
            if (boundary.count(v))
                continue;
            int k = boundary_connectivity(inst, v);
            if (k < 5) {
                fail(clause,
                     "interior vertex has only " + std::to_string(k) +
                         " edge-disjoint paths to the specified boundary",
                     std::nullopt, v);
                return;
            }
        }
    }

    int unoriented_degree3_count() const {
        int a = 0;
        for (VertexId v : inst.vertex_ids())
            if (inst.degree(v) == 3 && !(inst.marks().d && *inst.marks().d == v))
                ++a;
        return a;
    }
};

bool small_graph_fiat(const Instance& inst) {
    if (inst.vertex_count() > 2)
        return false;
    int k = edge_connectivity(inst);
    return k == kUnbounded || k >= 3;
}

ClassReport check_dts_like(const Instance& inst, bool variant3) {
    Checker c(inst, variant3 ? GraphClass::DTS3 : GraphClass::DTS);
    if (small_graph_fiat(inst))
        return c.done();

    c.three_edge_connected("1");

    const auto& m = inst.marks();
    if (!inst.fg()) {
        c.fail("2", "no specified face F_G");
        return c.done();
    }
    if (m.r)
        c.fail("2", "mark r is not part of this class", std::nullopt, *m.r);

    auto fg = *inst.fg();
    if (m.d) {
        int deg = inst.degree(*m.d);
        if (deg < 3 || deg > 5)
            c.fail("3", "d has degree " + std::to_string(deg), std::nullopt, *m.d);
        if (!inst.on_face(fg, *m.d))
            c.fail("3", "d is not on the boundary of F_G", std::nullopt, *m.d);
        // orientation of d is enforced structurally at build time
    }
    for (const auto& tv : {m.t, m.s}) {
        if (!tv)
            continue;
        if (inst.degree(*tv) != 3)
            c.fail("4", "t/s has degree " + std::to_string(inst.degree(*tv)), std::nullopt,
                   *tv);
        if (!inst.on_face(fg, *tv))
            c.fail("4", "t/s is not on the boundary of F_G", std::nullopt, *tv);
    }
    if (m.d) {
        int a = c.unoriented_degree3_count();
        if (inst.degree(*m.d) > 5 - a)
            c.fail("5",
                   "deg(d) = " + std::to_string(inst.degree(*m.d)) + " > 5 - " +
                       std::to_string(a),
                   std::nullopt, *m.d);
    }
    if (!variant3) {
        c.three_cuts_are_marked_stars("6", {m.d, m.t, m.s});
    } else {
        for (VertexId v : inst.vertex_ids()) {
            bool special = (m.d && *m.d == v) || (m.t && *m.t == v) || (m.s && *m.s == v);
            if (!special && inst.degree(v) < 4) {
                c.fail("6'", "unmarked vertex of degree " + std::to_string(inst.degree(v)),
                       std::nullopt, v);
                break;
            }
        }
        if (m.d && m.t && m.s) {
            for (const Cut& cut : enumerate_cuts(inst, 3, 1)) {
                if (cut.size != 3)
                    continue;
                std::set<VertexId> a(cut.side_a.begin(), cut.side_a.end());
                int in_a = (a.count(*m.d) ? 1 : 0) + (a.count(*m.t) ? 1 : 0) +
                           (a.count(*m.s) ? 1 : 0);
                if (in_a != 1 && in_a != 2) {
                    c.fail("6'", "3-edge-cut does not separate one of d,t,s from the others",
                           cut);
                    break;
                }
            }
        }
    }
    c.interior_five_paths("7");
    return c.done();
}

ClassReport check_rst_like(const Instance& inst, bool variant3) {
    Checker c(inst, variant3 ? GraphClass::RST3 : GraphClass::RST);
    c.three_edge_connected("1");

    const auto& m = inst.marks();
    if (!inst.fg()) {
        c.fail("2", "no specified face F_G");
        return c.done();
    }
    if (m.d)
        c.fail("2", "directed vertex d is not part of this class", std::nullopt, *m.d);

    auto fg = *inst.fg();
    for (const auto& mv : {m.r, m.s, m.t}) {
        if (!mv)
            continue;
        if (inst.degree(*mv) != 3)
            c.fail("3", "specified vertex has degree " + std::to_string(inst.degree(*mv)),
                   std::nullopt, *mv);
        if (!inst.on_face(fg, *mv))
            c.fail("3", "specified vertex is not on the boundary of F_G", std::nullopt, *mv);
    }
    if (!variant3) {
        c.three_cuts_are_marked_stars("4", {m.r, m.s, m.t});
    } else {
        for (VertexId v : inst.vertex_ids()) {
            bool special = (m.r && *m.r == v) || (m.t && *m.t == v) || (m.s && *m.s == v);
            if (!special && inst.degree(v) < 4) {
                c.fail("4'", "unmarked vertex of degree " + std::to_string(inst.degree(v)),
                       std::nullopt, v);
                break;
            }
        }
        if (m.r && m.t && m.s) {
            for (const Cut& cut : enumerate_cuts(inst, 3, 1)) {
                if (cut.size != 3)
                    continue;
                std::set<VertexId> a(cut.side_a.begin(), cut.side_a.end());
                int in_a = (a.count(*m.r) ? 1 : 0) + (a.count(*m.t) ? 1 : 0) +
                           (a.count(*m.s) ? 1 : 0);
                if (in_a != 1 && in_a != 2) {
                    c.fail("4'", "3-edge-cut does not separate one of r,s,t from the others",
                           cut);
                    break;
                }
            }
        }
    }
    c.interior_five_paths("5");
    return c.done();
}

} // namespace

ClassReport check_dts(const Instance& inst) { return check_dts_like(inst, false); }
ClassReport check_3dts(const Instance& inst) { return check_dts_like(inst, true); }
ClassReport check_rst(const Instance& inst) { return check_rst_like(inst, false); }
ClassReport check_3rst(const Instance& inst) { return check_rst_like(inst, true); }

ClassReport check_ft(const Instance& inst) {
    Checker c(inst, GraphClass::FT);
    if (small_graph_fiat(inst))
        return c.done();

    c.three_edge_connected("1");

    const auto& m = inst.marks();
    if (!inst.fg() || !inst.fgs()) {
        c.fail("2", "two specified faces are required");
        return c.done();
    }
    if (m.s)
        c.fail("2", "mark s is not part of this class", std::nullopt, *m.s);
    if (m.r)
        c.fail("2", "mark r is not part of this class", std::nullopt, *m.r);
    if (m.d && m.t)
        c.fail("2", "at most one specified vertex d or t");

    auto fg = *inst.fg();
    auto fgs = *inst.fgs();
    {
        auto a = inst.face_vertices(fg);
        auto b = inst.face_vertices(fgs);
        std::vector<VertexId> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        if (inst.face_index(inst.resolve_dart(fg)) == inst.face_index(inst.resolve_dart(fgs)))
            c.fail("2", "the two specified faces coincide");
        else if (common.empty())
            c.fail("3", "F_G and F_G* have no common vertex");
    }
    if (m.d) {
        int deg = inst.degree(*m.d);
        if (deg < 3 || deg > 5)
            c.fail("4", "d has degree " + std::to_string(deg), std::nullopt, *m.d);
        if (!inst.on_face(fg, *m.d) || !inst.on_face(fgs, *m.d))
            c.fail("4", "d is not on the boundary of both faces", std::nullopt, *m.d);
    }
    if (m.t) {
        if (inst.degree(*m.t) != 3)
            c.fail("5", "t has degree " + std::to_string(inst.degree(*m.t)), std::nullopt,
                   *m.t);
        if (!inst.on_face(fg, *m.t) && !inst.on_face(fgs, *m.t))
            c.fail("5", "t is on neither specified boundary", std::nullopt, *m.t);
    }
    c.three_cuts_are_marked_stars("6", {m.d, m.t});
    c.interior_five_paths("7");
    return c.done();
}

ClassReport check_class(const Instance& inst, GraphClass k) {
    switch (k) {
    case GraphClass::DTS: return check_dts(inst);
    case GraphClass::DTS3: return check_3dts(inst);
    case GraphClass::RST: return check_rst(inst);
    case GraphClass::RST3: return check_3rst(inst);
    case GraphClass::FT: return check_ft(inst);
    }
    throw std::logic_error("bad class");
}

std::optional<GraphClass> any_class(const Instance& inst) {
    for (GraphClass k : {GraphClass::DTS, GraphClass::DTS3, GraphClass::RST,
                         GraphClass::RST3, GraphClass::FT})
        if (check_class(inst, k).pass)
            return k;
    return std::nullopt;
}

} // namespace z3o
