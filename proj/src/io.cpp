#include "z3o/io.hpp"

#include <fstream>
#include <sstream>

namespace z3o {

namespace {

[[noreturn]] void bad_line(int line, const std::string& why) {
    throw ParseError("line " + std::to_string(line) + ": " + why);
}

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size())
            bad_line(line, std::string("bad ") + what + " '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        bad_line(line, std::string("bad ") + what + " '" + tok + "'");
    }
}

} // namespace

BuildSpec parse_z3g(std::istream& in) {
    BuildSpec spec;
    std::string raw;
    int line = 0;
    bool header_seen = false;
    std::set<VertexId> seen_v;
    std::set<EdgeId> seen_e;
    std::set<VertexId> seen_rot;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        std::istringstream ss(text);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (!header_seen) {
            if (tok.size() != 2 || tok[0] != "z3g" || tok[1] != "1")
                bad_line(line, "expected header 'z3g 1'");
            header_seen = true;
            continue;
        }
        const std::string& kind = tok[0];
        if (kind == "vertex") {
            if (tok.size() < 3 || tok.size() > 4)
                bad_line(line, "vertex <id> p=<-1|0|1> [mark=d|t|s|r]");
            VertexSpec v;
            v.id = parse_int(tok[1], line, "vertex id");
            if (!seen_v.insert(v.id).second)
                bad_line(line, "duplicate vertex " + tok[1]);
            if (tok[2].rfind("p=", 0) != 0)
                bad_line(line, "expected p=<-1|0|1>");
            v.p = parse_int(tok[2].substr(2), line, "prescription");
            if (v.p < -1 || v.p > 1)
                bad_line(line, "prescription must be -1, 0 or 1");
            if (tok.size() == 4) {
                if (tok[3].rfind("mark=", 0) != 0 || tok[3].size() != 6)
                    bad_line(line, "expected mark=d|t|s|r");
                char m = tok[3][5];
                if (m != 'd' && m != 't' && m != 's' && m != 'r')
                    bad_line(line, "expected mark=d|t|s|r");
                v.mark = m;
            }
            spec.vertices.push_back(v);
        } else if (kind == "edge") {
            if (tok.size() != 4)
                bad_line(line, "edge <id> <u> <v>");
            EdgeSpec e;
            e.id = parse_int(tok[1], line, "edge id");
            if (!seen_e.insert(e.id).second)
                bad_line(line, "duplicate edge " + tok[1]);
            e.u = parse_int(tok[2], line, "endpoint");
            e.v = parse_int(tok[3], line, "endpoint");
            spec.edges.push_back(e);
        } else if (kind == "rot") {
            if (tok.size() < 2)
                bad_line(line, "rot <vertex> <edge>...");
            VertexId v = parse_int(tok[1], line, "vertex id");
            if (!seen_rot.insert(v).second)
                bad_line(line, "duplicate rot line for vertex " + tok[1]);
            std::vector<EdgeId> ring;
            for (size_t i = 2; i < tok.size(); ++i)
                ring.push_back(parse_int(tok[i], line, "edge id"));
            spec.rotation[v] = ring;
        } else if (kind == "orient") {
            if (tok.size() != 3)
                bad_line(line, "orient <edge> <tail-vertex>");
            EdgeId e = parse_int(tok[1], line, "edge id");
            if (spec.orient.count(e))
                bad_line(line, "duplicate orient line for edge " + tok[1]);
            spec.orient[e] = parse_int(tok[2], line, "tail vertex");
        } else if (kind == "face") {
            if (tok.size() != 4 || (tok[1] != "FG" && tok[1] != "FGS"))
                bad_line(line, "face FG|FGS <edge> <vertex>");
            FaceRef f = FaceRef::by_vertex(parse_int(tok[2], line, "edge id"),
                                           parse_int(tok[3], line, "vertex id"));
            auto& slot = tok[1] == "FG" ? spec.fg : spec.fgs;
            if (slot)
                bad_line(line, "duplicate face " + tok[1]);
            slot = f;
        } else {
            bad_line(line, "unknown directive '" + kind + "'");
        }
    }
    if (!header_seen)
        throw ParseError("empty input (missing 'z3g 1' header)");
    return spec;
}

BuildSpec parse_z3g_string(const std::string& text) {
    std::istringstream in(text);
    return parse_z3g(in);
}

Instance load_z3g(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return Instance::build(parse_z3g(in));
}

namespace {

// A face directive names a dart by (edge, vertex); for a loop that pair is
// read back as the first dart. Pick an orbit representative that survives
// the round trip.
std::pair<EdgeId, VertexId> face_directive(const Instance& inst, const FaceRef& f) {
    for (int d : inst.face_orbit(inst.resolve_dart(f))) {
        EdgeId e = inst.dart_edge(d);
        VertexId v = inst.dart_vertex(d);
        int resolved = inst.resolve_dart(FaceRef::by_vertex(e, v));
        if (inst.face_index(resolved) == inst.face_index(d))
            return {e, v};
    }
    throw BuildError("specified face has no writable representative dart");
}

} // namespace

std::string write_z3g(const Instance& inst) {
    std::ostringstream out;
    out << "z3g 1\n";
    for (VertexId v : inst.vertex_ids()) {
        out << "vertex " << v << " p=" << inst.p_signed(v);
        const auto& m = inst.marks();
        if (m.d && *m.d == v)
            out << " mark=d";
        else if (m.t && *m.t == v)
            out << " mark=t";
        else if (m.s && *m.s == v)
            out << " mark=s";
        else if (m.r && *m.r == v)
            out << " mark=r";
        out << "\n";
    }
    for (EdgeId e : inst.edge_ids())
        out << "edge " << e << " " << inst.edge_u(e) << " " << inst.edge_v(e) << "\n";
    for (VertexId v : inst.vertex_ids()) {
        auto ring = inst.incident_edges(v);
        if (ring.empty())
            continue;
        out << "rot " << v;
        for (EdgeId e : ring)
            out << " " << e;
        out << "\n";
    }
    for (EdgeId e : inst.edge_ids())
        if (auto t = inst.tail(e))
            out << "orient " << e << " " << *t << "\n";
    if (auto f = inst.fg()) {
        auto [e, v] = face_directive(inst, *f);
        out << "face FG " << e << " " << v << "\n";
    }
    if (auto f = inst.fgs()) {
        auto [e, v] = face_directive(inst, *f);
        out << "face FGS " << e << " " << v << "\n";
    }
    return out.str();
}

Orientation parse_orientation(std::istream& in) {
    Orientation o;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        std::istringstream ss(text);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (tok[0] != "orient" || tok.size() != 3)
            bad_line(line, "orientation files hold only 'orient <edge> <tail>' lines");
        EdgeId e = parse_int(tok[1], line, "edge id");
        if (o.count(e))
            bad_line(line, "duplicate orient line for edge " + tok[1]);
        o[e] = parse_int(tok[2], line, "tail vertex");
    }
    return o;
}

std::string write_orientation(const Orientation& o) {
    std::ostringstream out;
    for (const auto& [e, t] : o)
        out << "orient " << e << " " << t << "\n";
    return out.str();
}

} // namespace z3o
