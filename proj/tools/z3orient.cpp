// Command-line front end: validate, solve, count, class-check, cut listing,
// family generation, certificate verification.
//
// Exit codes: 0 success / 1 negative verdict / 2 input error / 3 class
// violation (class subcommand).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "z3o/classes.hpp"
#include "z3o/cuts.hpp"
#include "z3o/families.hpp"
#include "z3o/io.hpp"
#include "z3o/oracle.hpp"
#include "z3o/reducer.hpp"

using namespace z3o;

namespace {

Instance load_or_exit(const std::string& path) {
    if (path == "-") {
        return Instance::build(parse_z3g(std::cin));
    }
    return load_z3g(path);
}

void dump_trace(const TraceNode& node, int depth, std::ostream& out) {
    for (int i = 0; i < depth; ++i)
        out << "  ";
    out << "step " << node.label << " measure=(" << node.measure.edges << ","
        << node.measure.unoriented << ")\n";
    for (const auto& c : node.children)
        dump_trace(c, depth + 1, out);
}

int cmd_validate(const std::string& path) {
    Instance inst = load_or_exit(path);
    std::cout << "ok: " << inst.vertex_count() << " vertices, " << inst.edge_count()
              << " edges, " << inst.face_count() << " faces, " << inst.component_count()
              << " component(s)\n";
    long long sum = 0;
    for (VertexId v : inst.vertex_ids())
        sum += inst.p(v);
    std::cout << "prescription sum = 0 (mod 3)\n";
    (void)sum;
    const auto& m = inst.marks();
    auto show = [&](const char* name, const std::optional<VertexId>& v) {
        if (v)
            std::cout << "mark " << name << " = " << *v << " (degree "
                      << inst.degree(*v) << ")\n";
    };
    show("d", m.d);
    show("t", m.t);
    show("s", m.s);
    show("r", m.r);
    if (auto f = inst.fg())
        std::cout << "F_G boundary: " << inst.face_edges(*f).size() << " edges\n";
    if (auto f = inst.fgs())
        std::cout << "F_G* boundary: " << inst.face_edges(*f).size() << " edges\n";
    return 0;
}

int cmd_solve(const std::string& path, const std::string& engine, bool trace) {
    Instance inst = load_or_exit(path);
    Orientation o;
    bool sat = false;
    if (engine == "oracle") {
        SolveResult r = solve(inst);
        sat = r.sat;
        o = std::move(r.orientation);
    } else if (engine == "reduce" || engine == "auto") {
        ReduceResult r = reduce_solve(inst);
        sat = r.sat;
        o = std::move(r.orientation);
        if (trace)
            dump_trace(r.trace, 0, std::cerr);
    } else {
        std::cerr << "unknown engine '" << engine << "'\n";
        return 2;
    }
    if (!sat) {
        std::cout << "UNSAT\n";
        return 1;
    }
    std::cout << write_orientation(o);
    return 0;
}

int cmd_count(const std::string& path) {
    Instance inst = load_or_exit(path);
    std::cout << count(inst) << "\n";
    return 0;
}

int cmd_class(const std::string& path, const std::string& klass) {
    Instance inst = load_or_exit(path);
    auto k = class_from_name(klass);
    if (!k) {
        std::cerr << "unknown class '" << klass << "' (dts|3dts|rst|3rst|ft)\n";
        return 2;
    }
    ClassReport rep = check_class(inst, *k);
    if (rep.pass) {
        std::cout << class_name(*k) << ": pass\n";
        return 0;
    }
    std::cout << class_name(*k) << ": fail\n";
    for (const auto& v : rep.violations) {
        std::cout << "  clause " << v.clause << ": " << v.note;
        if (v.vertex)
            std::cout << " [vertex " << *v.vertex << "]";
        if (v.cut) {
            std::cout << " [cut";
            for (EdgeId e : v.cut->edges)
                std::cout << " " << e;
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return 3;
}

int cmd_cuts(const std::string& path, int kmax, int robust) {
    Instance inst = load_or_exit(path);
    for (const Cut& c : enumerate_cuts(inst, kmax, robust)) {
        std::cout << "cut size=" << c.size << " side=[";
        for (size_t i = 0; i < c.side_a.size(); ++i)
            std::cout << (i ? " " : "") << c.side_a[i];
        std::cout << "] edges=[";
        for (size_t i = 0; i < c.edges.size(); ++i)
            std::cout << (i ? " " : "") << c.edges[i];
        std::cout << "]";
        if (inst.fg()) {
            std::cout << (is_internal(inst, c) ? " internal" : "");
            if (inst.fgs())
                std::cout << " type=" << cut_type(inst, c);
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_gen(const std::string& family, int k, int blob, const std::string& out_path) {
    auto f = family_from_name(family);
    if (!f) {
        std::cerr << "unknown family '" << family << "' (d5a|d5b|ts33a|ts33b|star)\n";
        return 2;
    }
    FamilySpec spec;
    spec.family = *f;
    spec.k = k;
    spec.blob = blob;
    FamilyInstance fi = gen(spec);
    std::string text = write_z3g(fi.instance);
    if (out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return 0;
}

int cmd_verify(const std::string& path, const std::string& orient_path) {
    Instance inst = load_or_exit(path);
    Orientation o;
    if (orient_path == "-") {
        o = parse_orientation(std::cin);
    } else {
        std::ifstream in(orient_path);
        if (!in) {
            std::cerr << "cannot open " << orient_path << "\n";
            return 2;
        }
        o = parse_orientation(in);
    }
    VerifyReport rep = inst.verify(o);
    if (!rep.unknown.empty()) {
        std::cerr << "orientation names unknown edges or tails\n";
        return 2;
    }
    if (rep.valid()) {
        std::cout << "valid\n";
        return 0;
    }
    for (EdgeId e : rep.unoriented)
        std::cout << "edge " << e << " unoriented\n";
    for (EdgeId e : rep.fixed_mismatch)
        std::cout << "edge " << e << " contradicts the fixed orientation\n";
    for (const auto& off : rep.offenders)
        std::cout << "vertex " << off.vertex << " residual " << off.residual
                  << " wants " << off.prescribed << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar Z3 orientation toolkit"};
    app.require_subcommand(1);

    std::string path, engine = "auto", klass, family, orient_path, out_path = "-";
    int kmax = 3, robust = 1, k = 1, blob = 1;
    bool trace = false;

    auto* validate = app.add_subcommand("validate", "check a z3g file");
    validate->add_option("file", path)->required();

    auto* solve_cmd = app.add_subcommand("solve", "find a valid orientation");
    solve_cmd->add_option("file", path)->required();
    solve_cmd->add_option("--engine", engine, "oracle|reduce|auto");
    solve_cmd->add_flag("--trace", trace, "dump the reduction trace to stderr");

    auto* count_cmd = app.add_subcommand("count", "count valid orientations");
    count_cmd->add_option("file", path)->required();

    auto* class_cmd = app.add_subcommand("class", "check class membership");
    class_cmd->add_option("file", path)->required();
    class_cmd->add_option("--klass", klass, "dts|3dts|rst|3rst|ft")->required();

    auto* cuts_cmd = app.add_subcommand("cuts", "list small edge-cuts");
    cuts_cmd->add_option("file", path)->required();
    cuts_cmd->add_option("--kmax", kmax, "maximum cut size");
    cuts_cmd->add_option("--robust", robust, "minimum side size");

    auto* gen_cmd = app.add_subcommand("gen", "generate a family instance");
    gen_cmd->add_option("--family", family, "d5a|d5b|ts33a|ts33b|star")->required();
    gen_cmd->add_option("--k", k, "star ring parameter");
    gen_cmd->add_option("--blob", blob, "blob completion size");
    gen_cmd->add_option("--out", out_path, "output path or -");

    auto* verify_cmd = app.add_subcommand("verify", "check an orientation file");
    verify_cmd->add_option("file", path)->required();
    verify_cmd->add_option("--orientation", orient_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed())
            return cmd_validate(path);
        if (solve_cmd->parsed())
            return cmd_solve(path, engine, trace);
        if (count_cmd->parsed())
            return cmd_count(path);
        if (class_cmd->parsed())
            return cmd_class(path, klass);
        if (cuts_cmd->parsed())
            return cmd_cuts(path, kmax, robust);
        if (gen_cmd->parsed())
            return cmd_gen(family, k, blob, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(path, orient_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BuildError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
