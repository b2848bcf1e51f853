#pragma once

#include <string>

#include "z3o/cuts.hpp"
#include "z3o/graph.hpp"

namespace z3o {

enum class GraphClass { DTS, DTS3, RST, RST3, FT };

const char* class_name(GraphClass k);
std::optional<GraphClass> class_from_name(const std::string& name);

struct Violation {
    std::string clause; // e.g. "dts-6"
    std::string note;
    std::optional<Cut> cut;        // witness cut, when applicable
    std::optional<VertexId> vertex; // witness vertex, when applicable
};

struct ClassReport {
    GraphClass klass;
    bool pass = false;
    std::vector<Violation> violations;
};

ClassReport check_dts(const Instance& inst);
ClassReport check_3dts(const Instance& inst);
ClassReport check_rst(const Instance& inst);
ClassReport check_3rst(const Instance& inst);
ClassReport check_ft(const Instance& inst);
ClassReport check_class(const Instance& inst, GraphClass k);

/// First class the instance passes, in the order DTS, 3DTS, RST, 3RST, FT.
std::optional<GraphClass> any_class(const Instance& inst);

} // namespace z3o
