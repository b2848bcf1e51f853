#pragma once

#include <iosfwd>
#include <string>

#include "z3o/graph.hpp"

namespace z3o {

// The z3g text format, one directive per line, '#' comments:
//
//   z3g 1
//   vertex <id> p=<-1|0|1> [mark=d|t|s|r]
//   edge <id> <u> <v>
//   rot <vertex> <edge>...        counterclockwise; a loop's id appears twice
//   orient <edge> <tail-vertex>
//   face FG <edge> <vertex>       the orbit of that dart under (rotation o twin)
//   face FGS <edge> <vertex>
//
// The canonical writer sorts directives by kind then id, so canonical files
// round-trip byte-identically.

BuildSpec parse_z3g(std::istream& in);
BuildSpec parse_z3g_string(const std::string& text);
Instance load_z3g(const std::string& path);

std::string write_z3g(const Instance& inst);

/// Orientation files are bare `orient <edge> <tail>` lines.
Orientation parse_orientation(std::istream& in);
std::string write_orientation(const Orientation& o);

} // namespace z3o
