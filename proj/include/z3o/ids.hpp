#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace z3o {

using VertexId = int;
using EdgeId = int;

/// Z3 values are stored canonically as 0, 1, 2; files and reports use -1/0/+1.
inline int mod3(long long x) {
    int r = static_cast<int>(x % 3);
    return r < 0 ? r + 3 : r;
}

inline int z3_of_signed(int s) { return mod3(s); }

inline int z3_to_signed(int v) { return v == 2 ? -1 : v; }

/// Sentinel for "no bound": single-vertex connectivity, boundary vertices, ...
constexpr int kUnbounded = std::numeric_limits<int>::max();

struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MutationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace z3o
