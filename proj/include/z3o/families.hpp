#pragma once

#include <cstdint>

#include "z3o/classes.hpp"
#include "z3o/graph.hpp"

namespace z3o {

enum class Family { D5a, D5b, TS33a, TS33b, Star };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct FamilySpec {
    Family family = Family::D5b;
    int k = 1;    // Star only: ring parameter, n = 6k
    int blob = 1; // D5a / TS33a only: blob completion size (1 = single vertex)
};

struct FamilyInstance {
    Instance instance;
    bool expect_unsat = true;
};

/// The no-valid-orientation families.
///
/// D5a: directed degree-5 vertex d, both parallel edges into the degree-3
///      vertex t; UNSAT locally at t whatever the blob does.
/// D5b: closed 3-vertex form, d of degree 4 (d->t x2 fixed, s->d x2 fixed,
///      s-t free), p = (0, -1, +1).
/// TS33a: square d,r,s,t around a blob, directed degree-4 d, p(d)=p(t)=-1,
///      blob total -1.
/// TS33b: pentagon d,r,u,s,t plus a hub, all p = 0, nothing fixed; no
///      total orientation works (odd boundary).
/// Star: the two-face ring family. Vertex ids: t = 0, w = 1, v_j = 2 + j
///      for 0 <= j <= n with n = 6k; d = v_{3k}. Edges join v_i to v_{i+1}
///      and v_{i+2} over the extended ring (w = v_{-1} = v_{n+1},
///      t = v_{-2} = v_{n+2}).
///
/// Blob completions collapse the dashed region to `blob` vertices in a row
/// joined by doubled edges, attachments distributed around it; the result
/// must stay 3-edge-connected or gen throws BuildError.
FamilyInstance gen(const FamilySpec& spec);

/// Deterministic pseudo-random class-passing corpus: random doubled polygons
/// with chords and interior hubs, marks/prescriptions sampled then repaired,
/// rejection via the class checks. Every returned instance passes
/// check_class(inst, klass).
std::vector<Instance> gen_corpus(std::uint64_t seed, int n_max, GraphClass klass, int count);

/// Random planar 3-edge-connected instances (no marks, zero prescriptions).
std::vector<Instance> gen_random_3ec(std::uint64_t seed, int n_max, int count);

/// Small random planar instances with random valid prescriptions and a
/// random partially fixed orientation; at most `max_edges` edges.
std::vector<Instance> gen_random_small(std::uint64_t seed, int max_edges, int count);

} // namespace z3o
