#pragma once
//
// Exhaustive canonical generation of small rooted/face-rooted maps and of
// decorated unicellular mobiles, plus the core/kernel decomposition of
// genus-1 unicellular mobiles.  This is the brute-force counting oracle the
// rest of the library is checked against, so it favours transparent
// backtracking over cleverness.

#include <functional>
#include <vector>

#include "tormaps/bijection.hpp"
#include "tormaps/comb_map.hpp"

namespace tormaps {

// face-degree constraint applied during generation (with pruning) and
// re-checked on every emitted map
enum class FaceRule {
    any,              // no constraint
    all_degree,       // every face has degree == param
    all_even_min,     // every face degree is even and >= param
    root_degree_min,  // the face of dart 0 has degree == param, all faces >= param
    root_degree,      // the face of dart 0 has degree == param, others free
};

// named map families layered on top of the raw generator
//   F    : toroidal d-angulations of essential girth d whose maximal root
//          d-angle is the root-face contour itself
//   L    : toroidal maps of essential girth d, root face of degree d whose
//          maximal root d-angle is the root-face contour itself
//   M    : toroidal maps of essential girth d with root face of degree d
//   hatF : bipartite F with d = param (even)
//   hatL : bipartite L with d = param (even)
enum class MapFamilyTag { none, F, L, M, hatF, hatL };

struct GenSpec {
    int genus = -1;        // required genus of emitted maps; -1 = any
    int max_vertices = -1; // -1 = unbounded (max_edges then bounds the search)
    int max_edges = 0;     // required; the dart cap is 2 * max_edges
    int min_edges = 1;

    FaceRule face_rule = FaceRule::any;
    int face_param = 0;

    int essential_girth = -1;  // -1 = off (needs genus == 1 maps to apply)
    bool bipartite = false;
    // minimum girth of the underlying multigraph; 2 forbids loops, 3 forbids
    // loops and parallel edges (pruned during the search), higher values are
    // additionally checked on the finished map
    int min_girth = 1;

    MapFamilyTag family = MapFamilyTag::none;
    int family_param = 0;

    // corner-rooted (default): every map is emitted once per rooting, with
    // the root dart relabeled to 0.  face-rooted: the marked face is the face
    // of dart 0 and each face-rooted isomorphism class is emitted exactly
    // once (for the canonical choice of root corner).
    bool face_rooted = false;
};

// Streams every map matching the spec exactly once, in a deterministic
// order.  Emitted maps carry root_face = face_of(0) and root_corner = 0.
// The callback returns false to stop the stream.  Throws
// std::invalid_argument on an unusable spec (max_edges < 1).
void generate_maps(const GenSpec& spec, const std::function<bool(const FaceRootedMap&)>& emit);

std::vector<FaceRootedMap> all_maps(const GenSpec& spec);

// membership predicate behind GenSpec::family, usable on its own
bool in_map_family(const FaceRootedMap& frm, MapFamilyTag tag, int param);

// Streams every mobile of the family with at most max_white_vertices white
// vertices and at most max_darts darts, each unrooted isomorphism class
// exactly once (deduplicated by canonical form), deterministically.  The
// caller is responsible for a max_darts large enough to exhaust the family
// at the requested white-vertex count.
void generate_mobiles(const MobileFamilyCheck& tag, int max_white_vertices, int max_darts,
                      const std::function<bool(const Mobile&)>& emit);

std::vector<Mobile> all_mobiles(const MobileFamilyCheck& tag, int max_white_vertices,
                                int max_darts);

// ---------------------------------------------------------------------------
// Core/kernel decomposition of a genus-1 unicellular mobile.
//
// The core is what survives iterated deletion of degree-1 vertices (buds
// ignored); for a genus-1 unicellular map it is non-empty and every core
// vertex has core-degree >= 2.  Kernel vertices are the core vertices of
// core-degree >= 3; contracting the maximal chains between them yields
// either one vertex with two loops (type II, "double loop") or two vertices
// joined by three edges (type I, "triple edge").
// ---------------------------------------------------------------------------
enum class KernelType { I, II };

struct KernelDecomposition {
    KernelType type = KernelType::I;
    std::vector<int> core_vertices;    // sorted
    std::vector<int> kernel_vertices;  // sorted; size 2 (type I) or 1 (type II)
    // Directed dart paths along the core from kernel vertex to kernel
    // vertex through core-degree-2 vertices; 3 chains for type I, 2 for
    // type II.  Each core edge appears in exactly one chain, in exactly one
    // direction (the direction whose first dart is smallest).
    std::vector<std::vector<Dart>> chains;
    // attachment[v] = the core vertex whose pruned branch contains mobile
    // vertex v (attachment[v] == v for core vertices)
    std::vector<int> attachment;
};

// throws std::invalid_argument unless the mobile is unicellular of genus 1
KernelDecomposition kernel_decompose(const Mobile& m);

}  // namespace tormaps
