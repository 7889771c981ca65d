#pragma once
//
// Topology queries on toroidal maps: girth and essential girth, a homology
// basis with per-dart labels, enclosed regions of contractible walks,
// d-angles, and cutting along cycles.

#include <array>
#include <optional>
#include <set>

#include "tormaps/comb_map.hpp"

namespace tormaps {

using HomologyVector = std::array<int, 2>;

// girth of the underlying multigraph (1 for a loop, 2 for parallel edges)
int girth(const CombMap& m);

// Homology basis from a spanning tree / spanning cotree decomposition.
// b1 and b2 are vertex-simple cycles; label[d] is the per-dart contribution
// so that the class of any closed walk is the sum of its dart labels,
// with b1 mapping to {1,0} and b2 to {0,1}.  Requires genus 1.
struct HomologyBasis {
    ClosedWalk b1, b2;
    std::vector<HomologyVector> label;
};

HomologyBasis homology_basis(const CombMap& m);
HomologyVector homology_vector(const HomologyBasis& basis, const ClosedWalk& w);

// All directed vertex-simple cycles (each direction listed separately),
// deduplicated up to rotation; includes loops and 2-cycles through parallel
// edges, excludes immediate back-tracks over a single edge.
std::vector<ClosedWalk> simple_cycles(const CombMap& m);

// shortest cycle homologous to `target`; ties broken by the
// lexicographically smallest dart sequence (rotation-normalized).
// target must be nonzero.
ClosedWalk shortest_cycle_in_class(const CombMap& m, const HomologyBasis& basis,
                                   HomologyVector target);

// Essential girth: girth of the universal cover, computed by breadth-first
// search over (vertex, Z^2-offset) states with homology labels as offsets.
int essential_girth(const CombMap& m);
// independent oracle: smallest length admitting a d-angle (a contractible
// non-repetitive closed walk enclosing a disk)
int essential_girth_via_d_angles(const CombMap& m);

// Region enclosed on the RIGHT of a closed walk of homology class {0,0}:
// the faces on the right flood-filled across edges not on the walk, plus the
// edges and vertices strictly inside.  is_disk reports whether that region
// is an open disk (Euler characteristic 1, no pinched vertex).
struct EnclosedRegion {
    std::set<int> faces;
    std::set<int> inner_edges;
    std::set<int> inner_vertices;
    bool is_disk = false;
};

EnclosedRegion enclosed_region(const CombMap& m, const HomologyBasis& basis,
                               const ClosedWalk& w);

// A d-angle: closed non-repetitive walk of length d, homology class {0,0},
// whose enclosed region (on the right) is an open disk.
struct DAngle {
    ClosedWalk walk;
    std::set<int> interior_faces;
    bool maximal = false;  // no other d-angle's interior strictly contains it
};

// all d-angles of the map, deduplicated up to rotation
std::vector<DAngle> d_angles(const CombMap& m, int d);

// The maximal d-angle whose interior contains the root face; unique for
// toroidal maps of essential girth >= d with root face of degree d.
DAngle root_d_angle(const FaceRootedMap& frm, int d);

// Result of cutting the torus along a non-contractible vertex-simple cycle:
// a planar (annular) map in which the cycle is doubled.  The copy keeping
// the original darts bounds special_face (the face made of the cycle's own
// darts, lying on its left); the copy made of fresh twin darts bounds
// outer_face.  to_torus maps every annulus dart to the torus dart it copies.
struct Annulus {
    CombMap map;
    std::vector<Dart> to_torus;
    int special_face = -1;
    int outer_face = -1;
};

Annulus cut_along_cycle(const CombMap& m, const ClosedWalk& cycle);

// Cutting a face-rooted toroidal map at its root d-angle: L is the toroidal
// piece on the left (its root face is the new face of degree d, its root
// corner marks the copy of the canonical d-angle vertex), A is the planar
// interior piece rooted at the original root corner, with the new boundary
// face of degree d as marked outer face.
struct RootAngleCut {
    FaceRootedMap L;           // toroidal piece, marked face of degree d
    FaceRootedMap A;           // planar piece; root_face = original root face
    int A_outer_face = -1;     // boundary face of A created by the cut
    Dart A_outer_corner = -1;  // outer-contour dart at the canonical passage;
                               // its corner matches L's root corner across the seam
    std::vector<Dart> L_to_torus, A_to_torus;
};

RootAngleCut cut_at_root_d_angle(const FaceRootedMap& frm, int d);

// Inverse gluing: reconstructs the unique face-rooted toroidal map whose
// root-d-angle cut returns (an isomorphic copy of) the given pieces.  The
// seam alignment is part of the piece data: A_outer_corner is the marked
// dart on A's outer contour to be identified with L's root corner.  Without
// it the pieces would not determine the map (a piece with a rotational
// symmetry admits several non-isomorphic reassemblies).
FaceRootedMap glue_root_d_angle(const FaceRootedMap& L, const FaceRootedMap& A,
                                Dart A_outer_corner, int d);

// Rooted-isomorphism helpers.  The overload with extra_marked_dart also
// encodes a second marked face (the face containing that dart), used for
// pieces carrying both a root face and a cut boundary face.
std::vector<int> face_rooted_encoding(const FaceRootedMap& frm);
std::vector<int> face_rooted_encoding(const FaceRootedMap& frm, Dart extra_marked_dart);
bool face_rooted_isomorphic(const FaceRootedMap& a, const FaceRootedMap& b);

}  // namespace tormaps
