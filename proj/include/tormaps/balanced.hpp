#pragma once
//
// Construction of the canonical balanced d/(d-2)-orientation of a toroidal
// d-angulation of essential girth d: biased orientations w.r.t. a shortest
// cycle, their linear combination annihilating both basis scores, and the
// minimization/division pipeline.  Also the brute-force canonical
// Z-orientation search for maps with root-face degree d.

#include "tormaps/orientation.hpp"
#include "tormaps/topology.hpp"

namespace tormaps {

// A d/(d-2)-orientation with gamma(C) = 2*len(C), i.e. all half-edges
// hanging on the left side of C carry weight 0.  C must be a directed
// non-contractible vertex-simple cycle, shortest in its homotopy class.
WeightedBiorientation biased_orientation(const CombMap& m, const ClosedWalk& cycle, int d);

// The four biased orientations w.r.t. B1, -B1, B2, -B2 and their scores:
// a = gamma(B2) in D1, b = gamma(B2) in D2, c = gamma(B1) in D3,
// dd = gamma(B1) in D4.
struct BiasedQuadruple {
    WeightedBiorientation d1, d2, d3, d4;
    ClosedWalk b1, b2;
    long long k1 = 0, k2 = 0;          // lengths of B1, B2
    long long a = 0, b = 0, c = 0, dd = 0;
};

BiasedQuadruple make_biased_quadruple(const CombMap& m, const ClosedWalk& b1,
                                      const ClosedWalk& b2, int d);

// The non-negative integer combination of the quadruple with
// gamma(B1) = gamma(B2) = 0: a sigma*d / sigma*(d-2)-orientation, with sigma
// the sum of the combination coefficients.
struct CombinedOrientation {
    WeightedBiorientation orientation;
    long long sigma = 1;
};

CombinedOrientation combine_biased(const CombMap& m, const BiasedQuadruple& quad, int d);

// The unique minimal balanced d/(d-2)-orientation of a face-rooted toroidal
// d-angulation of essential girth d.
WeightedBiorientation balanced_dd2(const FaceRootedMap& frm, int d);

// For bipartite 2b-angulations: all weights of the minimal balanced
// 2b/(2b-2)-orientation are even; halving yields the b/(b-1)-orientation.
// Throws if an odd weight is found (certifying non-bipartiteness).
WeightedBiorientation halve_bipartite(const FaceRootedMap& frm, int two_b,
                                      const WeightedBiorientation& wbo);

// Brute-force canonical Z-orientation search for a face-rooted toroidal map
// with root-face degree d and all face degrees >= d: dart weights in
// {-2..d}, vertex weight d, edge weight d-2, face weight -deg(f)+d,
// membership in O_d^1 and balancedness of the mobile image.  Returns the
// unique hit, or nothing when the map admits none; throws if two hits are
// found (theorem violation sentinel).
std::optional<WeightedBiorientation> canonical_Z_orientation(const FaceRootedMap& frm, int d);

}  // namespace tormaps
