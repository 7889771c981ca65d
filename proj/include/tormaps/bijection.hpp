#pragma once
//
// The corner-rule bijection between weighted bioriented face-rooted maps
// whose rightmost walks loop on the root face (root degree d) and weighted
// bimobiles of excess d: forward construction, an independent route through
// the induced plain orientation, the inverse closure construction, mobile
// family membership, balancedness scores, and serialization.

#include "tormaps/comb_map.hpp"
#include "tormaps/orientation.hpp"

namespace tormaps {

enum class MColor { black, white };

// A bimobile: a unicellular map with black/white vertices whose black
// corners may carry dangling buds.  Darts 0..n-1; a bud is a dart with
// alpha = -1; buds carry weight 0 and sit only at black vertices.
struct Mobile {
    std::vector<Dart> alpha;        // -1 for buds
    std::vector<Dart> sigma;        // counterclockwise rotation over all darts
    std::vector<MColor> dart_color; // color of the incident vertex
    std::vector<long long> weight;  // per dart; 0 on buds

    // derived by make_mobile
    std::vector<int> vertex_of;
    int n_vertices = 0;

    int dart_count() const { return static_cast<int>(alpha.size()); }
    bool is_bud(Dart d) const { return alpha[static_cast<size_t>(d)] < 0; }
    MColor color_of_vertex(int v) const;
    int degree(int v) const;  // half-edges including buds
    std::vector<Dart> darts_of_vertex(int v) const;

    // face-walk successor keeping the face on the left (buds are swept past)
    Dart face_next(Dart d) const {
        Dart a = alpha[static_cast<size_t>(d)];
        return a < 0 ? sigma[static_cast<size_t>(d)] : sigma[static_cast<size_t>(a)];
    }
    int face_count() const;
    bool unicellular() const { return face_count() == 1; }
    int real_edge_count() const;  // buds excluded
    int bud_count() const;
    int genus() const;  // Euler relation with buds treated as pendant stubs

    long long vertex_weight(int v) const;   // sum of incident dart weights
    long long edge_weight(Dart d) const;    // weight(d) + weight(alpha(d))
};

// validates structure (sigma permutation, alpha partial involution,
// connectivity, buds only at black vertices, bud weights 0, per-vertex
// color consistency) and fills the derived fields
Mobile make_mobile(std::vector<Dart> alpha, std::vector<Dart> sigma,
                   std::vector<MColor> dart_color, std::vector<long long> weight);

// number of black-white edges plus twice the number of white-white edges,
// minus the number of buds
long long excess(const Mobile& m);

// true when white-incident weights are > 0 and black-incident non-bud
// weights are <= 0 (= 0 for the N restriction)
bool is_Z_bimobile(const Mobile& m);
bool is_N_bimobile(const Mobile& m);

// Forward bijection.  Requires a right biorientation (outgoing = weight > 0).
// Inserts a black vertex per face, applies the per-edge rules (1-way: mobile
// edge from the tail's white vertex to the black vertex of the face on the
// left of the edge direction plus a bud at the face on the right; 2-way:
// white-white edge plus a bud at each side face; 0-way: black-black edge
// between the side faces, weights crosswise), then deletes the root face's
// black vertex, which must carry d buds and no edge.
Mobile phi_plus(const FaceRootedMap& frm, const WeightedBiorientation& wbo);

// Oracle route: blow 2-way edges into counterclockwise double edges and
// 0-way edges into outdegree-2 midvertices, run the 1-way-only construction,
// then contract the marked square vertices back.  Agrees with phi_plus up to
// relabeling.
Mobile phi_plus_via_expansion(const FaceRootedMap& frm, const WeightedBiorientation& wbo);

struct OrientedMapResult {
    FaceRootedMap frm;
    WeightedBiorientation wbo;

    OrientedMapResult() : frm{CombMap({1, 0}, {0, 1}), 0, -1} {}
};

// Inverse closure construction: insert an ingoing bud before each edge-end at
// every black corner, match buds cyclically around the unique face, join the
// d exposed buds to a new vertex, erase white vertices and mobile edges,
// and dualize; the root face is the one dual to the new vertex.
OrientedMapResult psi_plus(const Mobile& m);

// gamma-score of a directed vertex-simple cycle of real mobile edges:
// (weights of side half-edges) + (count of side half-edges at black
// vertices, buds included), right side minus left side
long long mobile_gamma_score(const Mobile& m, const std::vector<Dart>& cycle);

// all directed vertex-simple cycles through real edges, deduplicated up to
// rotation (each direction listed)
std::vector<std::vector<Dart>> mobile_simple_cycles(const Mobile& m);

// genus-1 mobiles: gamma = 0 on every simple cycle (all are non-contractible
// in a unicellular genus-1 map)
bool is_balanced_mobile(const Mobile& m);

Mobile scale_mobile_weights(const Mobile& m, long long factor);

enum class MobileFamily { U, UBal, hatU, hatUBal, V, VBal, hatV, hatVBal };

struct MobileFamilyCheck {
    MobileFamily family;
    int param;  // d for U/V, b for the hat families
};

bool check_family(const Mobile& m, const MobileFamilyCheck& tag);

// canonical form for isomorphism tests of unrooted mobiles (colors, buds and
// weights included)
std::vector<long long> mobile_canonical_form(const Mobile& m);
bool mobiles_isomorphic(const Mobile& a, const Mobile& b);

std::string mobile_to_json(const Mobile& m);
Mobile mobile_from_json(const std::string& text);

// canonical encoding of a face-rooted map together with dart weights,
// minimized over the root face's darts; equal encodings = weighted rooted
// isomorphism
std::vector<long long> weighted_map_encoding(const FaceRootedMap& frm,
                                             const WeightedBiorientation& wbo);

}  // namespace tormaps
