#pragma once
//
// Weighted biorientations on combinatorial maps: weight queries, feasibility
// via max-flow, beta-expansion, minimality and the minimization flip loop,
// gamma/delta scores, rightmost walks, right-biorientation membership, and a
// brute-force enumeration oracle.

#include <functional>
#include <optional>

#include "tormaps/comb_map.hpp"

namespace tormaps {

// N-regime: ingoing darts carry weight exactly 0, outgoing weight > 0 (all
// weights >= 0).  Z-regime: a dart is outgoing iff its weight is > 0 and
// ingoing iff <= 0.  A plain orientation is the N-regime with edge weight 1.
enum class Regime { N, Z };

struct WeightedBiorientation {
    Regime regime = Regime::N;
    std::vector<long long> weight;  // per dart

    bool outgoing(Dart h) const { return weight[static_cast<size_t>(h)] > 0; }
    long long w(Dart h) const { return weight[static_cast<size_t>(h)]; }
};

// throws std::invalid_argument if the weights violate the regime invariants
void validate_biorientation(const CombMap& m, const WeightedBiorientation& wbo);

// vertex weight: sum of incident dart weights (N) / sum of outgoing dart
// weights (Z); edge weight: sum over the edge's two darts; face weight
// (Z-regime): sum of ingoing dart weights having f on the left when the
// half-edge is traversed toward its vertex (= left face of the opposite dart)
long long vertex_weight(const CombMap& m, const WeightedBiorientation& wbo, int v);
long long edge_weight(const CombMap& m, const WeightedBiorientation& wbo, int e);
long long face_weight(const CombMap& m, const WeightedBiorientation& wbo, int f);

struct OrientationSpec {
    Regime regime = Regime::N;
    std::vector<long long> alpha_v;  // target weight per vertex
    std::vector<long long> beta_e;   // target weight per edge
    std::optional<std::vector<long long>> face_target;  // per face, Z-regime only
    long long min_dart_weight = 0;
    long long max_dart_weight = 1'000'000;
};

// uniform alpha/beta spec in the N-regime
OrientationSpec alpha_beta_spec(const CombMap& m, long long alpha, long long beta);

// Feasibility of an alpha/beta-orientation by integral max-flow on
// source -> edge (cap beta) -> dart -> vertex -> sink (cap alpha).
// On success `orientation` holds the dart weights (the dart flows).  On
// failure, `violating_vertices` is a vertex set S with
// sum_{edges inside S} beta > sum_S alpha when such a certificate exists
// (it always does when sum beta >= sum alpha); it is empty otherwise.
struct AlphaBetaResult {
    std::optional<WeightedBiorientation> orientation;
    std::vector<int> violating_vertices;
};

AlphaBetaResult find_alpha_beta(const CombMap& m, const OrientationSpec& spec);

// Beta-expansion: every edge of weight beta(e) is replaced by beta(e)
// parallel strands carrying a plain orientation; within each group, the
// ingoing strands come first in counterclockwise order at each endpoint
// (the unique arrangement with no clockwise cycle inside the group).
struct BetaExpansion {
    CombMap map;                         // the expanded map H
    WeightedBiorientation orientation;   // plain orientation of H
    std::vector<Dart> to_orig;           // H dart -> the original dart it refines
};

BetaExpansion beta_expansion(const CombMap& m, const WeightedBiorientation& wbo);

// inverse of beta_expansion: recover the dart weights on the original map
// (weight of dart h = number of outgoing strands refining h)
WeightedBiorientation contract_expansion(const CombMap& m, const BetaExpansion& bx);

// Minimality w.r.t. the root face: no non-empty face set S avoiding the root
// face has every boundary edge either 1-way with an S-face on its right or
// 2-way.  Tested through the closure relation f => g (shared edge 1-way with
// f on its left and g on its right, or 0-way): minimal iff every face's
// closure reaches the root face.  N-regime only.
bool is_minimal(const FaceRootedMap& frm, const WeightedBiorientation& wbo);

// the unique minimal orientation gamma-equivalent to wbo, by repeated
// counterclockwise flips of closed face sets missing the root face
WeightedBiorientation minimize(const FaceRootedMap& frm, const WeightedBiorientation& wbo);

// delta-score of a plain orientation along a directed cycle of the dual map
// (dual darts are the primal darts; a dual dart runs from the primal left
// face to the primal right face): crossings of directed primal edges
// left-to-right minus right-to-left
long long delta_score(const CombMap& m, const WeightedBiorientation& wbo,
                      const ClosedWalk& dual_cycle);

// gamma-score along a directed vertex-simple cycle: total weight of darts
// hanging off cycle vertices on the right minus on the left (cycle darts
// themselves excluded)
long long gamma_score(const CombMap& m, const WeightedBiorientation& wbo,
                      const ClosedWalk& cycle);

// Balancedness of an orientation on a genus-1 map: gamma = 0 on
// non-contractible cycles.  Basis mode checks the two homology basis cycles
// (valid for d/(d-2)-orientations of toroidal d-angulations); exhaustive
// mode checks every simple non-contractible cycle.
enum class BalancedMode { basis, exhaustive };

bool is_balanced(const CombMap& m, const WeightedBiorientation& wbo, BalancedMode mode);

// Rightmost walk from an outgoing dart: repeatedly take the opposite dart,
// then the first outgoing dart clockwise from it.  Returns the pre-loop tail
// and the eventually repeating loop.
struct RightmostWalk {
    std::vector<Dart> tail;
    ClosedWalk loop;
};

RightmostWalk rightmost_walk(const CombMap& m, const WeightedBiorientation& wbo, Dart start);

// true iff every vertex has an outgoing dart and every rightmost walk loops
// on the root-face contour traversed with the root face on its right
bool is_right_biorientation(const FaceRootedMap& frm, const WeightedBiorientation& wbo);

// Brute-force enumeration of all weight assignments satisfying the spec
// (regime, per-dart bounds, vertex/edge/face targets), in a deterministic
// order; the callback returns false to stop early.
void enumerate_orientations(const CombMap& m, const OrientationSpec& spec,
                            const std::function<bool(const WeightedBiorientation&)>& emit);

std::vector<WeightedBiorientation> all_orientations(const CombMap& m,
                                                    const OrientationSpec& spec);

}  // namespace tormaps
