#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tormaps/balanced.hpp"
#include "tormaps/bijection.hpp"
#include "tormaps/comb_map.hpp"
#include "tormaps/orientation.hpp"
#include "tormaps/topology.hpp"

using namespace tormaps;

namespace {

CombMap one_vertex_triangulation() {
    return CombMap::build(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 2, 4, 1, 3, 5}});
}

CombMap two_loop_torus() {
    return CombMap::build(4, {{0, 1}, {2, 3}}, {{0, 2, 1, 3}});
}

// bipartite toroidal quadrangulation: two vertices, four parallel edges,
// faces {0,3,4,7} and {1,2,5,6}
CombMap pillow_quadrangulation() {
    return CombMap::build(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}},
                          {{0, 2, 4, 6}, {1, 3, 5, 7}});
}

// total weight of the darts hanging on the left of a vertex-simple cycle
long long left_weight(const CombMap& m, const WeightedBiorientation& w,
                      const ClosedWalk& c) {
    long long sum = 0;
    const auto& W = c.darts;
    const int k = static_cast<int>(W.size());
    for (int i = 0; i < k; ++i) {
        Dart o = W[static_cast<size_t>(i)];
        Dart a = m.alpha(W[static_cast<size_t>((i + k - 1) % k)]);
        for (Dart y = m.sigma(a); y != o; y = m.sigma(y)) sum += w.w(y);
    }
    return sum;
}

// the unique minimal balanced d/(d-2)-orientation found by brute force
WeightedBiorientation brute_force_canonical(const FaceRootedMap& frm, int d) {
    std::vector<WeightedBiorientation> hits;
    enumerate_orientations(frm.map, alpha_beta_spec(frm.map, d, d - 2),
                           [&](const WeightedBiorientation& w) {
                               if (is_minimal(frm, w) &&
                                   is_balanced(frm.map, w, BalancedMode::exhaustive))
                                   hits.push_back(w);
                               return true;
                           });
    REQUIRE(hits.size() == 1);
    return hits[0];
}

}  // namespace

TEST_CASE("biased orientation: d/(d-2) weights, gamma 2k, empty left side") {
    struct Fixture {
        CombMap m;
        int d;
    };
    std::vector<Fixture> fixtures = {{one_vertex_triangulation(), 3},
                                     {two_loop_torus(), 4},
                                     {pillow_quadrangulation(), 4}};
    for (const auto& fx : fixtures) {
        HomologyBasis basis = homology_basis(fx.m);
        for (HomologyVector cls : {HomologyVector{1, 0}, HomologyVector{0, 1}}) {
            ClosedWalk c = shortest_cycle_in_class(fx.m, basis, cls);
            WeightedBiorientation w = biased_orientation(fx.m, c, fx.d);
            for (int v = 0; v < fx.m.vertex_count(); ++v)
                CHECK(vertex_weight(fx.m, w, v) == fx.d);
            for (int e = 0; e < fx.m.edge_count(); ++e)
                CHECK(edge_weight(fx.m, w, e) == fx.d - 2);
            CHECK(gamma_score(fx.m, w, c) == 2 * c.length());
            CHECK(left_weight(fx.m, w, c) == 0);
        }
    }
}

TEST_CASE("biased orientation: infeasible annulus spec is rejected") {
    CombMap m = one_vertex_triangulation();
    HomologyBasis basis = homology_basis(m);
    ClosedWalk c = shortest_cycle_in_class(m, basis, {1, 0});
    // d = 4 on a triangulation of essential girth 3: the annulus demand
    // cannot be met
    CHECK_THROWS(biased_orientation(m, c, 4));
}

TEST_CASE("biased quadruple scores match the table diagonal") {
    for (auto [m, d] : {std::pair<CombMap, int>{one_vertex_triangulation(), 3},
                        std::pair<CombMap, int>{pillow_quadrangulation(), 4}}) {
        HomologyBasis basis = homology_basis(m);
        ClosedWalk b1 = shortest_cycle_in_class(m, basis, {1, 0});
        ClosedWalk b2 = shortest_cycle_in_class(m, basis, {0, 1});
        BiasedQuadruple q = make_biased_quadruple(m, b1, b2, d);
        CHECK(gamma_score(m, q.d1, b1) == 2 * q.k1);
        CHECK(gamma_score(m, q.d2, b1) == -2 * q.k1);
        CHECK(gamma_score(m, q.d3, b2) == 2 * q.k2);
        CHECK(gamma_score(m, q.d4, b2) == -2 * q.k2);
        // off-diagonal scores stay within their admissible intervals
        CHECK(q.a >= -2 * q.k2);
        CHECK(q.a <= 2 * q.k2);
        CHECK(q.b >= -2 * q.k2);
        CHECK(q.b <= 2 * q.k2);
        CHECK(q.c >= -2 * q.k1);
        CHECK(q.c <= 2 * q.k1);
        CHECK(q.dd >= -2 * q.k1);
        CHECK(q.dd <= 2 * q.k1);
    }
}

TEST_CASE("combined orientation annihilates both basis scores") {
    for (auto [m, d] : {std::pair<CombMap, int>{one_vertex_triangulation(), 3},
                        std::pair<CombMap, int>{two_loop_torus(), 4},
                        std::pair<CombMap, int>{pillow_quadrangulation(), 4}}) {
        HomologyBasis basis = homology_basis(m);
        ClosedWalk b1 = shortest_cycle_in_class(m, basis, {1, 0});
        ClosedWalk b2 = shortest_cycle_in_class(m, basis, {0, 1});
        BiasedQuadruple q = make_biased_quadruple(m, b1, b2, d);
        CombinedOrientation comb = combine_biased(m, q, d);
        CHECK(comb.sigma >= 1);
        CHECK(gamma_score(m, comb.orientation, b1) == 0);
        CHECK(gamma_score(m, comb.orientation, b2) == 0);
        for (int v = 0; v < m.vertex_count(); ++v)
            CHECK(vertex_weight(m, comb.orientation, v) == comb.sigma * d);
        for (int e = 0; e < m.edge_count(); ++e)
            CHECK(edge_weight(m, comb.orientation, e) == comb.sigma * (d - 2));
        // balanced on every simple non-contractible cycle, not just the basis
        for (const ClosedWalk& c : simple_cycles(m))
            if (homology_vector(basis, c) != HomologyVector{0, 0})
                CHECK(gamma_score(m, comb.orientation, c) == 0);
    }
}

TEST_CASE("balanced_dd2 equals the brute-force canonical orientation") {
    for (auto [m, d] : {std::pair<CombMap, int>{one_vertex_triangulation(), 3},
                        std::pair<CombMap, int>{two_loop_torus(), 4},
                        std::pair<CombMap, int>{pillow_quadrangulation(), 4}}) {
        for (int f = 0; f < m.face_count(); ++f) {
            FaceRootedMap frm{m, f, -1};
            WeightedBiorientation got = balanced_dd2(frm, d);
            WeightedBiorientation want = brute_force_canonical(frm, d);
            CHECK(got.weight == want.weight);
        }
    }
}

TEST_CASE("balanced_dd2 is independent of the basis ordering") {
    for (auto [m, d] : {std::pair<CombMap, int>{one_vertex_triangulation(), 3},
                        std::pair<CombMap, int>{pillow_quadrangulation(), 4}}) {
        FaceRootedMap frm{m, 0, -1};
        WeightedBiorientation reference = balanced_dd2(frm, d);

        // rerun the pipeline with the two basis cycles swapped
        HomologyBasis basis = homology_basis(m);
        ClosedWalk b1 = shortest_cycle_in_class(m, basis, {1, 0});
        ClosedWalk b2 = shortest_cycle_in_class(m, basis, {0, 1});
        BiasedQuadruple q = make_biased_quadruple(m, b2, b1, d);
        CombinedOrientation comb = combine_biased(m, q, d);
        WeightedBiorientation mini = minimize(frm, comb.orientation);
        for (size_t h = 0; h < mini.weight.size(); ++h) {
            REQUIRE(mini.weight[h] % comb.sigma == 0);
            mini.weight[h] /= comb.sigma;
        }
        CHECK(mini.weight == reference.weight);
    }
}

TEST_CASE("balanced_dd2 rejects bad inputs") {
    CombMap m = one_vertex_triangulation();
    // wrong d for the face degrees
    CHECK_THROWS(balanced_dd2(FaceRootedMap{m, 0, -1}, 4));
    // planar map
    CombMap t = CombMap::build(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 5}, {1, 2}, {3, 4}});
    CHECK_THROWS(balanced_dd2(FaceRootedMap{t, 0, -1}, 3));
}

TEST_CASE("canonical orientation of a root-degree-d map is a right biorientation") {
    for (auto [m, d] : {std::pair<CombMap, int>{one_vertex_triangulation(), 3},
                        std::pair<CombMap, int>{two_loop_torus(), 4},
                        std::pair<CombMap, int>{pillow_quadrangulation(), 4}}) {
        for (int f = 0; f < m.face_count(); ++f) {
            FaceRootedMap frm{m, f, -1};
            CHECK(is_right_biorientation(frm, balanced_dd2(frm, d)));
        }
    }
}

TEST_CASE("halve_bipartite on the bipartite quadrangulation") {
    CombMap m = pillow_quadrangulation();
    FaceRootedMap frm{m, 0, -1};
    WeightedBiorientation w4 = balanced_dd2(frm, 4);
    WeightedBiorientation w2 = halve_bipartite(frm, 4, w4);
    // a 2/1-orientation: a plain orientation with outdegree 2 everywhere
    for (int v = 0; v < m.vertex_count(); ++v) CHECK(vertex_weight(m, w2, v) == 2);
    for (int e = 0; e < m.edge_count(); ++e) CHECK(edge_weight(m, w2, e) == 1);
    // halving preserves minimality and balancedness
    CHECK(is_minimal(frm, w2));
    CHECK(is_balanced(m, w2, BalancedMode::exhaustive));
}

TEST_CASE("halve_bipartite rejects the non-bipartite two-loop torus") {
    CombMap m = two_loop_torus();
    FaceRootedMap frm{m, 0, -1};
    WeightedBiorientation w4 = balanced_dd2(frm, 4);
    // loops force odd half-edge weights in the balanced 4/2-orientation
    CHECK_THROWS(halve_bipartite(frm, 4, w4));
}

TEST_CASE("canonical_Z_orientation recovers the balanced d/(d-2)-orientation on d-angulations") {
    struct Case {
        CombMap m;
        int d;
    };
    for (const Case& c : {Case{one_vertex_triangulation(), 3}, Case{two_loop_torus(), 4},
                          Case{pillow_quadrangulation(), 4}}) {
        for (int root = 0; root < c.m.face_count(); ++root) {
            FaceRootedMap frm{c.m, root, -1};
            auto z = canonical_Z_orientation(frm, c.d);
            REQUIRE(z.has_value());
            CHECK(z->weight == balanced_dd2(frm, c.d).weight);
        }
    }
}

TEST_CASE("canonical_Z_orientation reports maps without a valid orientation") {
    // quadrangulation with d = 3: vertex and edge targets are incompatible
    CombMap m = pillow_quadrangulation();
    FaceRootedMap frm{m, 0, -1};
    CHECK_FALSE(canonical_Z_orientation(frm, 3).has_value());
    // planar input is rejected outright
    CombMap tri = CombMap::build(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 5}, {1, 2}, {3, 4}});
    CHECK_THROWS_AS(canonical_Z_orientation({tri, 0, -1}, 3), std::invalid_argument);
}
