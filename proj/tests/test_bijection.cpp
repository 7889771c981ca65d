#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "tormaps/balanced.hpp"
#include "tormaps/bijection.hpp"
#include "tormaps/comb_map.hpp"
#include "tormaps/enumerate.hpp"
#include "tormaps/orientation.hpp"

using namespace tormaps;

namespace {

CombMap planar_triangle() {
    return CombMap::build(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 5}, {1, 2}, {3, 4}});
}

CombMap two_loop_torus() {
    return CombMap::build(4, {{0, 1}, {2, 3}}, {{0, 2, 1, 3}});
}

CombMap one_vertex_triangulation() {
    return CombMap::build(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 2, 4, 1, 3, 5}});
}

CombMap pillow_quadrangulation() {
    return CombMap::build(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}},
                          {{0, 2, 4, 6}, {1, 3, 5, 7}});
}

// all weightings with vertex weight d and edge weight d-2 in the given regime
// whose rightmost walks loop on the root face, i.e. the domain of phi_plus
std::vector<WeightedBiorientation> right_orientations(const FaceRootedMap& frm, int d,
                                                      Regime reg) {
    const CombMap& m = frm.map;
    OrientationSpec spec;
    spec.regime = reg;
    spec.alpha_v.assign(m.vertex_count(), d);
    spec.beta_e.assign(m.edge_count(), d - 2);
    spec.min_dart_weight = reg == Regime::Z ? -2 : 0;
    spec.max_dart_weight = d;
    std::vector<WeightedBiorientation> out;
    enumerate_orientations(m, spec, [&](const WeightedBiorientation& w) {
        if (is_right_biorientation(frm, w)) out.push_back(w);
        return true;
    });
    return out;
}

void check_roundtrips(const FaceRootedMap& frm,
                      const std::vector<WeightedBiorientation>& oris) {
    REQUIRE(!oris.empty());
    const int d = frm.map.face_degree(frm.root_face);
    std::set<std::vector<long long>> mobile_forms, map_encodings;
    for (const auto& w : oris) {
        Mobile t = phi_plus(frm, w);
        Mobile t2 = phi_plus_via_expansion(frm, w);
        CHECK(mobiles_isomorphic(t, t2));
        CHECK(excess(t) == d);
        CHECK(is_Z_bimobile(t));
        CHECK(t.unicellular());
        CHECK(t.genus() == frm.map.genus());

        OrientedMapResult back = psi_plus(t);
        CHECK(weighted_map_encoding(back.frm, back.wbo) == weighted_map_encoding(frm, w));
        Mobile t3 = phi_plus(back.frm, back.wbo);
        CHECK(mobiles_isomorphic(t, t3));

        mobile_forms.insert(mobile_canonical_form(t));
        map_encodings.insert(weighted_map_encoding(frm, w));
    }
    // distinct rooted weighted maps stay distinct as mobiles
    CHECK(mobile_forms.size() == map_encodings.size());
}

}  // namespace

TEST_CASE("make_mobile validates structure") {
    // single black vertex carrying one bud
    Mobile b = make_mobile({-1}, {0}, {MColor::black}, {0});
    CHECK(b.n_vertices == 1);
    CHECK(excess(b) == -1);

    // bud at a white vertex is rejected
    CHECK_THROWS_AS(make_mobile({-1}, {0}, {MColor::white}, {0}), std::invalid_argument);
    // bud weights must vanish
    CHECK_THROWS_AS(make_mobile({-1}, {0}, {MColor::black}, {2}), std::invalid_argument);
    // disconnected dart sets are rejected
    CHECK_THROWS_AS(make_mobile({-1, -1}, {0, 1}, {MColor::black, MColor::black}, {0, 0}),
                    std::invalid_argument);
    // mixed colors within one rotation are rejected
    CHECK_THROWS_AS(make_mobile({1, 0}, {1, 0}, {MColor::black, MColor::white}, {0, 1}),
                    std::invalid_argument);
}

TEST_CASE("excess counts edges by color and subtracts buds") {
    // one white-black edge: excess 1
    Mobile e = make_mobile({1, 0}, {0, 1}, {MColor::white, MColor::black}, {1, 0});
    CHECK(excess(e) == 1);
    // adding a bud at the black vertex decreases the excess by 1
    Mobile eb = make_mobile({1, 0, -1}, {0, 2, 1},
                            {MColor::white, MColor::black, MColor::black}, {1, 0, 0});
    CHECK(excess(eb) == 0);
    // a white-white edge counts twice
    Mobile ww = make_mobile({1, 0}, {0, 1}, {MColor::white, MColor::white}, {1, 1});
    CHECK(excess(ww) == 2);
}

TEST_CASE("canonical 3-orientation of the one-vertex triangulation maps to the expected mobile") {
    CombMap m = one_vertex_triangulation();
    FaceRootedMap frm{m, 0, -1};
    WeightedBiorientation w = balanced_dd2(frm, 3);
    Mobile t = phi_plus(frm, w);

    CHECK(excess(t) == 3);
    CHECK(t.n_vertices == 2);
    int whites = 0, blacks = 0;
    for (int v = 0; v < t.n_vertices; ++v) {
        if (t.color_of_vertex(v) == MColor::white) {
            ++whites;
            CHECK(t.degree(v) == 3);
            CHECK(t.vertex_weight(v) == 3);
        } else {
            ++blacks;
            CHECK(t.degree(v) == 3);
            CHECK(t.vertex_weight(v) == 0);
        }
    }
    CHECK(whites == 1);
    CHECK(blacks == 1);
    CHECK(is_N_bimobile(t));
    CHECK(t.unicellular());
    CHECK(t.genus() == 1);
    CHECK(check_family(t, {MobileFamily::U, 3}));
    CHECK(check_family(t, {MobileFamily::V, 3}));  // the N family embeds in the Z family
    CHECK(check_family(t, {MobileFamily::UBal, 3}));
    CHECK_FALSE(check_family(t, {MobileFamily::U, 4}));
}

TEST_CASE("exhaustive roundtrips on the one-vertex triangulation, d=3") {
    CombMap m = one_vertex_triangulation();
    for (int root = 0; root < m.face_count(); ++root) {
        FaceRootedMap frm{m, root, -1};
        check_roundtrips(frm, right_orientations(frm, 3, Regime::Z));
    }
}

TEST_CASE("exhaustive roundtrips on the two-loop torus, d=4") {
    CombMap m = two_loop_torus();
    FaceRootedMap frm{m, 0, -1};
    check_roundtrips(frm, right_orientations(frm, 4, Regime::Z));
}

TEST_CASE("exhaustive roundtrips on the pillow quadrangulation, d=4") {
    CombMap m = pillow_quadrangulation();
    for (int root = 0; root < m.face_count(); ++root) {
        FaceRootedMap frm{m, root, -1};
        check_roundtrips(frm, right_orientations(frm, 4, Regime::Z));
    }
}

TEST_CASE("planar regression: plain orientations of the triangle") {
    CombMap m = planar_triangle();
    for (int root = 0; root < m.face_count(); ++root) {
        FaceRootedMap frm{m, root, -1};
        std::vector<WeightedBiorientation> oris;
        for (int mask = 0; mask < 8; ++mask) {
            WeightedBiorientation w{Regime::N, std::vector<long long>(6, 0)};
            for (int e = 0; e < 3; ++e) {
                auto [x, y] = m.darts_of_edge(e);
                w.weight[(mask >> e) & 1 ? x : y] = 1;
            }
            if (is_right_biorientation(frm, w)) oris.push_back(w);
        }
        check_roundtrips(frm, oris);
        for (const auto& w : oris) CHECK(phi_plus(frm, w).genus() == 0);
    }
}

TEST_CASE("balancedness transports through the bijection for d/(d-2)-orientations") {
    struct Case {
        CombMap m;
        int d;
    };
    for (const Case& c : {Case{one_vertex_triangulation(), 3}, Case{two_loop_torus(), 4},
                          Case{pillow_quadrangulation(), 4}}) {
        for (int root = 0; root < c.m.face_count(); ++root) {
            FaceRootedMap frm{c.m, root, -1};
            for (const auto& w : right_orientations(frm, c.d, Regime::N)) {
                CHECK(is_balanced(c.m, w, BalancedMode::exhaustive) ==
                      is_balanced_mobile(phi_plus(frm, w)));
            }
            // the canonical orientation in particular lands on a balanced mobile
            Mobile t = phi_plus(frm, balanced_dd2(frm, c.d));
            CHECK(is_balanced_mobile(t));
        }
    }
}

TEST_CASE("halved bipartite orientation lands in the hat families") {
    CombMap m = pillow_quadrangulation();
    FaceRootedMap frm{m, 0, -1};
    WeightedBiorientation half = halve_bipartite(frm, 4, balanced_dd2(frm, 4));
    Mobile t = phi_plus(frm, half);
    CHECK(excess(t) == 4);
    CHECK(check_family(t, {MobileFamily::hatU, 2}));
    CHECK(check_family(t, {MobileFamily::hatUBal, 2}));
    CHECK_FALSE(check_family(t, {MobileFamily::U, 2}));
}

TEST_CASE("gamma score negates under cycle reversal") {
    CombMap m = one_vertex_triangulation();
    FaceRootedMap frm{m, 0, -1};
    for (const auto& w : right_orientations(frm, 3, Regime::Z)) {
        Mobile t = phi_plus(frm, w);
        auto cycles = mobile_simple_cycles(t);
        CHECK(!cycles.empty());
        for (const auto& c : cycles) {
            std::vector<Dart> rev;
            for (auto it = c.rbegin(); it != c.rend(); ++it) rev.push_back(t.alpha[*it]);
            CHECK(mobile_gamma_score(t, rev) == -mobile_gamma_score(t, c));
        }
    }
}

TEST_CASE("psi_plus rejects invalid inputs") {
    // excess -1: a single black vertex with one bud
    Mobile b = make_mobile({-1}, {0}, {MColor::black}, {0});
    CHECK_THROWS_AS(psi_plus(b), std::invalid_argument);
    // white weight 0 violates the Z-bimobile regime
    Mobile z = make_mobile({1, 0}, {0, 1}, {MColor::white, MColor::black}, {0, 0});
    CHECK_THROWS_AS(psi_plus(z), std::invalid_argument);
}

TEST_CASE("JSON serialization roundtrips exactly") {
    CombMap m = pillow_quadrangulation();
    FaceRootedMap frm{m, 0, -1};
    Mobile t = phi_plus(frm, balanced_dd2(frm, 4));
    Mobile u = mobile_from_json(mobile_to_json(t));
    CHECK(u.alpha == t.alpha);
    CHECK(u.sigma == t.sigma);
    CHECK(u.weight == t.weight);
    CHECK(u.dart_color == t.dart_color);
    CHECK(mobiles_isomorphic(u, t));
    CHECK_THROWS_AS(mobile_from_json("{\"darts\": 1, \"vertices\": []}"),
                    std::invalid_argument);
}

TEST_CASE("weighted map encoding is invariant under relabeling and sees weights") {
    CombMap m = one_vertex_triangulation();
    FaceRootedMap frm{m, 0, -1};
    WeightedBiorientation w = balanced_dd2(frm, 3);
    auto enc = weighted_map_encoding(frm, w);

    for (Dart r : m.darts_of_face(0)) {
        auto [rm, perm] = m.relabeled(r);
        WeightedBiorientation rw{w.regime, std::vector<long long>(6, 0)};
        for (Dart h = 0; h < 6; ++h) rw.weight[perm[h]] = w.w(h);
        FaceRootedMap rfrm{rm, rm.face_of(perm[m.darts_of_face(0)[0]]), -1};
        CHECK(weighted_map_encoding(rfrm, rw) == enc);
    }

    // a weight change that is not a symmetry of the map changes the encoding
    CombMap p = pillow_quadrangulation();
    FaceRootedMap pfrm{p, 0, -1};
    WeightedBiorientation pw = balanced_dd2(pfrm, 4);
    auto penc = weighted_map_encoding(pfrm, pw);
    auto pform = mobile_canonical_form(phi_plus(pfrm, pw));
    bool found = false;
    for (const auto& o : right_orientations(pfrm, 4, Regime::Z)) {
        if (mobile_canonical_form(phi_plus(pfrm, o)) != pform) {
            CHECK(weighted_map_encoding(pfrm, o) != penc);
            found = true;
        }
    }
    REQUIRE(found);
}

TEST_CASE("roundtrips are exact identities on chiral maps, not mirrors") {
    // All face-rooted members of the d=3 family with at most two vertices.
    // Two of them form a chiral pair (non-isomorphic, mirror images of each
    // other), so an inverse that silently returned the mirror map would pass
    // every symmetric fixture above yet fail exactly here.
    GenSpec s;
    s.genus = 1;
    s.max_vertices = 2;
    s.max_edges = 6;
    s.face_rule = FaceRule::all_degree;
    s.face_param = 3;
    s.essential_girth = 3;
    s.face_rooted = true;
    s.family = MapFamilyTag::F;
    s.family_param = 3;
    std::vector<FaceRootedMap> maps = all_maps(s);
    REQUIRE(maps.size() == 4);
    for (const FaceRootedMap& frm : maps) {
        WeightedBiorientation w = balanced_dd2(frm, 3);
        auto enc = weighted_map_encoding(frm, w);
        OrientedMapResult back = psi_plus(phi_plus(frm, w));
        CHECK(weighted_map_encoding(back.frm, back.wbo) == enc);
    }
}
