// Acceptance checks for the toolkit: one line of output per criterion,
// "criterion N (label): pass" or "... FAIL", with failure details above the
// line.  Exit code is the number of failing criteria.
//
// Every expected constant below was produced by an independent oracle (the
// closed-form series, a hand count, or a second enumeration route) before
// being frozen here; the checks recompute both sides and compare exactly.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tormaps/balanced.hpp"
#include "tormaps/bijection.hpp"
#include "tormaps/comb_map.hpp"
#include "tormaps/enumerate.hpp"
#include "tormaps/orientation.hpp"
#include "tormaps/series.hpp"
#include "tormaps/topology.hpp"

using namespace tormaps;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    std::string label;
    int bad = 0;
    clk::time_point t0 = clk::now();

    Criterion(int id_, std::string label_) : id(id_), label(std::move(label_)) {}

    void req(bool ok, const std::string& what) {
        if (!ok) {
            ++bad;
            std::cout << "  FAIL: " << what << "\n";
        }
    }
    template <class A, class B>
    void eq(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            ++bad;
            std::cout << "  FAIL: " << what << " (got " << got << ", want " << want << ")\n";
        }
    }
    ~Criterion() {
        double dt = std::chrono::duration<double>(clk::now() - t0).count();
        std::printf("criterion %2d (%s): %s (%.1fs)\n", id, label.c_str(),
                    bad ? "FAIL" : "pass", dt);
        if (bad) ++g_failures;
        std::fflush(stdout);
    }
};

GenSpec dang_spec(int d, int max_n, bool face_rooted) {
    GenSpec s;
    s.genus = 1;
    s.max_vertices = max_n;
    // d-angulation on the torus: E = dV/(d-2)
    s.max_edges = d * max_n / (d - 2);
    s.face_rule = FaceRule::all_degree;
    s.face_param = d;
    s.essential_girth = d;
    s.face_rooted = face_rooted;
    return s;
}

std::vector<long long> count_by_vertices(const GenSpec& s, int max_n) {
    std::vector<long long> by_n(static_cast<size_t>(max_n) + 1, 0);
    generate_maps(s, [&](const FaceRootedMap& f) {
        ++by_n[static_cast<size_t>(f.map.vertex_count())];
        return true;
    });
    return by_n;
}

std::vector<long long> mobile_counts_by_whites(MobileFamily fam, int d, int max_w, int dart_cap) {
    std::vector<long long> by_w(static_cast<size_t>(max_w) + 1, 0);
    generate_mobiles({fam, d}, max_w, dart_cap, [&](const Mobile& m) {
        int w = 0;
        for (int v = 0; v < m.n_vertices; ++v)
            if (m.color_of_vertex(v) == MColor::white) ++w;
        ++by_w[static_cast<size_t>(w)];
        return true;
    });
    return by_w;
}

// the orientation domain of the canonical search: Z-regime d/(d-2) weights
// with the per-face targets of a d-angle-compatible orientation
OrientationSpec z_spec(const CombMap& m, int d) {
    OrientationSpec spec;
    spec.regime = Regime::Z;
    spec.alpha_v.assign(m.vertex_count(), d);
    spec.beta_e.assign(m.edge_count(), d - 2);
    spec.min_dart_weight = -2;
    spec.max_dart_weight = d;
    std::vector<long long> ft(static_cast<size_t>(m.face_count()));
    for (int f = 0; f < m.face_count(); ++f)
        ft[static_cast<size_t>(f)] = d - m.face_degree(f);
    spec.face_target = std::move(ft);
    return spec;
}

// A_3' pieces: planar girth-3 maps with a marked corner in a degree-3 root
// face and a second marked degree-3 face f1, counted by vertices not
// incident to f1.  all_faces_3 restricts to the all-triangular subfamily.
std::vector<long long> a3_counts(int max_inner, bool all_faces_3) {
    GenSpec s;
    s.genus = 0;
    s.max_vertices = max_inner + 3;  // at most 3 vertices lie on f1
    s.max_edges = 3 * (max_inner + 3) - 6;  // planar girth 3 is simple
    s.face_rule = all_faces_3 ? FaceRule::all_degree : FaceRule::root_degree;
    s.face_param = 3;
    s.min_girth = 3;
    std::vector<long long> cnt(static_cast<size_t>(max_inner) + 1, 0);
    generate_maps(s, [&](const FaceRootedMap& f) {
        const CombMap& m = f.map;
        for (int f1 = 0; f1 < m.face_count(); ++f1) {
            if (f1 == f.root_face || m.face_degree(f1) != 3) continue;
            std::vector<char> on_f1(static_cast<size_t>(m.vertex_count()), 0);
            for (Dart h : m.darts_of_face(f1)) on_f1[static_cast<size_t>(m.vertex_of(h))] = 1;
            int inner = 0;
            for (int v = 0; v < m.vertex_count(); ++v)
                if (!on_f1[static_cast<size_t>(v)]) ++inner;
            if (inner <= max_inner) ++cnt[static_cast<size_t>(inner)];
        }
        return true;
    });
    return cnt;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    Criterion c(1, "rooted essentially simple triangulation counts");
    series::ZSeries ref = series::closed_form_series(series::ClosedForm::Triangulation, 3);
    // independently derived: 1, 10, 97
    for (int n = 1; n <= 3; ++n) {
        GenSpec s = dang_spec(3, n, false);
        long long got = count_by_vertices(s, n)[static_cast<size_t>(n)];
        c.eq(series::Int(got), ref[n], "triangulations with " + std::to_string(n) + " vertices");
    }
}

void criterion_2() {
    Criterion c(2, "rooted essentially simple bipartite quadrangulation counts");
    series::ZSeries ref = series::closed_form_series(series::ClosedForm::Quadrangulation, 3);
    // independently derived: 1 (n=2), 8 (n=3)
    for (int n = 2; n <= 3; ++n) {
        GenSpec s = dang_spec(4, n, false);
        s.bipartite = true;
        long long got = count_by_vertices(s, n)[static_cast<size_t>(n)];
        c.eq(series::Int(got), ref[n],
             "bipartite quadrangulations with " + std::to_string(n) + " vertices");
    }
}

void criterion_3() {
    Criterion c(3, "all bipartite quadrangulations and loopless triangulations");
    series::ZSeries bq = series::closed_form_series(series::ClosedForm::BipQuadAll, 3);
    for (int n = 1; n <= 3; ++n) {  // 0, 1, 20
        GenSpec s;
        s.genus = 1;
        s.max_vertices = n;
        s.max_edges = 2 * n;
        s.face_rule = FaceRule::all_degree;
        s.face_param = 4;
        s.bipartite = true;
        long long got = count_by_vertices(s, n)[static_cast<size_t>(n)];
        c.eq(series::Int(got), bq[n],
             "all bipartite quadrangulations with " + std::to_string(n) + " vertices");
    }
    series::ZSeries lt = series::closed_form_series(series::ClosedForm::LooplessTriAll, 2);
    for (int n = 1; n <= 2; ++n) {  // 1, 16
        GenSpec s;
        s.genus = 1;
        s.max_vertices = n;
        s.max_edges = 3 * n;
        s.face_rule = FaceRule::all_degree;
        s.face_param = 3;
        long long got = 0;
        generate_maps(s, [&](const FaceRootedMap& f) {
            // essentially loopless = no contractible loop = essential girth >= 2
            if (f.map.vertex_count() == n && essential_girth(f.map) >= 2) ++got;
            return true;
        });
        c.eq(series::Int(got), lt[n],
             "loopless triangulations with " + std::to_string(n) + " vertices");
    }
}

void criterion_4() {
    Criterion c(4, "mobile-route series match closed forms to order 20");
    c.req(series::mobile_route_triangulation(20) ==
              series::closed_form_series(series::ClosedForm::Triangulation, 20),
          "triangulation mobile route");
    c.req(series::mobile_route_quadrangulation(20) ==
              series::closed_form_series(series::ClosedForm::Quadrangulation, 20),
          "quadrangulation mobile route");
}

void criterion_5() {
    Criterion c(5, "canonical orientation uniqueness");
    // F_d, d in {3,4,5}, at most 3 vertices: exactly one balanced orientation
    // (canonical_Z_orientation throws on a second hit), equal to the
    // constructive pipeline's weights.  Family sizes by vertex count:
    // d=3: 1,3,21; d=4: 1,2,8; d=5: 0,0,4.
    long long expected_members[3] = {25, 11, 4};
    for (int d : {3, 4, 5}) {
        GenSpec s = dang_spec(d, 3, true);
        s.family = MapFamilyTag::F;
        s.family_param = d;
        long long members = 0;
        generate_maps(s, [&](const FaceRootedMap& f) {
            ++members;
            auto z = canonical_Z_orientation(f, d);
            c.req(z.has_value(), "no balanced orientation on an F_" + std::to_string(d) + " map");
            if (z) {
                WeightedBiorientation ref = balanced_dd2(f, d);
                c.req(z->weight == ref.weight,
                      "search disagrees with the pipeline on an F_" + std::to_string(d) + " map");
            }
            return true;
        });
        c.eq(members, expected_members[d - 3], "F_" + std::to_string(d) + " member count");
    }
    // L_d, d in {1,2,3}, at most 2 vertices.  For d < 3 the family is
    // infinite without an edge cap (chains of small faces), so the check runs
    // over the members below a documented cap; the pipeline does not apply
    // (the maps are not d-angulations), so only uniqueness is asserted.
    for (int d : {1, 2, 3}) {
        GenSpec s;
        s.genus = 1;
        s.max_vertices = 2;
        s.max_edges = d == 3 ? 6 : 4;
        s.face_rule = FaceRule::root_degree;
        s.face_param = d;
        s.essential_girth = d;
        s.face_rooted = true;
        s.family = MapFamilyTag::L;
        s.family_param = d;
        long long members = 0;
        generate_maps(s, [&](const FaceRootedMap& f) {
            ++members;
            int hits = 0;
            enumerate_orientations(f.map, z_spec(f.map, d), [&](const WeightedBiorientation& w) {
                if (is_right_biorientation(f, w) && is_balanced_mobile(phi_plus(f, w))) ++hits;
                return true;
            });
            c.eq(hits, 1, "balanced orientations on an L_" + std::to_string(d) + " map");
            return true;
        });
        c.req(members > 0, "L_" + std::to_string(d) + " family is empty under the cap");
        std::cout << "  L_" << d << ": " << members << " maps checked\n";
    }
}

void criterion_6() {
    Criterion c(6, "bijection roundtrips and two-sided counts");
    // map side vs mobile side, independently enumerated.
    // F_d by vertices vs U_d^Bal by white vertices; dart caps were grown
    // until the mobile counts stabilized.
    struct Side {
        int d;
        int dart_cap;
        std::vector<long long> expect;  // independently derived counts
    };
    for (const Side& sd : {Side{3, 24, {0, 1, 3, 21}},
                           Side{4, 20, {0, 1, 2, 8}},
                           Side{5, 18, {0, 0, 0, 4}}}) {
        GenSpec s = dang_spec(sd.d, 3, true);
        s.family = MapFamilyTag::F;
        s.family_param = sd.d;
        std::vector<long long> maps = count_by_vertices(s, 3);
        std::vector<long long> mobiles =
            mobile_counts_by_whites(MobileFamily::UBal, sd.d, 3, sd.dart_cap);
        for (int n = 1; n <= 3; ++n) {
            c.eq(maps[static_cast<size_t>(n)], sd.expect[static_cast<size_t>(n)],
                 "F_" + std::to_string(sd.d) + " count at n=" + std::to_string(n));
            c.eq(mobiles[static_cast<size_t>(n)], sd.expect[static_cast<size_t>(n)],
                 "U_" + std::to_string(sd.d) + "^Bal count at w=" + std::to_string(n));
        }
        // roundtrips on every family member with the canonical orientation
        generate_maps(s, [&](const FaceRootedMap& f) {
            WeightedBiorientation w = balanced_dd2(f, sd.d);
            Mobile t = phi_plus(f, w);
            OrientedMapResult back = psi_plus(t);
            c.req(weighted_map_encoding(f, w) == weighted_map_encoding(back.frm, back.wbo),
                  "psi(phi) != id on an F_" + std::to_string(sd.d) + " map");
            c.req(mobiles_isomorphic(t, phi_plus(back.frm, back.wbo)),
                  "phi(psi) != id on an F_" + std::to_string(sd.d) + " map");
            return true;
        });
    }
    // L_3 vs V_3^Bal: 1, 11, 336
    {
        GenSpec s;
        s.genus = 1;
        s.max_vertices = 3;
        s.max_edges = 9;
        s.face_rule = FaceRule::root_degree_min;
        s.face_param = 3;
        s.essential_girth = 3;
        s.face_rooted = true;
        s.family = MapFamilyTag::L;
        s.family_param = 3;
        std::vector<long long> maps = count_by_vertices(s, 3);
        std::vector<long long> mobiles = mobile_counts_by_whites(MobileFamily::VBal, 3, 3, 24);
        std::vector<long long> expect = {0, 1, 11, 336};
        for (int n = 1; n <= 3; ++n) {
            c.eq(maps[static_cast<size_t>(n)], expect[static_cast<size_t>(n)],
                 "L_3 count at n=" + std::to_string(n));
            c.eq(mobiles[static_cast<size_t>(n)], expect[static_cast<size_t>(n)],
                 "V_3^Bal count at w=" + std::to_string(n));
        }
        // roundtrips on the two-vertex members with the canonical orientation
        s.max_vertices = 2;
        s.max_edges = 6;
        generate_maps(s, [&](const FaceRootedMap& f) {
            auto w = canonical_Z_orientation(f, 3);
            c.req(w.has_value(), "no canonical orientation on an L_3 map");
            if (!w) return true;
            Mobile t = phi_plus(f, *w);
            OrientedMapResult back = psi_plus(t);
            c.req(weighted_map_encoding(f, *w) == weighted_map_encoding(back.frm, back.wbo),
                  "psi(phi) != id on an L_3 map");
            c.req(mobiles_isomorphic(t, phi_plus(back.frm, back.wbo)),
                  "phi(psi) != id on an L_3 map");
            return true;
        });
    }
}

void criterion_7() {
    Criterion c(7, "score identities: epsilon, gamma linearity, basis criterion");
    for (int d : {3, 4}) {
        GenSpec s = dang_spec(d, 2, false);
        generate_maps(s, [&](const FaceRootedMap& f) {
            const CombMap& m = f.map;
            HomologyBasis basis = homology_basis(m);
            std::vector<std::pair<int, DAngle>> angles;
            for (int k = 1; k <= d + 2; ++k)
                for (const DAngle& da : d_angles(m, k)) angles.emplace_back(k, da);
            std::vector<ClosedWalk> cycles = simple_cycles(m);
            enumerate_orientations(
                m, alpha_beta_spec(m, d, d - 2), [&](const WeightedBiorientation& w) {
                    // epsilon: inner-edge half-weights at walk vertices = k - d
                    for (const auto& [k, da] : angles) {
                        EnclosedRegion reg = enclosed_region(m, basis, da.walk);
                        std::set<int> on_walk;
                        for (Dart h : da.walk.darts) on_walk.insert(m.vertex_of(h));
                        long long eps = 0;
                        for (int e : reg.inner_edges) {
                            auto [h1, h2] = m.darts_of_edge(e);
                            for (Dart h : {h1, h2})
                                if (on_walk.count(m.vertex_of(h))) eps += w.w(h);
                        }
                        c.eq(eps, k - d, "epsilon on a " + std::to_string(k) + "-angle, d=" +
                                             std::to_string(d));
                    }
                    // gamma is linear over the homology class
                    long long g1 = gamma_score(m, w, basis.b1);
                    long long g2 = gamma_score(m, w, basis.b2);
                    for (const ClosedWalk& cyc : cycles) {
                        HomologyVector h = homology_vector(basis, cyc);
                        if (h[0] == 0 && h[1] == 0) continue;
                        c.req(gamma_score(m, w, cyc) == h[0] * g1 + h[1] * g2,
                              "gamma not linear in homology");
                    }
                    // basis-zero iff exhaustive-zero
                    c.req(is_balanced(m, w, BalancedMode::basis) ==
                              is_balanced(m, w, BalancedMode::exhaustive),
                          "basis and exhaustive balance disagree");
                    return true;
                });
            return true;
        });
    }
}

void criterion_8() {
    Criterion c(8, "parity: even weights iff bipartite, halving doubles back");
    GenSpec s = dang_spec(4, 3, true);
    s.family = MapFamilyTag::F;
    s.family_param = 4;
    generate_maps(s, [&](const FaceRootedMap& f) {
        WeightedBiorientation w = balanced_dd2(f, 4);
        bool all_even = true;
        for (long long x : w.weight) all_even = all_even && x % 2 == 0;
        bool bip = in_map_family(f, MapFamilyTag::hatF, 4);
        c.req(all_even == bip, "even-weights/bipartite equivalence violated");
        if (bip) {
            Mobile full = phi_plus(f, w);
            Mobile halved = phi_plus(f, halve_bipartite(f, 4, w));
            c.req(mobiles_isomorphic(scale_mobile_weights(halved, 2), full),
                  "halved mobile does not double back");
        }
        return true;
    });
}

void criterion_9() {
    Criterion c(9, "root-angle decomposition and annular series");
    // corner-rooted M_3' maps, at most 3 vertices: 1, 37, 1313
    GenSpec s;
    s.genus = 1;
    s.max_vertices = 3;
    s.max_edges = 9;
    s.face_rule = FaceRule::root_degree_min;
    s.face_param = 3;
    s.essential_girth = 3;
    s.family = MapFamilyTag::M;
    s.family_param = 3;
    std::vector<long long> m_by_n(4, 0), l_by_n(4, 0);
    generate_maps(s, [&](const FaceRootedMap& f) {
        size_t n = static_cast<size_t>(f.map.vertex_count());
        ++m_by_n[n];
        if (in_map_family(f, MapFamilyTag::L, 3)) ++l_by_n[n];
        // the cut is a bijection: pieces land in the right families and the
        // glue reconstructs the map
        RootAngleCut cut = cut_at_root_d_angle(f, 3);
        c.req(cut.A.map.genus() == 0, "annular piece is not planar");
        c.req(in_map_family(cut.L, MapFamilyTag::L, 3), "toroidal piece is not in L_3");
        FaceRootedMap glued = glue_root_d_angle(cut.L, cut.A, cut.A_outer_corner, 3);
        c.req(face_rooted_isomorphic(glued, f), "glue does not invert the cut");
        return true;
    });
    std::vector<long long> m_expect = {0, 1, 37, 1313};
    std::vector<long long> l_expect = {0, 1, 31, 1004};
    for (int n = 1; n <= 3; ++n) {
        c.eq(m_by_n[static_cast<size_t>(n)], m_expect[static_cast<size_t>(n)],
             "M_3' count at n=" + std::to_string(n));
        c.eq(l_by_n[static_cast<size_t>(n)], l_expect[static_cast<size_t>(n)],
             "L_3' count at n=" + std::to_string(n));
    }
    // count identity M_3'(n) = sum_k L_3'(k) * A_3'(n-k), with the annular
    // counts enumerated directly (1, 6, 123)
    std::vector<long long> a = a3_counts(2, false);
    for (int n = 1; n <= 3; ++n) {
        long long conv = 0;
        for (int k = 1; k <= n; ++k)
            conv += l_by_n[static_cast<size_t>(k)] * a[static_cast<size_t>(n - k)];
        c.eq(m_by_n[static_cast<size_t>(n)], conv,
             "decomposition convolution at n=" + std::to_string(n));
    }
    // series route: A_3 = (1+W_0)^3.  The x_i markers cannot all be set to 1
    // at once (the W series have unbounded support in the markers at fixed
    // z-order), so the identity is checked in the specialization the closed
    // forms use, x_i = delta_{i,3}: all-triangular annular pieces, counted by
    // vertices not on f1, for up to 3 such vertices.
    auto w = series::solve_W_system<series::Int>(3, {{3, series::Int(1)}}, 3);
    std::vector<long long> at = a3_counts(3, true);  // 1, 3, 15, 91
    for (int n = 0; n <= 3; ++n)
        c.eq(series::Int(at[static_cast<size_t>(n)]), w.A[n],
             "(1+W_0)^3 vs triangular annular pieces at z^" + std::to_string(n));
}

void criterion_10() {
    Criterion c(10, "forward rule agrees with the expansion route");
    for (int d : {3, 4}) {
        GenSpec s = dang_spec(d, 3, true);
        generate_maps(s, [&](const FaceRootedMap& f) {
            enumerate_orientations(f.map, z_spec(f.map, d), [&](const WeightedBiorientation& w) {
                if (!is_right_biorientation(f, w)) return true;
                Mobile a = phi_plus(f, w);
                Mobile b = phi_plus_via_expansion(f, w);
                // the expansion route renumbers darts whenever it inserts
                // digons, so compare the decorated mobiles structurally
                c.req(mobiles_isomorphic(a, b),
                      "phi_plus differs from the expansion route, d=" + std::to_string(d));
                return true;
            });
            return true;
        });
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (g_failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: all criteria pass") << "\n";
    return g_failures;
}
