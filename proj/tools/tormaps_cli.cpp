//
// Command-line surface for the library: map/mobile enumeration, canonical
// orientation, the forward/inverse bijection, exact series, verification
// suites, and a deterministic SVG renderer.
//
// Exit codes: 0 success, 2 usage error, 3 domain failure (invalid input or a
// failed verification), 4 internal assertion.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tormaps/balanced.hpp"
#include "tormaps/bijection.hpp"
#include "tormaps/comb_map.hpp"
#include "tormaps/enumerate.hpp"
#include "tormaps/orientation.hpp"
#include "tormaps/series.hpp"
#include "tormaps/topology.hpp"

using namespace tormaps;

namespace {

// ---------------------------------------------------------------------------
// shared option plumbing
// ---------------------------------------------------------------------------
struct Common {
    std::string format = "text";
};

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

WeightedBiorientation orientation_from_file(const MapFile& mf) {
    if (mf.weights.empty())
        throw std::invalid_argument("input file carries no weights: line");
    WeightedBiorientation w;
    w.weight = mf.weights;
    bool neg = false;
    for (long long x : mf.weights) neg = neg || x < 0;
    w.regime = neg ? Regime::Z : Regime::N;
    validate_biorientation(mf.map, w);
    return w;
}

FaceRootedMap rooted_from_file(const MapFile& mf) {
    FaceRootedMap frm{mf.map, 0, mf.root_corner};
    frm.root_face = mf.map.face_of(mf.root_face_dart >= 0 ? mf.root_face_dart : 0);
    return frm;
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------
struct EnumerateOpts {
    GenSpec spec;
    std::string faces;   // e.g. "all=3", "even-min=4", "root=3", "root-min=3"
    std::string family;  // F, L, M, hatF, hatL
    bool count_only = false;
    std::string emit_dir;
};

void apply_faces(GenSpec& spec, const std::string& faces) {
    if (faces.empty()) return;
    auto eq = faces.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--faces", "expected KIND=DEGREE");
    std::string kind = faces.substr(0, eq);
    spec.face_param = std::stoi(faces.substr(eq + 1));
    if (kind == "all")
        spec.face_rule = FaceRule::all_degree;
    else if (kind == "even-min")
        spec.face_rule = FaceRule::all_even_min;
    else if (kind == "root")
        spec.face_rule = FaceRule::root_degree;
    else if (kind == "root-min")
        spec.face_rule = FaceRule::root_degree_min;
    else
        throw CLI::ValidationError("--faces", "unknown kind: " + kind);
}

void apply_family(GenSpec& spec, const std::string& family, int param) {
    if (family.empty()) return;
    if (family == "F")
        spec.family = MapFamilyTag::F;
    else if (family == "L")
        spec.family = MapFamilyTag::L;
    else if (family == "M")
        spec.family = MapFamilyTag::M;
    else if (family == "hatF")
        spec.family = MapFamilyTag::hatF;
    else if (family == "hatL")
        spec.family = MapFamilyTag::hatL;
    else
        throw CLI::ValidationError("--family", "unknown family: " + family);
    spec.family_param = param;
}

int run_enumerate(EnumerateOpts opts, const Common& common) {
    // TORMAPS_MAX_DARTS caps the search size regardless of --edges
    if (const char* cap = std::getenv("TORMAPS_MAX_DARTS")) {
        int max_edges = std::stoi(cap) / 2;
        if (opts.spec.max_edges > max_edges) opts.spec.max_edges = max_edges;
    }
    long long count = 0;
    std::ostringstream emitted;
    generate_maps(opts.spec, [&](const FaceRootedMap& frm) {
        if (!opts.count_only) {
            std::string text = write_map_text(frm.map, 0, frm.root_corner);
            if (!opts.emit_dir.empty()) {
                write_all(opts.emit_dir + "/map_" + std::to_string(count) + ".txt", text);
            } else {
                emitted << "# map " << count << "\n" << text << "\n";
            }
        }
        ++count;
        return true;
    });
    if (common.format == "json") {
        nlohmann::json j;
        j["count"] = count;
        std::cout << j.dump(2) << "\n";
    } else {
        if (!opts.count_only && opts.emit_dir.empty()) std::cout << emitted.str();
        std::cout << "count: " << count << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// orient
// ---------------------------------------------------------------------------
int run_orient(const std::string& input, const std::string& output, int d, bool canonical_z,
               const Common& common) {
    MapFile mf = read_map_file(input);
    FaceRootedMap frm = rooted_from_file(mf);
    std::optional<WeightedBiorientation> w;
    if (canonical_z) {
        w = canonical_Z_orientation(frm, d);
        if (!w) {
            std::cerr << "no balanced orientation exists (map not in L_" << d << ")\n";
            return 3;
        }
    } else {
        w = balanced_dd2(frm, d);
    }
    std::string text = write_map_text(frm.map, mf.root_face_dart >= 0 ? mf.root_face_dart : 0,
                                      mf.root_corner, &w->weight);
    if (output.empty()) {
        if (common.format == "json") {
            nlohmann::json j;
            j["weights"] = w->weight;
            j["regime"] = w->regime == Regime::Z ? "Z" : "N";
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << text;
        }
    } else {
        write_all(output, text);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// biject
// ---------------------------------------------------------------------------
int run_biject(bool forward, const std::string& input, const std::string& output) {
    if (forward) {
        MapFile mf = read_map_file(input);
        FaceRootedMap frm = rooted_from_file(mf);
        WeightedBiorientation w = orientation_from_file(mf);
        Mobile m = phi_plus(frm, w);
        std::string json = mobile_to_json(m);
        if (output.empty())
            std::cout << json << "\n";
        else
            write_all(output, json);
    } else {
        Mobile m = mobile_from_json(read_all(input));
        OrientedMapResult r = psi_plus(m);
        Dart root_dart = r.frm.map.darts_of_face(r.frm.root_face).front();
        std::string text =
            write_map_text(r.frm.map, root_dart, r.frm.root_corner, &r.wbo.weight);
        if (output.empty())
            std::cout << text;
        else
            write_all(output, text);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// series
// ---------------------------------------------------------------------------
int run_series(const std::string& family, int order, int d, int b, int xdelta) {
    using series::Int;
    series::ZSeries out(order);
    if (family == "triangulation")
        out = series::closed_form_series(series::ClosedForm::Triangulation, order);
    else if (family == "quadrangulation")
        out = series::closed_form_series(series::ClosedForm::Quadrangulation, order);
    else if (family == "bip-quad-all")
        out = series::closed_form_series(series::ClosedForm::BipQuadAll, order);
    else if (family == "loopless-tri-all")
        out = series::closed_form_series(series::ClosedForm::LooplessTriAll, order);
    else if (family == "Wd") {
        int i = xdelta > 0 ? xdelta : d;
        auto sol = series::solve_W_system<Int>(d, {{i, Int(1)}}, order);
        out = sol.A;
    } else if (family == "Vb") {
        int i = xdelta > 0 ? xdelta : 2 * b;
        auto sol = series::solve_V_system<Int>(b, {{i, Int(1)}}, order);
        out = sol.A;
    } else {
        throw CLI::ValidationError("--family", "unknown series family: " + family);
    }
    for (int k = 0; k <= order; ++k) std::cout << out[k] << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
struct VerifyReport {
    int checked = 0;
    int failed = 0;

    void note(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++failed;
            std::cout << "FAIL " << what << "\n";
        }
    }
    int finish(const std::string& suite) const {
        std::cout << suite << ": " << (checked - failed) << "/" << checked << " checks passed"
                  << (failed ? " -- FAIL" : " -- pass") << "\n";
        return failed ? 3 : 0;
    }
};

GenSpec dang_spec(int d, int max_n, bool face_rooted) {
    GenSpec s;
    s.genus = 1;
    s.max_vertices = max_n;
    s.max_edges = max_n * d;  // d-angulation: E = dV/(d-2) <= dV
    s.face_rule = FaceRule::all_degree;
    s.face_param = d;
    s.essential_girth = d;
    s.face_rooted = face_rooted;
    return s;
}

int verify_counting(int d, int max_n) {
    VerifyReport rep;
    if (d != 3 && d != 4)
        throw std::invalid_argument("verify counting supports d in {3, 4}");
    auto form = d == 3 ? series::ClosedForm::Triangulation : series::ClosedForm::Quadrangulation;
    series::ZSeries ref = series::closed_form_series(form, max_n);
    GenSpec s = dang_spec(d, max_n, false);
    s.bipartite = d == 4;
    std::vector<long long> by_n(static_cast<size_t>(max_n) + 1, 0);
    generate_maps(s, [&](const FaceRootedMap& f) {
        ++by_n[static_cast<size_t>(f.map.vertex_count())];
        return true;
    });
    for (int n = 1; n <= max_n; ++n) {
        bool ok = series::Int(by_n[static_cast<size_t>(n)]) == ref[n];
        std::cout << "n=" << n << ": enumerated " << by_n[static_cast<size_t>(n)]
                  << ", series " << ref[n] << "\n";
        rep.note(ok, "count mismatch at n=" + std::to_string(n));
    }
    return rep.finish("counting");
}

int verify_uniqueness(int d, int max_n) {
    VerifyReport rep;
    GenSpec s = dang_spec(d, max_n, true);
    s.family = MapFamilyTag::F;
    s.family_param = d;
    generate_maps(s, [&](const FaceRootedMap& f) {
        auto c = canonical_Z_orientation(f, d);  // asserts at-most-one hit
        rep.note(c.has_value(), "no balanced orientation on an F_" + std::to_string(d) + " map");
        if (c) {
            WeightedBiorientation ref = balanced_dd2(f, d);
            rep.note(c->weight == ref.weight, "search disagrees with the constructive pipeline");
        }
        return true;
    });
    return rep.finish("uniqueness");
}

int verify_roundtrip(int d, int max_n, bool bipartite) {
    VerifyReport rep;
    GenSpec s = dang_spec(d, max_n, true);
    s.family = bipartite ? MapFamilyTag::hatF : MapFamilyTag::F;
    s.family_param = d;
    s.bipartite = bipartite;
    generate_maps(s, [&](const FaceRootedMap& f) {
        WeightedBiorientation w = balanced_dd2(f, d);
        if (bipartite) w = halve_bipartite(f, d, w);
        Mobile m = phi_plus(f, w);
        OrientedMapResult back = psi_plus(m);
        rep.note(weighted_map_encoding(f, w) == weighted_map_encoding(back.frm, back.wbo),
                 "psi(phi) is not the identity");
        rep.note(mobiles_isomorphic(m, phi_plus(back.frm, back.wbo)),
                 "phi(psi) is not the identity");
        return true;
    });
    return rep.finish("roundtrip");
}

int verify_gamma_linearity(int d, int max_n) {
    VerifyReport rep;
    GenSpec s = dang_spec(d, max_n, false);
    generate_maps(s, [&](const FaceRootedMap& f) {
        const CombMap& m = f.map;
        HomologyBasis basis = homology_basis(m);
        std::vector<ClosedWalk> cycles = simple_cycles(m);
        enumerate_orientations(m, alpha_beta_spec(m, d, d - 2),
                               [&](const WeightedBiorientation& w) {
                                   long long g1 = gamma_score(m, w, basis.b1);
                                   long long g2 = gamma_score(m, w, basis.b2);
                                   for (const ClosedWalk& c : cycles) {
                                       HomologyVector h = homology_vector(basis, c);
                                       if (h[0] == 0 && h[1] == 0) continue;
                                       rep.note(gamma_score(m, w, c) == h[0] * g1 + h[1] * g2,
                                                "gamma not linear in homology");
                                   }
                                   bool bb = is_balanced(m, w, BalancedMode::basis);
                                   bool be = is_balanced(m, w, BalancedMode::exhaustive);
                                   rep.note(bb == be, "basis/exhaustive balance disagree");
                                   return true;
                               });
        return true;
    });
    return rep.finish("gamma-linearity");
}

int verify_epsilon(int d, int max_n) {
    VerifyReport rep;
    GenSpec s = dang_spec(d, max_n, false);
    generate_maps(s, [&](const FaceRootedMap& f) {
        const CombMap& m = f.map;
        HomologyBasis basis = homology_basis(m);
        std::vector<std::pair<int, DAngle>> angles;
        for (int k = 1; k <= d + 2; ++k)
            for (const DAngle& da : d_angles(m, k)) angles.emplace_back(k, da);
        enumerate_orientations(
            m, alpha_beta_spec(m, d, d - 2), [&](const WeightedBiorientation& w) {
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
                    rep.note(eps == k - d, "epsilon != k - d on a " + std::to_string(k) +
                                               "-angle");
                }
                return true;
            });
        return true;
    });
    return rep.finish("epsilon");
}

int verify_parity(int max_n) {
    VerifyReport rep;
    GenSpec s = dang_spec(4, max_n, true);
    s.family = MapFamilyTag::F;
    s.family_param = 4;
    generate_maps(s, [&](const FaceRootedMap& f) {
        WeightedBiorientation w = balanced_dd2(f, 4);
        bool all_even = true;
        for (long long x : w.weight) all_even = all_even && x % 2 == 0;
        bool bip = in_map_family(f, MapFamilyTag::hatF, 4);
        rep.note(all_even == bip, "even-weights/bipartite equivalence violated");
        if (bip) {
            Mobile full = phi_plus(f, w);
            Mobile halved = phi_plus(f, halve_bipartite(f, 4, w));
            rep.note(mobiles_isomorphic(scale_mobile_weights(halved, 2), full),
                     "halved mobile does not double back to the full mobile");
        }
        return true;
    });
    return rep.finish("parity");
}

int verify_series_crosscheck() {
    VerifyReport rep;
    rep.note(series::mobile_route_triangulation(20) ==
                 series::closed_form_series(series::ClosedForm::Triangulation, 20),
             "triangulation mobile route disagrees with the closed form");
    rep.note(series::mobile_route_quadrangulation(20) ==
                 series::closed_form_series(series::ClosedForm::Quadrangulation, 20),
             "quadrangulation mobile route disagrees with the closed form");
    return rep.finish("series-crosscheck");
}

// ---------------------------------------------------------------------------
// render: deterministic SVG (BFS-grid layout, no randomness)
// ---------------------------------------------------------------------------
struct Point {
    double x = 0, y = 0;
};

std::vector<Point> bfs_grid_layout(int n_vertices, const std::function<std::vector<int>(int)>& nbrs,
                                   double width, double height) {
    std::vector<int> depth(static_cast<size_t>(n_vertices), -1);
    std::vector<std::vector<int>> rows;
    for (int s = 0; s < n_vertices; ++s) {
        if (depth[static_cast<size_t>(s)] >= 0) continue;
        depth[static_cast<size_t>(s)] = 0;
        std::vector<int> frontier{s};
        size_t level = 0;
        while (!frontier.empty()) {
            if (rows.size() <= level) rows.emplace_back();
            std::vector<int> next;
            for (int v : frontier) {
                rows[level].push_back(v);
                for (int u : nbrs(v))
                    if (depth[static_cast<size_t>(u)] < 0) {
                        depth[static_cast<size_t>(u)] = static_cast<int>(level) + 1;
                        next.push_back(u);
                    }
            }
            frontier = std::move(next);
            ++level;
        }
    }
    std::vector<Point> pos(static_cast<size_t>(n_vertices));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t i = 0; i < rows[r].size(); ++i) {
            pos[static_cast<size_t>(rows[r][i])] = {
                width * (static_cast<double>(i) + 1.0) / (static_cast<double>(rows[r].size()) + 1.0),
                height * (static_cast<double>(r) + 1.0) / (static_cast<double>(rows.size()) + 1.0)};
        }
    return pos;
}

// angle slot of a dart around its vertex, by sigma order
std::vector<double> dart_angles_map(const CombMap& m) {
    std::vector<double> ang(static_cast<size_t>(m.dart_count()), 0);
    for (int v = 0; v < m.vertex_count(); ++v) {
        std::vector<Dart> ds = m.darts_of_vertex(v);
        for (size_t i = 0; i < ds.size(); ++i)
            ang[static_cast<size_t>(ds[i])] =
                2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                static_cast<double>(ds.size());
    }
    return ang;
}

int run_render(const std::string& input, const std::string& output) {
    const double W = 420, H = 420;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect x=\"10\" y=\"10\" width=\"" << W - 20 << "\" height=\"" << H - 20
        << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";

    std::string text = read_all(input);
    bool is_mobile = !text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
                     text[text.find_first_not_of(" \t\r\n")] == '{';
    if (!is_mobile) {
        MapFile mf = read_map_text(text);
        const CombMap& m = mf.map;
        std::vector<Point> pos = bfs_grid_layout(
            m.vertex_count(),
            [&](int v) {
                std::vector<int> out;
                for (Dart d : m.darts_of_vertex(v)) out.push_back(m.head_of(d));
                return out;
            },
            W, H);
        std::vector<double> ang = dart_angles_map(m);
        for (int e = 0; e < m.edge_count(); ++e) {
            auto [h1, h2] = m.darts_of_edge(e);
            int a = m.vertex_of(h1), b = m.vertex_of(h2);
            if (a == b) {
                // loop: drawn as two boundary-crossing stubs with a shared label
                for (Dart h : {h1, h2}) {
                    Point p = pos[static_cast<size_t>(m.vertex_of(h))];
                    double dx = std::cos(ang[static_cast<size_t>(h)]);
                    double dy = std::sin(ang[static_cast<size_t>(h)]);
                    svg << "<line class=\"stub\" x1=\"" << p.x << "\" y1=\"" << p.y
                        << "\" x2=\"" << p.x + 60 * dx << "\" y2=\"" << p.y + 60 * dy
                        << "\" stroke=\"black\"/>\n";
                    svg << "<text x=\"" << p.x + 68 * dx << "\" y=\"" << p.y + 68 * dy
                        << "\" font-size=\"10\">e" << e << "</text>\n";
                }
            } else {
                Point p = pos[static_cast<size_t>(a)], q = pos[static_cast<size_t>(b)];
                svg << "<line class=\"edge\" x1=\"" << p.x << "\" y1=\"" << p.y << "\" x2=\""
                    << q.x << "\" y2=\"" << q.y << "\" stroke=\"black\"/>\n";
            }
            if (!mf.weights.empty()) {
                for (Dart h : {h1, h2}) {
                    Point p = pos[static_cast<size_t>(m.vertex_of(h))];
                    double dx = std::cos(ang[static_cast<size_t>(h)]);
                    double dy = std::sin(ang[static_cast<size_t>(h)]);
                    svg << "<text class=\"weight\" x=\"" << p.x + 24 * dx << "\" y=\""
                        << p.y + 24 * dy << "\" font-size=\"9\" fill=\"#c00\">"
                        << mf.weights[static_cast<size_t>(h)] << "</text>\n";
                }
            }
        }
        for (int v = 0; v < m.vertex_count(); ++v)
            svg << "<circle cx=\"" << pos[static_cast<size_t>(v)].x << "\" cy=\""
                << pos[static_cast<size_t>(v)].y << "\" r=\"5\" fill=\"black\"/>\n";
    } else {
        Mobile mob = mobile_from_json(text);
        std::vector<Point> pos = bfs_grid_layout(
            mob.n_vertices,
            [&](int v) {
                std::vector<int> out;
                for (Dart d : mob.darts_of_vertex(v))
                    if (!mob.is_bud(d))
                        out.push_back(
                            mob.vertex_of[static_cast<size_t>(mob.alpha[static_cast<size_t>(d)])]);
                return out;
            },
            W, H);
        for (Dart d = 0; d < mob.dart_count(); ++d) {
            int v = mob.vertex_of[static_cast<size_t>(d)];
            Point p = pos[static_cast<size_t>(v)];
            if (mob.is_bud(d)) {
                std::vector<Dart> ds = mob.darts_of_vertex(v);
                size_t idx = 0;
                for (size_t i = 0; i < ds.size(); ++i)
                    if (ds[i] == d) idx = i;
                double a = 2.0 * 3.14159265358979323846 * static_cast<double>(idx) /
                           static_cast<double>(ds.size());
                double x2 = p.x + 30 * std::cos(a), y2 = p.y + 30 * std::sin(a);
                svg << "<line class=\"bud\" x1=\"" << p.x << "\" y1=\"" << p.y << "\" x2=\"" << x2
                    << "\" y2=\"" << y2 << "\" stroke=\"#070\" marker-end=\"url(#arrow)\"/>\n";
            } else if (mob.alpha[static_cast<size_t>(d)] > d) {
                int u = mob.vertex_of[static_cast<size_t>(mob.alpha[static_cast<size_t>(d)])];
                Point q = pos[static_cast<size_t>(u)];
                svg << "<line class=\"edge\" x1=\"" << p.x << "\" y1=\"" << p.y << "\" x2=\""
                    << q.x << "\" y2=\"" << q.y << "\" stroke=\"black\"/>\n";
                svg << "<text x=\"" << (2 * p.x + q.x) / 3 << "\" y=\"" << (2 * p.y + q.y) / 3
                    << "\" font-size=\"9\" fill=\"#c00\">" << mob.weight[static_cast<size_t>(d)]
                    << "</text>\n";
            }
        }
        svg << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
               "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 "
               "10 z\"/></marker></defs>\n";
        for (int v = 0; v < mob.n_vertices; ++v) {
            bool black = mob.color_of_vertex(v) == MColor::black;
            svg << "<circle cx=\"" << pos[static_cast<size_t>(v)].x << "\" cy=\""
                << pos[static_cast<size_t>(v)].y << "\" r=\"6\" fill=\""
                << (black ? "black" : "white") << "\" stroke=\"black\"/>\n";
        }
    }
    svg << "</svg>\n";
    write_all(output, svg.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for toroidal maps, orientations and mobiles"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // enumerate
    EnumerateOpts eo;
    eo.spec.max_edges = 4;
    int family_param = 3;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "canonical map generation");
    enumerate_cmd->add_option("--genus", eo.spec.genus, "required genus (-1 = any)");
    enumerate_cmd->add_option("--vertices", eo.spec.max_vertices, "max vertex count");
    enumerate_cmd->add_option("--edges", eo.spec.max_edges, "max edge count (dart cap / 2)");
    enumerate_cmd->add_option("--min-edges", eo.spec.min_edges, "min edge count");
    enumerate_cmd->add_option("--faces", eo.faces, "face rule: all=D | even-min=D | root=D | root-min=D");
    enumerate_cmd->add_option("--filter-essential-girth", eo.spec.essential_girth,
                              "require this essential girth (genus-1 maps)");
    enumerate_cmd->add_flag("--bipartite", eo.spec.bipartite, "keep bipartite maps only");
    enumerate_cmd->add_option("--min-girth", eo.spec.min_girth, "minimum multigraph girth");
    enumerate_cmd->add_option("--family", eo.family, "map family filter: F|L|M|hatF|hatL");
    enumerate_cmd->add_option("--family-param", family_param, "family parameter d (or 2b)");
    enumerate_cmd->add_flag("--face-rooted", eo.spec.face_rooted,
                            "emit each face-rooted class once");
    enumerate_cmd->add_flag("--count", eo.count_only, "print the count only");
    enumerate_cmd->add_option("--emit", eo.emit_dir, "write each map into this directory");

    // orient
    std::string in_path, out_path;
    int opt_d = 3, opt_b = 2, opt_order = 10, opt_xdelta = -1, opt_maxn = 2;
    bool opt_canonical_z = false;
    auto* orient_cmd = app.add_subcommand("orient", "canonical balanced orientation");
    orient_cmd->add_option("--input", in_path, "map file")->required();
    orient_cmd->add_option("--output", out_path, "output file (default stdout)");
    orient_cmd->add_option("--d", opt_d, "face degree d");
    orient_cmd->add_flag("--canonical-z", opt_canonical_z,
                         "use the Z-regime search (general L_d maps)");

    // biject
    bool b_forward = false, b_inverse = false;
    auto* biject_cmd = app.add_subcommand("biject", "forward/inverse bijection");
    biject_cmd->add_flag("--forward", b_forward, "map + weights -> mobile JSON");
    biject_cmd->add_flag("--inverse", b_inverse, "mobile JSON -> map + weights");
    biject_cmd->add_option("--input", in_path, "input file")->required();
    biject_cmd->add_option("--output", out_path, "output file (default stdout)");

    // series
    std::string s_family;
    auto* series_cmd = app.add_subcommand("series", "exact generating functions");
    series_cmd
        ->add_option("--family", s_family,
                     "triangulation|quadrangulation|bip-quad-all|loopless-tri-all|Wd|Vb")
        ->required();
    series_cmd->add_option("--order", opt_order, "truncation order");
    series_cmd->add_option("--d", opt_d, "degree for Wd");
    series_cmd->add_option("--b", opt_b, "half-degree for Vb");
    series_cmd->add_option("--xdelta", opt_xdelta, "set x_i = 1 for this single i");

    // verify
    std::string v_suite;
    bool v_bipartite = false;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd
        ->add_option("--suite", v_suite,
                     "roundtrip|uniqueness|gamma-linearity|epsilon|parity|counting|"
                     "series-crosscheck")
        ->required();
    verify_cmd->add_option("--d", opt_d, "face degree d");
    verify_cmd->add_option("--max-n", opt_maxn, "max vertex count");
    verify_cmd->add_flag("--bipartite", v_bipartite, "bipartite variant");

    // render
    auto* render_cmd = app.add_subcommand("render", "deterministic SVG drawing");
    render_cmd->add_option("--input", in_path, "map text or mobile JSON file")->required();
    render_cmd->add_option("--output", out_path, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enumerate_cmd->parsed()) {
            apply_faces(eo.spec, eo.faces);
            apply_family(eo.spec, eo.family, family_param);
            return run_enumerate(eo, common);
        }
        if (orient_cmd->parsed()) return run_orient(in_path, out_path, opt_d, opt_canonical_z, common);
        if (biject_cmd->parsed()) {
            if (b_forward == b_inverse) {
                std::cerr << "biject: exactly one of --forward/--inverse is required\n";
                return 2;
            }
            return run_biject(b_forward, in_path, out_path);
        }
        if (series_cmd->parsed()) return run_series(s_family, opt_order, opt_d, opt_b, opt_xdelta);
        if (verify_cmd->parsed()) {
            if (v_suite == "counting") return verify_counting(opt_d, opt_maxn);
            if (v_suite == "uniqueness") return verify_uniqueness(opt_d, opt_maxn);
            if (v_suite == "roundtrip") return verify_roundtrip(opt_d, opt_maxn, v_bipartite);
            if (v_suite == "gamma-linearity") return verify_gamma_linearity(opt_d, opt_maxn);
            if (v_suite == "epsilon") return verify_epsilon(opt_d, opt_maxn);
            if (v_suite == "parity") return verify_parity(opt_maxn);
            if (v_suite == "series-crosscheck") return verify_series_crosscheck();
            std::cerr << "unknown suite: " << v_suite << "\n";
            return 2;
        }
        if (render_cmd->parsed()) return run_render(in_path, out_path);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal assertion: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
