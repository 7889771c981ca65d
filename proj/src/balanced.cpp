#include "tormaps/balanced.hpp"

#include <stdexcept>

#include "tormaps/bijection.hpp"

namespace tormaps {

namespace {

long long checked_gamma(const CombMap& m, const WeightedBiorientation& wbo,
                        const ClosedWalk& c) {
    return gamma_score(m, wbo, c);
}

void check_dd2(const CombMap& m, const WeightedBiorientation& wbo, long long vd,
               long long ed, const char* what) {
    for (int v = 0; v < m.vertex_count(); ++v)
        if (vertex_weight(m, wbo, v) != vd)
            throw std::logic_error(std::string(what) + ": bad vertex weight");
    for (int e = 0; e < m.edge_count(); ++e)
        if (edge_weight(m, wbo, e) != ed)
            throw std::logic_error(std::string(what) + ": bad edge weight");
}

}  // namespace

WeightedBiorientation biased_orientation(const CombMap& m, const ClosedWalk& cycle, int d) {
    Annulus ann = cut_along_cycle(m, cycle);
    const CombMap& A = ann.map;

    // zero out the copy of the cycle bounding the outer face (the one carrying
    // the darts hanging on the left of the cycle)
    std::vector<char> outer_v(static_cast<size_t>(A.vertex_count()), 0);
    std::vector<char> outer_e(static_cast<size_t>(A.edge_count()), 0);
    for (Dart h : A.darts_of_face(ann.outer_face)) {
        outer_v[static_cast<size_t>(A.vertex_of(h))] = 1;
        outer_e[static_cast<size_t>(A.edge_of(h))] = 1;
    }

    OrientationSpec spec;
    spec.regime = Regime::N;
    spec.alpha_v.resize(static_cast<size_t>(A.vertex_count()));
    spec.beta_e.resize(static_cast<size_t>(A.edge_count()));
    for (int v = 0; v < A.vertex_count(); ++v)
        spec.alpha_v[static_cast<size_t>(v)] = outer_v[static_cast<size_t>(v)] ? 0 : d;
    for (int e = 0; e < A.edge_count(); ++e)
        spec.beta_e[static_cast<size_t>(e)] = outer_e[static_cast<size_t>(e)] ? 0 : d - 2;
    spec.max_dart_weight = d - 2;

    AlphaBetaResult res = find_alpha_beta(A, spec);
    if (!res.orientation)
        throw std::runtime_error(
            "biased_orientation: annulus spec infeasible (cycle not shortest in its class "
            "or essential girth below d)");

    // The annulus keeps the torus darts 0..n-1 with their original labels;
    // the fresh twin darts all lie on weight-0 edges, so restricting to the
    // original darts glues the two copies of the cycle back together.
    WeightedBiorientation out;
    out.regime = Regime::N;
    out.weight.assign(static_cast<size_t>(m.dart_count()), 0);
    for (Dart x = 0; x < m.dart_count(); ++x) {
        if (ann.to_torus[static_cast<size_t>(x)] != x)
            throw std::logic_error("biased_orientation: annulus relabeled original darts");
        out.weight[static_cast<size_t>(x)] = res.orientation->w(x);
    }
    for (Dart x = m.dart_count(); x < A.dart_count(); ++x)
        if (res.orientation->w(x) != 0)
            throw std::logic_error("biased_orientation: twin dart carries nonzero weight");

    validate_biorientation(m, out);
    check_dd2(m, out, d, d - 2, "biased_orientation");
    if (checked_gamma(m, out, cycle) != 2LL * cycle.length())
        throw std::logic_error("biased_orientation: gamma along the cycle is not 2*length");
    return out;
}

BiasedQuadruple make_biased_quadruple(const CombMap& m, const ClosedWalk& b1,
                                      const ClosedWalk& b2, int d) {
    BiasedQuadruple q;
    q.b1 = b1;
    q.b2 = b2;
    q.k1 = b1.length();
    q.k2 = b2.length();
    q.d1 = biased_orientation(m, b1, d);
    q.d2 = biased_orientation(m, reversed_walk(m, b1), d);
    q.d3 = biased_orientation(m, b2, d);
    q.d4 = biased_orientation(m, reversed_walk(m, b2), d);
    q.a = checked_gamma(m, q.d1, b2);
    q.b = checked_gamma(m, q.d2, b2);
    q.c = checked_gamma(m, q.d3, b1);
    q.dd = checked_gamma(m, q.d4, b1);
    return q;
}

CombinedOrientation combine_biased(const CombMap& m, const BiasedQuadruple& quad, int d) {
    const long long k1 = quad.k1, k2 = quad.k2;
    const long long a = quad.a, b = quad.b, c = quad.c, dd = quad.dd;
    const long long k = 2 * k1 * k2;

    long long c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    if (a + b < 0) {
        c1 = (2 * k + b * c) * k2;
        c2 = (2 * k - a * c) * k2;
        c3 = -(a + b) * k;
    } else if (a + b == 0) {
        c1 = 1;
        c2 = 1;
    } else {
        c1 = (2 * k - b * dd) * k2;
        c2 = (2 * k + a * dd) * k2;
        c4 = (a + b) * k;
    }
    if (c1 < 0 || c2 < 0 || c3 < 0 || c4 < 0)
        throw std::logic_error("combine_biased: negative combination coefficient");

    CombinedOrientation out;
    out.sigma = c1 + c2 + c3 + c4;
    if (out.sigma < 1) throw std::logic_error("combine_biased: sigma < 1");
    out.orientation.regime = Regime::N;
    out.orientation.weight.assign(static_cast<size_t>(m.dart_count()), 0);
    for (size_t h = 0; h < out.orientation.weight.size(); ++h)
        out.orientation.weight[h] = c1 * quad.d1.weight[h] + c2 * quad.d2.weight[h] +
                                    c3 * quad.d3.weight[h] + c4 * quad.d4.weight[h];

    validate_biorientation(m, out.orientation);
    check_dd2(m, out.orientation, out.sigma * d, out.sigma * (d - 2), "combine_biased");
    if (checked_gamma(m, out.orientation, quad.b1) != 0 ||
        checked_gamma(m, out.orientation, quad.b2) != 0)
        throw std::logic_error("combine_biased: basis score not annihilated");
    return out;
}

WeightedBiorientation balanced_dd2(const FaceRootedMap& frm, int d) {
    const CombMap& m = frm.map;
    if (m.genus() != 1) throw std::invalid_argument("balanced_dd2: map is not toroidal");
    for (int f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) != d)
            throw std::invalid_argument("balanced_dd2: not a d-angulation");
    if (essential_girth(m) != d)
        throw std::invalid_argument("balanced_dd2: essential girth differs from d");

    HomologyBasis basis = homology_basis(m);
    ClosedWalk b1 = shortest_cycle_in_class(m, basis, {1, 0});
    ClosedWalk b2 = shortest_cycle_in_class(m, basis, {0, 1});

    BiasedQuadruple quad = make_biased_quadruple(m, b1, b2, d);
    CombinedOrientation comb = combine_biased(m, quad, d);
    WeightedBiorientation mini = minimize(frm, comb.orientation);

    WeightedBiorientation out;
    out.regime = Regime::N;
    out.weight.resize(mini.weight.size());
    for (size_t h = 0; h < mini.weight.size(); ++h) {
        if (mini.weight[h] % comb.sigma != 0)
            throw std::logic_error("balanced_dd2: minimized weight not divisible by sigma");
        out.weight[h] = mini.weight[h] / comb.sigma;
    }

    validate_biorientation(m, out);
    check_dd2(m, out, d, d - 2, "balanced_dd2");
    if (!is_balanced(m, out, BalancedMode::basis))
        throw std::logic_error("balanced_dd2: result not balanced");
    if (!is_minimal(frm, out))
        throw std::logic_error("balanced_dd2: result not minimal");
    return out;
}

WeightedBiorientation halve_bipartite(const FaceRootedMap& frm, int two_b,
                                      const WeightedBiorientation& wbo) {
    if (two_b % 2 != 0)
        throw std::invalid_argument("halve_bipartite: face degree is odd");
    const CombMap& m = frm.map;
    WeightedBiorientation out;
    out.regime = Regime::N;
    out.weight.resize(wbo.weight.size());
    for (size_t h = 0; h < wbo.weight.size(); ++h) {
        if (wbo.weight[h] % 2 != 0)
            throw std::invalid_argument(
                "halve_bipartite: odd half-edge weight (the map is not bipartite)");
        out.weight[h] = wbo.weight[h] / 2;
    }
    validate_biorientation(m, out);
    check_dd2(m, out, two_b / 2, two_b / 2 - 1, "halve_bipartite");
    return out;
}

std::optional<WeightedBiorientation> canonical_Z_orientation(const FaceRootedMap& frm, int d) {
    const CombMap& m = frm.map;
    if (m.genus() != 1)
        throw std::invalid_argument("canonical_Z_orientation: genus must be 1");
    if (d < 1) throw std::invalid_argument("canonical_Z_orientation: d must be at least 1");

    OrientationSpec spec;
    spec.regime = Regime::Z;
    spec.alpha_v.assign(m.vertex_count(), d);
    spec.beta_e.assign(m.edge_count(), d - 2);
    spec.min_dart_weight = -2;
    spec.max_dart_weight = d;
    std::vector<long long> ft(m.face_count());
    for (int f = 0; f < m.face_count(); ++f) ft[f] = d - m.face_degree(f);
    spec.face_target = std::move(ft);

    std::optional<WeightedBiorientation> hit;
    enumerate_orientations(m, spec, [&](const WeightedBiorientation& w) {
        if (!is_right_biorientation(frm, w)) return true;
        if (!is_balanced_mobile(phi_plus(frm, w))) return true;
        if (hit)
            throw std::logic_error("canonical_Z_orientation: second balanced hit found");
        hit = w;
        return true;
    });
    return hit;
}

}  // namespace tormaps
