//
// Forward and inverse corner-rule bijections between weighted bioriented
// face-rooted maps and bimobiles, mobile scores/families, canonical forms,
// and serialization.

#include "tormaps/bijection.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace tormaps {

namespace {

// Chirality conventions of the bijection pair, pinned by requiring the
// closure's auxiliary map to reproduce the exact dual-edge pairing of the
// input map (verified on chiral instances, where a mirror cannot hide):
// the forward construction lists black rotations against the contour
// direction, the closure inserts its buds before each black edge-end and
// matches the parentheses along the reversed face walk, and the auxiliary
// map carries forward-contour rotations so that dualizing it undoes the
// forward construction exactly.
constexpr bool kMatchAgainstReversedWalk = true;
constexpr bool kReverseSpokeOrder = true;
constexpr bool kReverseBlackRotation = true;

}  // namespace

// ------------------------------------------------------------------ Mobile

MColor Mobile::color_of_vertex(int v) const {
    for (Dart d = 0; d < dart_count(); ++d)
        if (vertex_of[d] == v) return dart_color[d];
    throw std::out_of_range("color_of_vertex: no such vertex");
}

int Mobile::degree(int v) const {
    int c = 0;
    for (Dart d = 0; d < dart_count(); ++d) c += vertex_of[d] == v;
    return c;
}

std::vector<Dart> Mobile::darts_of_vertex(int v) const {
    Dart first = -1;
    for (Dart d = 0; d < dart_count(); ++d)
        if (vertex_of[d] == v) { first = d; break; }
    if (first < 0) throw std::out_of_range("darts_of_vertex: no such vertex");
    std::vector<Dart> out;
    Dart d = first;
    do {
        out.push_back(d);
        d = sigma[d];
    } while (d != first);
    return out;
}

int Mobile::face_count() const {
    int n = dart_count(), count = 0;
    std::vector<char> seen(n, 0);
    for (Dart d = 0; d < n; ++d) {
        if (seen[d]) continue;
        ++count;
        Dart t = d;
        while (!seen[t]) {
            seen[t] = 1;
            t = face_next(t);
        }
    }
    return count;
}

int Mobile::real_edge_count() const {
    int c = 0;
    for (Dart d = 0; d < dart_count(); ++d) c += alpha[d] >= 0;
    return c / 2;
}

int Mobile::bud_count() const {
    int c = 0;
    for (Dart d = 0; d < dart_count(); ++d) c += alpha[d] < 0;
    return c;
}

int Mobile::genus() const {
    // buds are pendant stubs: they affect neither the vertex/edge counts nor
    // the face count, so the Euler relation uses real edges only
    int chi = n_vertices - real_edge_count() + face_count();
    if ((2 - chi) % 2 != 0) throw std::logic_error("genus: odd Euler defect");
    return (2 - chi) / 2;
}

long long Mobile::vertex_weight(int v) const {
    long long s = 0;
    for (Dart d = 0; d < dart_count(); ++d)
        if (vertex_of[d] == v) s += weight[d];
    return s;
}

long long Mobile::edge_weight(Dart d) const {
    if (is_bud(d)) throw std::invalid_argument("edge_weight: dart is a bud");
    return weight[d] + weight[alpha[d]];
}

Mobile make_mobile(std::vector<Dart> alpha, std::vector<Dart> sigma,
                   std::vector<MColor> dart_color, std::vector<long long> weight) {
    const int n = static_cast<int>(alpha.size());
    if (n < 1) throw std::invalid_argument("make_mobile: empty dart set");
    if (sigma.size() != alpha.size() || dart_color.size() != alpha.size() ||
        weight.size() != alpha.size())
        throw std::invalid_argument("make_mobile: array size mismatch");

    std::vector<char> hit(n, 0);
    for (Dart d = 0; d < n; ++d) {
        Dart s = sigma[d];
        if (s < 0 || s >= n || hit[s])
            throw std::invalid_argument("make_mobile: sigma is not a permutation");
        hit[s] = 1;
    }
    for (Dart d = 0; d < n; ++d) {
        Dart a = alpha[d];
        if (a == -1) continue;
        if (a < 0 || a >= n || a == d || alpha[a] != d)
            throw std::invalid_argument("make_mobile: alpha is not a partial involution");
    }

    Mobile m;
    m.alpha = std::move(alpha);
    m.sigma = std::move(sigma);
    m.dart_color = std::move(dart_color);
    m.weight = std::move(weight);

    m.vertex_of.assign(n, -1);
    for (Dart d = 0; d < n; ++d) {
        if (m.vertex_of[d] >= 0) continue;
        int v = m.n_vertices++;
        Dart t = d;
        do {
            m.vertex_of[t] = v;
            t = m.sigma[t];
        } while (t != d);
    }
    for (Dart d = 0; d < n; ++d) {
        if (m.dart_color[d] != m.dart_color[m.sigma[d]])
            throw std::invalid_argument("make_mobile: inconsistent vertex colors");
        if (m.is_bud(d)) {
            if (m.dart_color[d] != MColor::black)
                throw std::invalid_argument("make_mobile: bud at a white vertex");
            if (m.weight[d] != 0)
                throw std::invalid_argument("make_mobile: bud with nonzero weight");
        }
    }

    // connectivity over sigma and alpha moves
    std::vector<char> seen(n, 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        ++reached;
        for (Dart t : {m.sigma[d], m.alpha[d]})
            if (t >= 0 && !seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
    }
    if (reached != n) throw std::invalid_argument("make_mobile: not connected");
    return m;
}

long long excess(const Mobile& m) {
    long long e = 0;
    for (Dart d = 0; d < m.dart_count(); ++d) {
        Dart a = m.alpha[d];
        if (a < 0) {
            e -= 1;  // bud
            continue;
        }
        if (a < d) continue;
        bool wd = m.dart_color[d] == MColor::white;
        bool wa = m.dart_color[a] == MColor::white;
        if (wd && wa) e += 2;
        else if (wd || wa) e += 1;
    }
    return e;
}

bool is_Z_bimobile(const Mobile& m) {
    for (Dart d = 0; d < m.dart_count(); ++d) {
        if (m.dart_color[d] == MColor::white) {
            if (m.weight[d] <= 0) return false;
        } else if (!m.is_bud(d) && m.weight[d] > 0) {
            return false;
        }
    }
    return true;
}

bool is_N_bimobile(const Mobile& m) {
    if (!is_Z_bimobile(m)) return false;
    for (Dart d = 0; d < m.dart_count(); ++d)
        if (m.dart_color[d] == MColor::black && !m.is_bud(d) && m.weight[d] != 0)
            return false;
    return true;
}

// ------------------------------------------------------- forward bijection

namespace {

// Core of the forward construction, before contract checks: one black vertex
// per non-root face, the per-edge rules in the uniform formulation (every map
// dart h contributes the item B(h) at the black vertex of its left face: a
// bud when alpha(h) is outgoing, otherwise an edge-end of weight w(alpha(h));
// every outgoing dart h contributes the white half-edge W(h) of weight w(h)).
struct PhiCore {
    Mobile mobile;
    std::vector<Dart> W_id;  // map dart -> mobile dart of W(h), or -1
    std::vector<Dart> B_id;  // map dart -> mobile dart of B(h), or -1 (root face)
};

PhiCore phi_plus_core(const CombMap& m, const WeightedBiorientation& wbo, int root_face) {
    const int n = m.dart_count();
    std::vector<Dart> W_id(n, -1), B_id(n, -1);
    std::vector<Dart> malpha;
    std::vector<MColor> mcolor;
    std::vector<long long> mweight;
    auto new_dart = [&](MColor c, long long w) {
        malpha.push_back(-1);
        mcolor.push_back(c);
        mweight.push_back(w);
        return static_cast<int>(malpha.size()) - 1;
    };
    for (Dart h = 0; h < n; ++h)
        if (wbo.outgoing(h)) W_id[h] = new_dart(MColor::white, wbo.w(h));
    for (Dart h = 0; h < n; ++h) {
        if (m.face_of(h) == root_face) continue;
        bool bud = wbo.outgoing(m.alpha(h));
        B_id[h] = new_dart(MColor::black, bud ? 0 : wbo.w(m.alpha(h)));
    }

    for (int e = 0; e < m.edge_count(); ++e) {
        auto [x, y] = m.darts_of_edge(e);
        bool ox = wbo.outgoing(x), oy = wbo.outgoing(y);
        if (ox && oy) {
            malpha[W_id[x]] = W_id[y];
            malpha[W_id[y]] = W_id[x];
            // B(x), B(y) stay buds
        } else if (!ox && !oy) {
            if (B_id[x] < 0 || B_id[y] < 0)
                throw std::logic_error("phi_plus: root black vertex has an incident edge");
            malpha[B_id[x]] = B_id[y];
            malpha[B_id[y]] = B_id[x];
        } else {
            Dart out = ox ? x : y;
            if (B_id[out] < 0)
                throw std::logic_error("phi_plus: root black vertex has an incident edge");
            malpha[W_id[out]] = B_id[out];
            malpha[B_id[out]] = W_id[out];
            // B of the ingoing dart stays a bud
        }
    }

    std::vector<Dart> msigma(malpha.size(), -1);
    auto close_cycle = [&](const std::vector<Dart>& cyc) {
        for (size_t i = 0; i < cyc.size(); ++i)
            msigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    };
    for (int v = 0; v < m.vertex_count(); ++v) {
        std::vector<Dart> cyc;
        for (Dart h : m.darts_of_vertex(v))
            if (W_id[h] >= 0) cyc.push_back(W_id[h]);
        if (cyc.empty())
            throw std::invalid_argument("phi_plus: vertex without an outgoing dart");
        close_cycle(cyc);
    }
    for (int f = 0; f < m.face_count(); ++f) {
        if (f == root_face) continue;
        // the rotation around the black vertex runs against the contour
        // direction (the mirror convention used for d-angles as well)
        std::vector<Dart> cyc;
        auto contour = m.darts_of_face(f);
        if (kReverseBlackRotation)
            for (auto it = contour.rbegin(); it != contour.rend(); ++it)
                cyc.push_back(B_id[*it]);
        else
            for (Dart h : contour) cyc.push_back(B_id[h]);
        close_cycle(cyc);
    }

    PhiCore out;
    out.mobile = make_mobile(std::move(malpha), std::move(msigma), std::move(mcolor),
                             std::move(mweight));
    out.W_id = std::move(W_id);
    out.B_id = std::move(B_id);
    return out;
}

void check_phi_contract(const CombMap& m, const WeightedBiorientation& wbo, int root_face,
                        const PhiCore& core) {
    const Mobile& T = core.mobile;
    const int d = m.face_degree(root_face);
    if (excess(T) != d) throw std::logic_error("phi_plus: excess differs from root degree");
    if (!T.unicellular()) throw std::logic_error("phi_plus: image is not unicellular");
    if (T.genus() != m.genus()) throw std::logic_error("phi_plus: genus not preserved");
    for (int v = 0; v < m.vertex_count(); ++v) {
        Dart wd = -1;
        int outdeg = 0;
        long long vw = 0;
        for (Dart h : m.darts_of_vertex(v))
            if (wbo.outgoing(h)) {
                wd = core.W_id[h];
                ++outdeg;
                vw += wbo.w(h);
            }
        int mv = T.vertex_of[wd];
        if (T.degree(mv) != outdeg)
            throw std::logic_error("phi_plus: white degree differs from outdegree");
        if (T.vertex_weight(mv) != vw)
            throw std::logic_error("phi_plus: white weight differs from vertex weight");
    }
    for (int f = 0; f < m.face_count(); ++f) {
        if (f == root_face) continue;
        int mv = T.vertex_of[core.B_id[m.darts_of_face(f).front()]];
        if (T.degree(mv) != m.face_degree(f))
            throw std::logic_error("phi_plus: black degree differs from face degree");
        long long fw = 0;  // regime-safe ingoing weight sum of the face
        for (Dart h = 0; h < m.dart_count(); ++h)
            if (wbo.w(h) <= 0 && m.face_of(m.alpha(h)) == f) fw += wbo.w(h);
        if (T.vertex_weight(mv) != fw)
            throw std::logic_error("phi_plus: black weight differs from face weight");
    }
}

}  // namespace

Mobile phi_plus(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    validate_biorientation(frm.map, wbo);
    if (!is_right_biorientation(frm, wbo))
        throw std::invalid_argument("phi_plus: not a right biorientation for the root face");
    PhiCore core = phi_plus_core(frm.map, wbo, frm.root_face);
    check_phi_contract(frm.map, wbo, frm.root_face, core);
    return std::move(core.mobile);
}

// ------------------------------------------------ expansions / contractions

namespace {

// Replace each 2-way edge by a counterclockwise double edge (the new ingoing
// copies enclose a digon face with the original darts) and each 0-way edge by
// an outdegree-2 midvertex; all edges of the result are 1-way.
struct MuExpansion {
    CombMap map;
    WeightedBiorientation ori;
    int root_face = -1;
    std::vector<Dart> digon_darts;  // one digon contour dart per 2-way edge
    std::vector<Dart> mid_darts;    // one midvertex dart per 0-way edge
};

MuExpansion mu_expand(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    const CombMap& m = frm.map;
    const int n = m.dart_count();
    std::vector<Dart> alpha(n), sigma(n), sigma_inv(n);
    std::vector<long long> weight = wbo.weight;
    for (Dart h = 0; h < n; ++h) {
        alpha[h] = m.alpha(h);
        sigma[h] = m.sigma(h);
        sigma_inv[h] = m.sigma_inv(h);
    }
    auto add = [&](long long w) {
        alpha.push_back(-1);
        sigma.push_back(-1);
        sigma_inv.push_back(-1);
        weight.push_back(w);
        return static_cast<int>(alpha.size()) - 1;
    };
    auto insert_before = [&](Dart nd, Dart at) {
        Dart p = sigma_inv[at];
        sigma[p] = nd;
        sigma_inv[nd] = p;
        sigma[nd] = at;
        sigma_inv[at] = nd;
    };

    std::vector<Dart> inserted_before(n, -1);
    std::vector<Dart> digon_darts, mid_darts;
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [x, y] = m.darts_of_edge(e);
        bool ox = wbo.outgoing(x), oy = wbo.outgoing(y);
        if (ox && oy) {
            Dart qp = add(0);  // ingoing copy paired with y, inserted before x
            Dart pp = add(0);  // ingoing copy paired with x, inserted before y
            alpha[x] = pp;
            alpha[pp] = x;
            alpha[y] = qp;
            alpha[qp] = y;
            insert_before(qp, x);
            insert_before(pp, y);
            inserted_before[x] = qp;
            inserted_before[y] = pp;
            digon_darts.push_back(x);  // the digon face is {x, y}
        } else if (!ox && !oy) {
            Dart a = add(1), b = add(1);
            sigma[a] = b;
            sigma[b] = a;
            sigma_inv[a] = b;
            sigma_inv[b] = a;
            alpha[a] = x;
            alpha[x] = a;
            alpha[b] = y;
            alpha[y] = b;
            mid_darts.push_back(a);
        }
    }

    MuExpansion out{CombMap(alpha, sigma), {wbo.regime, std::move(weight)}, -1,
                    std::move(digon_darts), std::move(mid_darts)};
    // the image of the root face: each original root-contour dart keeps its
    // left face except across a 2-way edge, where the inserted copy takes it
    int root = -1;
    for (Dart h : m.darts_of_face(frm.root_face)) {
        Dart cand = inserted_before[h] >= 0 ? inserted_before[h] : h;
        int f = out.map.face_of(cand);
        if (root < 0) root = f;
        else if (root != f)
            throw std::logic_error("mu_expand: root face image is inconsistent");
    }
    out.root_face = root;
    for (int e = 0; e < out.map.edge_count(); ++e) {
        auto [x, y] = out.map.darts_of_edge(e);
        if (out.ori.outgoing(x) == out.ori.outgoing(y))
            throw std::logic_error("mu_expand: produced a non-1-way edge");
    }
    return out;
}

// Contract degree-2 square black vertices back to white-white edges and
// degree-2 square white vertices (with the bud preceding each of their black
// ends) back to black-black edges.
Mobile lambda_contract(const Mobile& T, const std::vector<int>& square_blacks,
                       const std::vector<int>& square_whites) {
    const int n = T.dart_count();
    std::vector<Dart> sigma_inv(n);
    for (Dart d = 0; d < n; ++d) sigma_inv[T.sigma[d]] = d;

    std::vector<char> removed(n, 0);
    std::vector<Dart> alpha = T.alpha;
    for (int sb : square_blacks) {
        auto ds = T.darts_of_vertex(sb);
        if (ds.size() != 2 || T.is_bud(ds[0]) || T.is_bud(ds[1]))
            throw std::logic_error("lambda_contract: malformed square black vertex");
        Dart h = T.alpha[ds[0]], a = T.alpha[ds[1]];
        alpha[h] = a;
        alpha[a] = h;
        removed[ds[0]] = removed[ds[1]] = 1;
    }
    for (int sw : square_whites) {
        auto ds = T.darts_of_vertex(sw);
        if (ds.size() != 2 || T.is_bud(ds[0]) || T.is_bud(ds[1]))
            throw std::logic_error("lambda_contract: malformed square white vertex");
        Dart e1 = T.alpha[ds[0]], e2 = T.alpha[ds[1]];
        alpha[e1] = e2;
        alpha[e2] = e1;
        removed[ds[0]] = removed[ds[1]] = 1;
        for (Dart e : {e1, e2}) {
            Dart b = sigma_inv[e];
            if (!T.is_bud(b))
                throw std::logic_error("lambda_contract: missing bud before a black end");
            removed[b] = 1;
        }
    }

    std::vector<Dart> newid(n, -1);
    int nn = 0;
    for (Dart d = 0; d < n; ++d)
        if (!removed[d]) newid[d] = nn++;
    std::vector<Dart> alpha2(nn), sigma2(nn);
    std::vector<MColor> color2(nn);
    std::vector<long long> weight2(nn);
    for (Dart d = 0; d < n; ++d) {
        if (removed[d]) continue;
        Dart nd = newid[d];
        alpha2[nd] = alpha[d] < 0 ? -1 : newid[alpha[d]];
        Dart s = T.sigma[d];
        while (removed[s]) s = T.sigma[s];
        sigma2[nd] = newid[s];
        color2[nd] = T.dart_color[d];
        weight2[nd] = T.weight[d];
    }
    return make_mobile(std::move(alpha2), std::move(sigma2), std::move(color2),
                       std::move(weight2));
}

// Split each white-white edge with a weight-0 square black vertex and each
// black-black edge with a square white vertex whose halves carry weight 1,
// inserting one bud immediately before each black end of the split edge.
struct LambdaExpansion {
    Mobile mobile;
    std::vector<int> square_blacks;
    std::vector<int> square_whites;
};

LambdaExpansion lambda_expand(const Mobile& T) {
    const int n = T.dart_count();
    std::vector<Dart> alpha = T.alpha, sigma = T.sigma, sigma_inv(n);
    std::vector<MColor> color = T.dart_color;
    std::vector<long long> weight = T.weight;
    for (Dart d = 0; d < n; ++d) sigma_inv[sigma[d]] = d;
    auto add = [&](MColor c, long long w) {
        alpha.push_back(-1);
        sigma.push_back(-1);
        sigma_inv.push_back(-1);
        color.push_back(c);
        weight.push_back(w);
        return static_cast<int>(alpha.size()) - 1;
    };
    auto insert_before = [&](Dart nd, Dart at) {
        Dart p = sigma_inv[at];
        sigma[p] = nd;
        sigma_inv[nd] = p;
        sigma[nd] = at;
        sigma_inv[at] = nd;
    };

    std::vector<Dart> sq_black_dart, sq_white_dart;
    for (Dart h = 0; h < n; ++h) {
        Dart a = T.alpha[h];
        if (a < 0 || a < h) continue;
        bool wh = T.dart_color[h] == MColor::white;
        bool wa = T.dart_color[a] == MColor::white;
        if (wh && wa) {
            Dart s1 = add(MColor::black, 0), s2 = add(MColor::black, 0);
            sigma[s1] = s2;
            sigma[s2] = s1;
            sigma_inv[s1] = s2;
            sigma_inv[s2] = s1;
            alpha[h] = s1;
            alpha[s1] = h;
            alpha[a] = s2;
            alpha[s2] = a;
            sq_black_dart.push_back(s1);
        } else if (!wh && !wa) {
            Dart f1 = add(MColor::white, 1), f2 = add(MColor::white, 1);
            sigma[f1] = f2;
            sigma[f2] = f1;
            sigma_inv[f1] = f2;
            sigma_inv[f2] = f1;
            alpha[h] = f1;
            alpha[f1] = h;
            alpha[a] = f2;
            alpha[f2] = a;
            Dart b1 = add(MColor::black, 0);
            insert_before(b1, h);
            Dart b2 = add(MColor::black, 0);
            insert_before(b2, a);
            sq_white_dart.push_back(f1);
        }
    }

    LambdaExpansion out;
    out.mobile = make_mobile(std::move(alpha), std::move(sigma), std::move(color),
                             std::move(weight));
    for (Dart d : sq_black_dart) out.square_blacks.push_back(out.mobile.vertex_of[d]);
    for (Dart d : sq_white_dart) out.square_whites.push_back(out.mobile.vertex_of[d]);
    return out;
}

}  // namespace

Mobile phi_plus_via_expansion(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    validate_biorientation(frm.map, wbo);
    if (!is_right_biorientation(frm, wbo))
        throw std::invalid_argument(
            "phi_plus_via_expansion: not a right biorientation for the root face");
    MuExpansion mu = mu_expand(frm, wbo);
    FaceRootedMap f2{mu.map, mu.root_face, -1};
    if (!is_right_biorientation(f2, mu.ori))
        throw std::logic_error("phi_plus_via_expansion: expansion lost rightness");
    PhiCore core = phi_plus_core(mu.map, mu.ori, mu.root_face);
    check_phi_contract(mu.map, mu.ori, mu.root_face, core);
    std::vector<int> sq_b, sq_w;
    for (Dart x : mu.digon_darts) sq_b.push_back(core.mobile.vertex_of[core.B_id[x]]);
    for (Dart a : mu.mid_darts) sq_w.push_back(core.mobile.vertex_of[core.W_id[a]]);
    return lambda_contract(core.mobile, sq_b, sq_w);
}

// ------------------------------------------------------- inverse bijection

OrientedMapResult psi_plus(const Mobile& T0) {
    if (!is_Z_bimobile(T0)) throw std::invalid_argument("psi_plus: not a Z-bimobile");
    if (!T0.unicellular()) throw std::invalid_argument("psi_plus: not unicellular");
    const long long d_ll = excess(T0);
    if (d_ll < 1) throw std::invalid_argument("psi_plus: excess must be positive");
    const int d = static_cast<int>(d_ll);

    LambdaExpansion lx = lambda_expand(T0);
    const Mobile& T = lx.mobile;
    const int nT = T.dart_count();
    for (Dart h = 0; h < nT; ++h)
        if (T.alpha[h] >= 0 && T.dart_color[h] == T.dart_color[T.alpha[h]])
            throw std::logic_error("psi_plus: expansion left a monochrome edge");

    // --- partial closure: insert an ingoing bud right before each black end
    std::vector<Dart> asig = T.sigma;
    std::vector<Dart> asig_inv(nT);
    for (Dart d0 = 0; d0 < nT; ++d0) asig_inv[T.sigma[d0]] = d0;
    auto add = [&]() {
        asig.push_back(-1);
        asig_inv.push_back(-1);
        return static_cast<int>(asig.size()) - 1;
    };
    auto insert_before = [&](Dart nd, Dart at) {
        Dart p = asig_inv[at];
        asig[p] = nd;
        asig_inv[nd] = p;
        asig[nd] = at;
        asig_inv[at] = nd;
    };
    std::vector<Dart> ins(nT, -1);
    std::vector<Dart> end_of;  // inserted bud (id - nT) -> its black end
    for (Dart h = 0; h < nT; ++h)
        if (T.dart_color[h] == MColor::black && !T.is_bud(h)) {
            Dart ib = add();
            insert_before(ib, h);
            ins[h] = ib;
            end_of.push_back(h);
        }
    const int na = static_cast<int>(asig.size());
    auto is_ingoing_bud = [&](Dart t) { return t >= nT; };
    auto is_outgoing_bud = [&](Dart t) { return t < nT && T.is_bud(t); };
    auto face_next_aug = [&](Dart t) {
        if (t >= nT || T.alpha[t] < 0) return asig[t];
        return asig[T.alpha[t]];
    };

    // the unique face orbit, with all inserted buds swept along
    std::vector<Dart> seq;
    {
        std::vector<char> seen(na, 0);
        Dart t = 0;
        while (!seen[t]) {
            seen[t] = 1;
            seq.push_back(t);
            t = face_next_aug(t);
        }
        if (static_cast<int>(seq.size()) != na)
            throw std::logic_error("psi_plus: closure walk does not cover the face");
    }

    std::vector<Dart> walk;  // bud subsequence in matching-walk order
    for (Dart t : seq)
        if (is_ingoing_bud(t) || is_outgoing_bud(t)) walk.push_back(t);
    if (kMatchAgainstReversedWalk) std::reverse(walk.begin(), walk.end());

    // cyclic parenthesis matching: outgoing buds open, ingoing buds close
    const int nb = static_cast<int>(walk.size());
    std::vector<int> match(nb, -1);
    int open_left = 0;
    for (Dart t : walk) open_left += is_outgoing_bud(t);
    while (open_left > 0) {
        bool progressed = false;
        for (int i = 0; i < nb; ++i) {
            if (match[i] >= 0 || !is_outgoing_bud(walk[i])) continue;
            int j = (i + 1) % nb;
            while (j != i && match[j] >= 0) j = (j + 1) % nb;
            if (j != i && is_ingoing_bud(walk[j])) {
                match[i] = j;
                match[j] = i;
                --open_left;
                progressed = true;
            }
        }
        if (!progressed) throw std::logic_error("psi_plus: parenthesis matching is stuck");
    }
    std::vector<int> exposed;  // indices into walk, in walk order
    for (int i = 0; i < nb; ++i)
        if (match[i] < 0) {
            if (!is_ingoing_bud(walk[i]))
                throw std::logic_error("psi_plus: unmatched outgoing bud");
            exposed.push_back(i);
        }
    if (static_cast<int>(exposed.size()) != d)
        throw std::logic_error("psi_plus: exposed bud count differs from the excess");
    if (kReverseSpokeOrder) std::reverse(exposed.begin(), exposed.end());

    // --- the auxiliary map X on black vertices plus the new vertex
    std::vector<int> xd(na, -1);
    int xn = 0;
    for (Dart t = 0; t < na; ++t)
        if (is_ingoing_bud(t) || is_outgoing_bud(t)) xd[t] = xn++;
    const int total = xn + d;
    std::vector<Dart> xalpha(total, -1), xsigma(total, -1);
    for (int i = 0; i < nb; ++i) {
        if (match[i] <= i && match[i] >= 0) continue;
        if (match[i] > i) {
            xalpha[xd[walk[i]]] = xd[walk[match[i]]];
            xalpha[xd[walk[match[i]]]] = xd[walk[i]];
        }
    }
    for (int k = 0; k < d; ++k) {
        Dart spoke = xn + k;
        xalpha[spoke] = xd[walk[exposed[k]]];
        xalpha[xd[walk[exposed[k]]]] = spoke;
    }
    // Rotations: buds of each black vertex against the augmented sigma order.
    // The mobile's black rotations run against the face contours of the
    // original map, so reversing them here makes the auxiliary map's vertex
    // rotations follow the contours forward: the auxiliary map is then the
    // plain dual of the (expanded) original map, and dualizing recovers it.
    {
        std::vector<char> done(na, 0);
        for (Dart t = 0; t < na; ++t) {
            if (done[t] || xd[t] < 0) continue;
            // vertex orbit of t in the augmented rotation
            std::vector<Dart> cyc;
            Dart u = t;
            do {
                done[u] = 1;
                if (xd[u] >= 0) cyc.push_back(xd[u]);
                u = asig[u];
            } while (u != t);
            std::reverse(cyc.begin(), cyc.end());
            for (size_t i = 0; i < cyc.size(); ++i)
                xsigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
        for (int k = 0; k < d; ++k) xsigma[xn + k] = xn + (k + 1) % d;
    }
    CombMap X(xalpha, xsigma);

    // --- dualize; the outgoing dart of every rebuilt edge is the head (the
    // inserted bud), carrying the weight of the white half behind its end
    CombMap O = X.dual();
    std::vector<long long> ow(total, 0);
    for (Dart h = 0; h < nT; ++h) {
        if (ins[h] < 0) continue;
        Dart head = xd[ins[h]];
        ow[head] = T.weight[T.alpha[h]];
        ow[O.alpha(head)] = T.weight[h];
    }

    // --- contract the expansion artifacts back (inverse of mu)
    const int on = O.dart_count();
    std::vector<Dart> oalpha(on), osigma(on), osinv(on);
    std::vector<char> removed(on, 0), root_mark(on, 0);
    for (Dart h = 0; h < on; ++h) {
        oalpha[h] = O.alpha(h);
        osigma[h] = O.sigma(h);
        osinv[h] = O.sigma_inv(h);
    }
    for (int k = 0; k < d; ++k) root_mark[xn + k] = 1;
    auto splice_out = [&](Dart r) {
        osigma[osinv[r]] = osigma[r];
        osinv[osigma[r]] = osinv[r];
        removed[r] = 1;
    };
    for (int sb : lx.square_blacks) {
        Dart e1 = -1;
        for (Dart h : T.darts_of_vertex(sb))
            if (!T.is_bud(h)) { e1 = h; break; }
        int df = O.face_of(xd[ins[e1]]);
        auto cds = O.darts_of_face(df);
        if (cds.size() != 2 || ow[cds[0]] <= 0 || ow[cds[1]] <= 0)
            throw std::logic_error("psi_plus: malformed digon face");
        Dart d1 = cds[0], d2 = cds[1];
        Dart t1 = oalpha[d1], t2 = oalpha[d2];
        oalpha[d1] = d2;
        oalpha[d2] = d1;
        if (root_mark[t1]) root_mark[d2] = 1;
        if (root_mark[t2]) root_mark[d1] = 1;
        splice_out(t1);
        splice_out(t2);
    }
    for (int sw : lx.square_whites) {
        Dart f1 = T.darts_of_vertex(sw)[0];
        Dart e1 = T.alpha[f1];
        int mv = O.vertex_of(xd[ins[e1]]);
        auto vds = O.darts_of_vertex(mv);
        if (vds.size() != 2 || ow[vds[0]] != 1 || ow[vds[1]] != 1 || removed[vds[0]] ||
            removed[vds[1]] || root_mark[vds[0]] || root_mark[vds[1]])
            throw std::logic_error("psi_plus: malformed midvertex");
        Dart x = oalpha[vds[0]], y = oalpha[vds[1]];
        oalpha[x] = y;
        oalpha[y] = x;
        splice_out(vds[0]);
        splice_out(vds[1]);
    }

    std::vector<Dart> newid(on, -1);
    int nn = 0;
    for (Dart h = 0; h < on; ++h)
        if (!removed[h]) newid[h] = nn++;
    std::vector<Dart> alpha2(nn), sigma2(nn);
    std::vector<long long> weight2(nn);
    for (Dart h = 0; h < on; ++h) {
        if (removed[h]) continue;
        alpha2[newid[h]] = newid[oalpha[h]];
        sigma2[newid[h]] = newid[osigma[h]];
        weight2[newid[h]] = ow[h];
    }

    OrientedMapResult res;
    res.frm.map = CombMap(std::move(alpha2), std::move(sigma2));
    res.frm.root_corner = -1;
    res.frm.root_face = -1;
    for (Dart h = 0; h < on; ++h) {
        if (removed[h] || !root_mark[h]) continue;
        int f = res.frm.map.face_of(newid[h]);
        if (res.frm.root_face < 0) res.frm.root_face = f;
        else if (res.frm.root_face != f)
            throw std::logic_error("psi_plus: exposed buds border different faces");
    }
    if (res.frm.root_face < 0) throw std::logic_error("psi_plus: lost the root face");

    bool negative = false;
    for (long long w : weight2) negative = negative || w < 0;
    res.wbo.regime = negative ? Regime::Z : Regime::N;
    res.wbo.weight = std::move(weight2);
    validate_biorientation(res.frm.map, res.wbo);
    if (res.frm.map.face_degree(res.frm.root_face) != d)
        throw std::logic_error("psi_plus: root face degree differs from the excess");
    if (!is_right_biorientation(res.frm, res.wbo))
        throw std::logic_error("psi_plus: result is not a right biorientation");
    return res;
}

// ------------------------------------------------------------ mobile scores

long long mobile_gamma_score(const Mobile& m, const std::vector<Dart>& cycle) {
    const int k = static_cast<int>(cycle.size());
    if (k == 0) throw std::invalid_argument("mobile_gamma_score: empty cycle");
    std::set<int> verts;
    for (int i = 0; i < k; ++i) {
        Dart c = cycle[i], nx = cycle[(i + 1) % k];
        if (c < 0 || c >= m.dart_count() || m.is_bud(c))
            throw std::invalid_argument("mobile_gamma_score: cycle dart is not a real edge");
        if (m.vertex_of[nx] != m.vertex_of[m.alpha[c]])
            throw std::invalid_argument("mobile_gamma_score: cycle is not closed");
        if (!verts.insert(m.vertex_of[c]).second)
            throw std::invalid_argument("mobile_gamma_score: cycle is not vertex-simple");
    }
    auto val = [&](Dart y) {
        return m.weight[y] + (m.dart_color[y] == MColor::black ? 1 : 0);
    };
    long long right = 0, left = 0;
    for (int i = 0; i < k; ++i) {
        Dart o = cycle[(i + 1) % k];
        Dart a = m.alpha[cycle[i]];
        for (Dart y = m.sigma[o]; y != a; y = m.sigma[y]) right += val(y);
        for (Dart y = m.sigma[a]; y != o; y = m.sigma[y]) left += val(y);
    }
    return right - left;
}

std::vector<std::vector<Dart>> mobile_simple_cycles(const Mobile& m) {
    std::set<std::vector<Dart>> seen;
    std::vector<std::vector<Dart>> out;
    const int n = m.dart_count();
    std::vector<char> used(m.n_vertices, 0);
    std::vector<Dart> path;
    std::function<void(int)> extend = [&](int start_v) {
        Dart last = path.back();
        int v = m.vertex_of[m.alpha[last]];
        if (v == start_v) {
            auto nf = cyclic_normal_form(path);
            if (seen.insert(nf).second) out.push_back(nf);
            return;
        }
        if (used[v]) return;
        used[v] = 1;
        for (Dart t = 0; t < n; ++t) {
            if (m.vertex_of[t] != v || m.is_bud(t) || t == m.alpha[last]) continue;
            path.push_back(t);
            extend(start_v);
            path.pop_back();
        }
        used[v] = 0;
    };
    for (Dart s = 0; s < n; ++s) {
        if (m.is_bud(s)) continue;
        int sv = m.vertex_of[s];
        used[sv] = 1;
        path.assign(1, s);
        extend(sv);
        used[sv] = 0;
    }
    return out;
}

bool is_balanced_mobile(const Mobile& m) {
    if (m.genus() != 1)
        throw std::invalid_argument("is_balanced_mobile: genus must be 1");
    for (const auto& c : mobile_simple_cycles(m))
        if (mobile_gamma_score(m, c) != 0) return false;
    return true;
}

Mobile scale_mobile_weights(const Mobile& m, long long factor) {
    std::vector<long long> w = m.weight;
    for (auto& x : w) x *= factor;
    return make_mobile(m.alpha, m.sigma, m.dart_color, std::move(w));
}

// --------------------------------------------------------- mobile families

bool check_family(const Mobile& m, const MobileFamilyCheck& tag) {
    const long long p = tag.param;
    const bool hat = tag.family == MobileFamily::hatU || tag.family == MobileFamily::hatUBal ||
                     tag.family == MobileFamily::hatV || tag.family == MobileFamily::hatVBal;
    const bool bal = tag.family == MobileFamily::UBal || tag.family == MobileFamily::hatUBal ||
                     tag.family == MobileFamily::VBal || tag.family == MobileFamily::hatVBal;
    const bool nreg = tag.family == MobileFamily::U || tag.family == MobileFamily::UBal ||
                      tag.family == MobileFamily::hatU || tag.family == MobileFamily::hatUBal;
    const long long white_wt = p;
    const long long edge_wt = hat ? p - 1 : p - 2;

    if (!m.unicellular() || m.genus() != 1) return false;
    if (nreg ? !is_N_bimobile(m) : !is_Z_bimobile(m)) return false;
    for (Dart d = 0; d < m.dart_count(); ++d) {
        if (!nreg && !m.is_bud(d)) {
            long long lo = hat ? -1 : -2;
            if (m.weight[d] < lo || m.weight[d] > p) return false;
        }
        if (m.alpha[d] >= 0 && m.alpha[d] > d && m.edge_weight(d) != edge_wt) return false;
    }
    for (int v = 0; v < m.n_vertices; ++v) {
        int deg = m.degree(v);
        long long vw = m.vertex_weight(v);
        if (m.color_of_vertex(v) == MColor::white) {
            if (vw != white_wt) return false;
        } else if (nreg) {
            if (deg != (hat ? 2 * p : p)) return false;
        } else if (hat) {
            if (deg % 2 != 0 || vw != p - deg / 2) return false;
        } else {
            if (vw != p - deg) return false;
        }
    }
    if (bal) {
        const Mobile& probe = m;
        if (hat) {
            if (!is_balanced_mobile(scale_mobile_weights(probe, 2))) return false;
        } else if (!is_balanced_mobile(probe)) {
            return false;
        }
    }
    return true;
}

// ------------------------------------------------- canonical form / JSON

namespace {

std::vector<long long> mobile_encode_from(const Mobile& m, Dart root) {
    const int n = m.dart_count();
    std::vector<int> label(n, -1);
    std::vector<Dart> order;
    label[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i) {
        Dart d = order[i];
        for (Dart t : {m.sigma[d], m.alpha[d]})
            if (t >= 0 && label[t] < 0) {
                label[t] = static_cast<int>(order.size());
                order.push_back(t);
            }
    }
    if (static_cast<int>(order.size()) != n)
        throw std::logic_error("mobile_encode_from: mobile is not connected");
    std::vector<long long> enc;
    enc.reserve(static_cast<size_t>(n) * 4);
    for (Dart d : order) {
        enc.push_back(label[m.sigma[d]]);
        enc.push_back(m.alpha[d] < 0 ? -1 : label[m.alpha[d]]);
        enc.push_back(m.weight[d]);
        enc.push_back(m.dart_color[d] == MColor::black ? 1 : 0);
    }
    return enc;
}

}  // namespace

std::vector<long long> mobile_canonical_form(const Mobile& m) {
    std::vector<long long> best;
    for (Dart r = 0; r < m.dart_count(); ++r) {
        auto e = mobile_encode_from(m, r);
        if (best.empty() || e < best) best = std::move(e);
    }
    return best;
}

bool mobiles_isomorphic(const Mobile& a, const Mobile& b) {
    if (a.dart_count() != b.dart_count()) return false;
    return mobile_canonical_form(a) == mobile_canonical_form(b);
}

std::string mobile_to_json(const Mobile& m) {
    nlohmann::json vertices = nlohmann::json::array();
    for (int v = 0; v < m.n_vertices; ++v) {
        nlohmann::json rot = nlohmann::json::array();
        for (Dart d : m.darts_of_vertex(v)) {
            nlohmann::json item;
            item["dart"] = d;
            if (m.is_bud(d)) {
                item["bud"] = true;
            } else {
                item["opposite"] = m.alpha[d];
                item["weight"] = m.weight[d];
            }
            rot.push_back(item);
        }
        vertices.push_back({{"color", m.color_of_vertex(v) == MColor::black ? "black" : "white"},
                            {"rotation", rot}});
    }
    nlohmann::json j;
    j["darts"] = m.dart_count();
    j["vertices"] = vertices;
    return j.dump(2);
}

Mobile mobile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("darts").get<int>();
    std::vector<Dart> alpha(n, -1), sigma(n, -1);
    std::vector<MColor> color(n, MColor::black);
    std::vector<long long> weight(n, 0);
    std::vector<char> placed(n, 0);
    for (const auto& vj : j.at("vertices")) {
        const std::string cs = vj.at("color").get<std::string>();
        if (cs != "black" && cs != "white")
            throw std::invalid_argument("mobile_from_json: unknown color");
        MColor c = cs == "black" ? MColor::black : MColor::white;
        const auto& rot = vj.at("rotation");
        if (rot.empty()) throw std::invalid_argument("mobile_from_json: empty rotation");
        std::vector<Dart> cyc;
        for (const auto& item : rot) {
            Dart d = item.at("dart").get<Dart>();
            if (d < 0 || d >= n || placed[d])
                throw std::invalid_argument("mobile_from_json: bad dart id");
            placed[d] = 1;
            color[d] = c;
            if (item.contains("bud") && item.at("bud").get<bool>()) {
                alpha[d] = -1;
            } else {
                alpha[d] = item.at("opposite").get<Dart>();
                weight[d] = item.at("weight").get<long long>();
            }
            cyc.push_back(d);
        }
        for (size_t i = 0; i < cyc.size(); ++i) sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    for (int d = 0; d < n; ++d)
        if (!placed[d]) throw std::invalid_argument("mobile_from_json: missing dart");
    return make_mobile(std::move(alpha), std::move(sigma), std::move(color), std::move(weight));
}

std::vector<long long> weighted_map_encoding(const FaceRootedMap& frm,
                                             const WeightedBiorientation& wbo) {
    const int n = frm.map.dart_count();
    std::vector<long long> best;
    for (Dart r : frm.map.darts_of_face(frm.root_face)) {
        auto base = frm.map.canonical_encoding(r);
        auto [rm, perm] = frm.map.relabeled(r);
        std::vector<long long> e(base.begin(), base.end());
        std::vector<long long> w(n);
        for (Dart h = 0; h < n; ++h) w[perm[h]] = wbo.w(h);
        e.insert(e.end(), w.begin(), w.end());
        if (best.empty() || e < best) best = std::move(e);
    }
    return best;
}

}  // namespace tormaps
