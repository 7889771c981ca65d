#include "tormaps/orientation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "tormaps/topology.hpp"

namespace tormaps {

namespace {

void check_sized(const CombMap& m, const WeightedBiorientation& wbo) {
    if (static_cast<int>(wbo.weight.size()) != m.dart_count())
        throw std::invalid_argument("biorientation: weight vector size mismatch");
}

}  // namespace

void validate_biorientation(const CombMap& m, const WeightedBiorientation& wbo) {
    check_sized(m, wbo);
    if (wbo.regime == Regime::N)
        for (long long w : wbo.weight)
            if (w < 0) throw std::invalid_argument("N-biorientation: negative weight");
}

long long vertex_weight(const CombMap& m, const WeightedBiorientation& wbo, int v) {
    check_sized(m, wbo);
    long long s = 0;
    for (Dart h : m.darts_of_vertex(v)) {
        long long w = wbo.w(h);
        if (wbo.regime == Regime::N)
            s += w;  // ingoing darts carry 0, so this is the outgoing sum too
        else if (w > 0)
            s += w;
    }
    return s;
}

long long edge_weight(const CombMap& m, const WeightedBiorientation& wbo, int e) {
    check_sized(m, wbo);
    auto [h, hb] = m.darts_of_edge(e);
    return wbo.w(h) + wbo.w(hb);
}

long long face_weight(const CombMap& m, const WeightedBiorientation& wbo, int f) {
    check_sized(m, wbo);
    if (wbo.regime != Regime::Z)
        throw std::invalid_argument("face weight: defined for the Z-regime only");
    long long s = 0;
    // an ingoing half-edge counts toward the face on its left when traversed
    // toward its incident vertex, which is the left face of the opposite dart
    for (Dart h = 0; h < m.dart_count(); ++h)
        if (wbo.w(h) <= 0 && m.face_of(m.alpha(h)) == f) s += wbo.w(h);
    return s;
}

OrientationSpec alpha_beta_spec(const CombMap& m, long long alpha, long long beta) {
    OrientationSpec spec;
    spec.alpha_v.assign(static_cast<size_t>(m.vertex_count()), alpha);
    spec.beta_e.assign(static_cast<size_t>(m.edge_count()), beta);
    spec.max_dart_weight = beta;
    return spec;
}

// ---------------------------------------------------------------------------
// alpha/beta feasibility by max-flow
// ---------------------------------------------------------------------------

namespace {

struct FlowNet {
    struct Arc {
        int to;
        long long cap;
        size_t rev;  // index of the reverse arc in arcs[to]
    };
    std::vector<std::vector<Arc>> arcs;

    explicit FlowNet(int n) : arcs(static_cast<size_t>(n)) {}

    // returns (node, index) handle of the forward arc
    std::pair<int, size_t> add(int from, int to, long long cap) {
        arcs[static_cast<size_t>(from)].push_back({to, cap, arcs[static_cast<size_t>(to)].size()});
        arcs[static_cast<size_t>(to)].push_back(
            {from, 0, arcs[static_cast<size_t>(from)].size() - 1});
        return {from, arcs[static_cast<size_t>(from)].size() - 1};
    }

    long long max_flow(int s, int t) {
        long long total = 0;
        for (;;) {
            // BFS for a shortest augmenting path
            std::vector<std::pair<int, size_t>> parent(arcs.size(), {-1, 0});
            std::vector<char> seen(arcs.size(), 0);
            std::queue<int> q;
            q.push(s);
            seen[static_cast<size_t>(s)] = 1;
            while (!q.empty() && !seen[static_cast<size_t>(t)]) {
                int x = q.front();
                q.pop();
                for (size_t i = 0; i < arcs[static_cast<size_t>(x)].size(); ++i) {
                    const Arc& a = arcs[static_cast<size_t>(x)][i];
                    if (a.cap <= 0 || seen[static_cast<size_t>(a.to)]) continue;
                    seen[static_cast<size_t>(a.to)] = 1;
                    parent[static_cast<size_t>(a.to)] = {x, i};
                    q.push(a.to);
                }
            }
            if (!seen[static_cast<size_t>(t)]) return total;
            long long aug = std::numeric_limits<long long>::max();
            for (int x = t; x != s;) {
                auto [p, i] = parent[static_cast<size_t>(x)];
                aug = std::min(aug, arcs[static_cast<size_t>(p)][i].cap);
                x = p;
            }
            for (int x = t; x != s;) {
                auto [p, i] = parent[static_cast<size_t>(x)];
                Arc& a = arcs[static_cast<size_t>(p)][i];
                a.cap -= aug;
                arcs[static_cast<size_t>(a.to)][a.rev].cap += aug;
                x = p;
            }
            total += aug;
        }
    }

    std::vector<char> residual_reachable(int s) const {
        std::vector<char> seen(arcs.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (const Arc& a : arcs[static_cast<size_t>(x)])
                if (a.cap > 0 && !seen[static_cast<size_t>(a.to)]) {
                    seen[static_cast<size_t>(a.to)] = 1;
                    q.push(a.to);
                }
        }
        return seen;
    }
};

}  // namespace

AlphaBetaResult find_alpha_beta(const CombMap& m, const OrientationSpec& spec) {
    if (spec.regime != Regime::N)
        throw std::invalid_argument("find_alpha_beta: N-regime specs only");
    if (static_cast<int>(spec.alpha_v.size()) != m.vertex_count() ||
        static_cast<int>(spec.beta_e.size()) != m.edge_count())
        throw std::invalid_argument("find_alpha_beta: spec size mismatch");
    const long long sum_beta = std::accumulate(spec.beta_e.begin(), spec.beta_e.end(), 0LL);
    const long long sum_alpha = std::accumulate(spec.alpha_v.begin(), spec.alpha_v.end(), 0LL);

    AlphaBetaResult out;
    if (sum_beta != sum_alpha) {
        if (sum_beta > sum_alpha)  // the whole vertex set violates the count
            for (int v = 0; v < m.vertex_count(); ++v) out.violating_vertices.push_back(v);
        return out;
    }

    const int E = m.edge_count(), V = m.vertex_count();
    const int src = 0, snk = 1 + E + V;
    FlowNet net(2 + E + V);
    for (int e = 0; e < E; ++e) net.add(src, 1 + e, spec.beta_e[static_cast<size_t>(e)]);
    // dart arcs get effectively infinite capacity so that an infeasibility cut
    // never crosses them; the certificate derivation below depends on this
    std::vector<std::pair<int, size_t>> dart_arc(static_cast<size_t>(m.dart_count()));
    for (Dart h = 0; h < m.dart_count(); ++h)
        dart_arc[static_cast<size_t>(h)] =
            net.add(1 + m.edge_of(h), 1 + E + m.vertex_of(h), sum_beta + 1);
    for (int v = 0; v < V; ++v) net.add(1 + E + v, snk, spec.alpha_v[static_cast<size_t>(v)]);

    long long flow = net.max_flow(src, snk);
    if (flow == sum_beta) {
        WeightedBiorientation wbo;
        wbo.regime = Regime::N;
        wbo.weight.resize(static_cast<size_t>(m.dart_count()));
        for (Dart h = 0; h < m.dart_count(); ++h) {
            auto [node, idx] = dart_arc[static_cast<size_t>(h)];
            const FlowNet::Arc& a = net.arcs[static_cast<size_t>(node)][idx];
            // flow on the arc = initial cap - residual cap
            wbo.weight[static_cast<size_t>(h)] = (sum_beta + 1) - a.cap;
        }
        out.orientation = std::move(wbo);
        return out;
    }
    // min-cut certificate: vertices whose nodes are residual-reachable; every
    // saturated-source edge lies outside, so edges inside the set overload it
    std::vector<char> reach = net.residual_reachable(src);
    for (int v = 0; v < V; ++v)
        if (reach[static_cast<size_t>(1 + E + v)]) out.violating_vertices.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// beta-expansion
// ---------------------------------------------------------------------------

BetaExpansion beta_expansion(const CombMap& m, const WeightedBiorientation& wbo) {
    validate_biorientation(m, wbo);
    if (wbo.regime != Regime::N)
        throw std::invalid_argument("beta expansion: N-regime only");
    const int n = m.dart_count();
    // each original dart h is refined into beta(e) consecutive strand-side
    // darts (one per parallel strand, in counterclockwise order)
    std::vector<Dart> base(static_cast<size_t>(n + 1), 0);
    for (Dart h = 0; h < n; ++h) {
        long long beta = wbo.w(h) + wbo.w(m.alpha(h));
        if (beta <= 0) throw std::invalid_argument("beta expansion: edge weight must be positive");
        base[static_cast<size_t>(h + 1)] = base[static_cast<size_t>(h)] + static_cast<Dart>(beta);
    }
    const Dart N = base[static_cast<size_t>(n)];
    std::vector<Dart> alpha(static_cast<size_t>(N)), sigma(static_cast<size_t>(N));
    std::vector<Dart> to_orig(static_cast<size_t>(N));
    std::vector<long long> weight(static_cast<size_t>(N), 0);
    for (Dart h = 0; h < n; ++h) {
        Dart hb = m.alpha(h);
        long long beta = wbo.w(h) + wbo.w(hb);
        for (long long j = 0; j < beta; ++j) {
            Dart x = base[static_cast<size_t>(h)] + static_cast<Dart>(j);
            to_orig[static_cast<size_t>(x)] = h;
            // strand j (counterclockwise position at this endpoint) pairs
            // with position beta-1-j on the other side
            alpha[static_cast<size_t>(x)] =
                base[static_cast<size_t>(hb)] + static_cast<Dart>(beta - 1 - j);
            // ingoing strands first in counterclockwise order: the last
            // w(h) positions are the outgoing ones
            weight[static_cast<size_t>(x)] = j >= beta - wbo.w(h) ? 1 : 0;
            sigma[static_cast<size_t>(x)] =
                j + 1 < beta ? x + 1 : base[static_cast<size_t>(m.sigma(h))];
        }
    }
    BetaExpansion out{CombMap(std::move(alpha), std::move(sigma)),
                      WeightedBiorientation{Regime::N, std::move(weight)}, std::move(to_orig)};
    return out;
}

WeightedBiorientation contract_expansion(const CombMap& m, const BetaExpansion& bx) {
    WeightedBiorientation wbo;
    wbo.regime = Regime::N;
    wbo.weight.assign(static_cast<size_t>(m.dart_count()), 0);
    for (Dart x = 0; x < bx.map.dart_count(); ++x)
        if (bx.orientation.outgoing(x))
            wbo.weight[static_cast<size_t>(bx.to_orig[static_cast<size_t>(x)])] += 1;
    return wbo;
}

// ---------------------------------------------------------------------------
// minimality
// ---------------------------------------------------------------------------

namespace {

// faces whose closure (f => g across 1-way edges with f left / g right, and
// 0-way edges both ways) reaches the root face, by backward reachability
std::vector<char> faces_reaching_root(const CombMap& m, const WeightedBiorientation& wbo,
                                      int root_face) {
    std::vector<char> reaches(static_cast<size_t>(m.face_count()), 0);
    reaches[static_cast<size_t>(root_face)] = 1;
    std::queue<int> q;
    q.push(root_face);
    // reversed closure arcs: g <= f
    std::vector<std::vector<int>> rev(static_cast<size_t>(m.face_count()));
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [h, hb] = m.darts_of_edge(e);
        bool oh = wbo.outgoing(h), ohb = wbo.outgoing(hb);
        int fh = m.face_of(h), fhb = m.face_of(hb);
        if (oh && !ohb)  // 1-way along h: face_of(h) => face_of(hb)
            rev[static_cast<size_t>(fhb)].push_back(fh);
        else if (!oh && ohb)
            rev[static_cast<size_t>(fh)].push_back(fhb);
        else if (!oh && !ohb) {  // 0-way: both directions
            rev[static_cast<size_t>(fh)].push_back(fhb);
            rev[static_cast<size_t>(fhb)].push_back(fh);
        }
    }
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int g : rev[static_cast<size_t>(f)])
            if (!reaches[static_cast<size_t>(g)]) {
                reaches[static_cast<size_t>(g)] = 1;
                q.push(g);
            }
    }
    return reaches;
}

}  // namespace

bool is_minimal(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    validate_biorientation(frm.map, wbo);
    if (wbo.regime != Regime::N)
        throw std::invalid_argument("is_minimal: N-regime only");
    std::vector<char> reaches = faces_reaching_root(frm.map, wbo, frm.root_face);
    return std::all_of(reaches.begin(), reaches.end(), [](char c) { return c != 0; });
}

WeightedBiorientation minimize(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    validate_biorientation(frm.map, wbo);
    if (wbo.regime != Regime::N)
        throw std::invalid_argument("minimize: N-regime only");
    const CombMap& m = frm.map;
    WeightedBiorientation cur = wbo;
    long long sum_beta = 0;
    for (int e = 0; e < m.edge_count(); ++e) sum_beta += edge_weight(m, cur, e);
    const long long bound = sum_beta * m.face_count() + 1;
    for (long long flips = 0;; ++flips) {
        if (flips > bound)
            throw std::logic_error("minimize: flip bound exceeded (implementation bug)");
        std::vector<char> reaches = faces_reaching_root(m, cur, frm.root_face);
        int f = -1;
        for (int g = 0; g < m.face_count(); ++g)
            if (!reaches[static_cast<size_t>(g)]) {
                f = g;
                break;
            }
        if (f == -1) return cur;
        // S = forward closure of f; since f cannot reach the root face,
        // neither can anything f reaches, so S misses the root face
        std::vector<char> in_s(static_cast<size_t>(m.face_count()), 0);
        in_s[static_cast<size_t>(f)] = 1;
        std::queue<int> q;
        q.push(f);
        while (!q.empty()) {
            int g = q.front();
            q.pop();
            for (Dart h : m.darts_of_face(g)) {
                Dart hb = m.alpha(h);
                int other = m.face_of(hb);
                bool forward = (cur.outgoing(h) && !cur.outgoing(hb)) ||
                               (!cur.outgoing(h) && !cur.outgoing(hb));
                if (forward && !in_s[static_cast<size_t>(other)]) {
                    in_s[static_cast<size_t>(other)] = 1;
                    q.push(other);
                }
            }
        }
        if (in_s[static_cast<size_t>(frm.root_face)])
            throw std::logic_error("minimize: closure reached the root face (bug)");
        // counterclockwise flip of S: on each boundary edge, transfer one
        // unit from the dart with S on its right to its reverse
        for (int e = 0; e < m.edge_count(); ++e) {
            auto [h, hb] = m.darts_of_edge(e);
            bool sh = in_s[static_cast<size_t>(m.face_of(h))];
            bool shb = in_s[static_cast<size_t>(m.face_of(hb))];
            if (sh == shb) continue;
            Dart from = shb ? h : hb;  // S lies right of `from`
            if (cur.weight[static_cast<size_t>(from)] <= 0)
                throw std::logic_error("minimize: flip would create a negative weight (bug)");
            cur.weight[static_cast<size_t>(from)] -= 1;
            cur.weight[static_cast<size_t>(m.alpha(from))] += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// scores
// ---------------------------------------------------------------------------

long long delta_score(const CombMap& m, const WeightedBiorientation& wbo,
                      const ClosedWalk& dual_cycle) {
    validate_biorientation(m, wbo);
    for (int e = 0; e < m.edge_count(); ++e)
        if (edge_weight(m, wbo, e) != 1)
            throw std::invalid_argument("delta score: plain orientations only");
    long long s = 0;
    for (Dart x : dual_cycle.darts) {
        // the dual dart x runs from the left face to the right face of the
        // primal dart x; the primal edge directed along alpha(x) crosses it
        // left-to-right
        s += wbo.outgoing(m.alpha(x)) ? 1 : -1;
    }
    return s;
}

long long gamma_score(const CombMap& m, const WeightedBiorientation& wbo,
                      const ClosedWalk& cycle) {
    validate_biorientation(m, wbo);
    const int k = cycle.length();
    std::set<int> verts;
    for (Dart h : cycle.darts)
        if (!verts.insert(m.vertex_of(h)).second)
            throw std::invalid_argument("gamma score: cycle must be vertex-simple");
    long long right = 0, left = 0;
    for (int i = 0; i < k; ++i) {
        Dart o = cycle.darts[static_cast<size_t>(i)];
        Dart a = m.alpha(cycle.darts[static_cast<size_t>((i + k - 1) % k)]);
        for (Dart y = m.sigma(o); y != a; y = m.sigma(y)) right += wbo.w(y);
        for (Dart y = m.sigma(a); y != o; y = m.sigma(y)) left += wbo.w(y);
    }
    return right - left;
}

bool is_balanced(const CombMap& m, const WeightedBiorientation& wbo, BalancedMode mode) {
    validate_biorientation(m, wbo);
    if (m.genus() != 1) throw std::invalid_argument("is_balanced: genus-1 maps only");
    if (mode == BalancedMode::basis) {
        // validity class: d/(d-2)-orientation of a toroidal d-angulation
        int d = m.face_degree(0);
        bool ok = wbo.regime == Regime::N;
        for (int f = 0; ok && f < m.face_count(); ++f) ok = m.face_degree(f) == d;
        for (int v = 0; ok && v < m.vertex_count(); ++v) ok = vertex_weight(m, wbo, v) == d;
        for (int e = 0; ok && e < m.edge_count(); ++e) ok = edge_weight(m, wbo, e) == d - 2;
        if (!ok)
            throw std::invalid_argument(
                "is_balanced: basis mode needs a d/(d-2)-orientation of a d-angulation");
        HomologyBasis b = homology_basis(m);
        return gamma_score(m, wbo, b.b1) == 0 && gamma_score(m, wbo, b.b2) == 0;
    }
    HomologyBasis b = homology_basis(m);
    for (const ClosedWalk& c : simple_cycles(m)) {
        if (homology_vector(b, c) == HomologyVector{0, 0}) continue;
        if (gamma_score(m, wbo, c) != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// rightmost walks
// ---------------------------------------------------------------------------

RightmostWalk rightmost_walk(const CombMap& m, const WeightedBiorientation& wbo, Dart start) {
    validate_biorientation(m, wbo);
    if (!wbo.outgoing(start))
        throw std::invalid_argument("rightmost walk: start dart must be outgoing");
    std::vector<int> seen(static_cast<size_t>(m.dart_count()), -1);
    std::vector<Dart> seq;
    Dart h = start;
    while (seen[static_cast<size_t>(h)] == -1) {
        seen[static_cast<size_t>(h)] = static_cast<int>(seq.size());
        seq.push_back(h);
        Dart a = m.alpha(h);
        // first outgoing dart clockwise from the arrival dart (the arrival
        // dart itself is the last candidate)
        Dart y = m.sigma_inv(a);
        int deg = m.vertex_degree(m.vertex_of(a));
        int steps = 0;
        while (!wbo.outgoing(y)) {
            if (++steps >= deg)
                throw std::runtime_error("rightmost walk: vertex with no outgoing dart");
            y = m.sigma_inv(y);
        }
        h = y;
    }
    int cut = seen[static_cast<size_t>(h)];
    RightmostWalk out;
    out.tail.assign(seq.begin(), seq.begin() + cut);
    out.loop = make_closed_walk(m, std::vector<Dart>(seq.begin() + cut, seq.end()));
    return out;
}

bool is_right_biorientation(const FaceRootedMap& frm, const WeightedBiorientation& wbo) {
    const CombMap& m = frm.map;
    validate_biorientation(m, wbo);
    for (int v = 0; v < m.vertex_count(); ++v) {
        bool has_out = false;
        for (Dart h : m.darts_of_vertex(v)) has_out = has_out || wbo.outgoing(h);
        if (!has_out) return false;
    }
    // root-face contour traversed with the root face on its right
    std::vector<Dart> contour = m.darts_of_face(frm.root_face);
    std::vector<Dart> target;
    for (auto it = contour.rbegin(); it != contour.rend(); ++it) target.push_back(m.alpha(*it));
    std::vector<Dart> target_nf = cyclic_normal_form(target);
    for (Dart h = 0; h < m.dart_count(); ++h) {
        if (!wbo.outgoing(h)) continue;
        RightmostWalk w = rightmost_walk(m, wbo, h);
        if (cyclic_normal_form(w.loop.darts) != target_nf) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// brute-force enumeration
// ---------------------------------------------------------------------------

void enumerate_orientations(const CombMap& m, const OrientationSpec& spec,
                            const std::function<bool(const WeightedBiorientation&)>& emit) {
    if (static_cast<int>(spec.alpha_v.size()) != m.vertex_count() ||
        static_cast<int>(spec.beta_e.size()) != m.edge_count())
        throw std::invalid_argument("enumerate: spec size mismatch");
    const bool z = spec.regime == Regime::Z;
    const long long lo = z ? spec.min_dart_weight : std::max(spec.min_dart_weight, 0LL);
    const long long hi = spec.max_dart_weight;
    if (lo > hi) return;
    // per-dart contribution ranges to its vertex (and, in the Z-regime with
    // face targets, to the face on its left)
    const long long vc_min = z ? std::max(lo, 0LL) : lo;
    const long long vc_max = std::max(hi, 0LL);
    const long long fc_min = std::min(lo, 0LL);
    const long long fc_max = 0;

    const int E = m.edge_count();
    std::vector<long long> weight(static_cast<size_t>(m.dart_count()), 0);
    std::vector<long long> vsum(static_cast<size_t>(m.vertex_count()), 0);
    std::vector<int> vrem(static_cast<size_t>(m.vertex_count()), 0);
    for (Dart h = 0; h < m.dart_count(); ++h) ++vrem[static_cast<size_t>(m.vertex_of(h))];
    std::vector<long long> fsum(static_cast<size_t>(m.face_count()), 0);
    std::vector<int> frem(static_cast<size_t>(m.face_count()), 0);
    const bool faces = z && spec.face_target.has_value();
    if (faces)
        for (Dart h = 0; h < m.dart_count(); ++h)
            ++frem[static_cast<size_t>(m.face_of(m.alpha(h)))];

    auto vertex_ok = [&](int v) {
        long long a = spec.alpha_v[static_cast<size_t>(v)];
        long long s = vsum[static_cast<size_t>(v)];
        int r = vrem[static_cast<size_t>(v)];
        return s + r * vc_min <= a && a <= s + r * vc_max;
    };
    auto face_ok = [&](int f) {
        if (!faces) return true;
        long long t = (*spec.face_target)[static_cast<size_t>(f)];
        long long s = fsum[static_cast<size_t>(f)];
        int r = frem[static_cast<size_t>(f)];
        return s + r * fc_min <= t && t <= s + r * fc_max;
    };
    auto place = [&](Dart h, long long w, int dir) {  // dir = +1 apply, -1 undo
        int v = m.vertex_of(h);
        vsum[static_cast<size_t>(v)] += dir * (z ? std::max(w, 0LL) : w);
        vrem[static_cast<size_t>(v)] -= dir;
        weight[static_cast<size_t>(h)] = dir > 0 ? w : 0;
        if (faces) {
            // ingoing weight counts toward the left face of the opposite dart
            int f = m.face_of(m.alpha(h));
            fsum[static_cast<size_t>(f)] += dir * std::min(w, 0LL);
            frem[static_cast<size_t>(f)] -= dir;
        }
    };

    bool stop = false;
    std::function<void(int)> rec = [&](int e) {
        if (stop) return;
        if (e == E) {
            WeightedBiorientation wbo{spec.regime, weight};
            if (!emit(wbo)) stop = true;
            return;
        }
        auto [h, hb] = m.darts_of_edge(e);
        long long beta = spec.beta_e[static_cast<size_t>(e)];
        for (long long w = lo; w <= hi && !stop; ++w) {
            long long wb = beta - w;
            if (wb < lo || wb > hi) continue;
            place(h, w, +1);
            place(hb, wb, +1);
            bool ok = vertex_ok(m.vertex_of(h)) && vertex_ok(m.vertex_of(hb)) &&
                      face_ok(m.face_of(h)) && face_ok(m.face_of(hb));
            if (ok) rec(e + 1);
            place(hb, wb, -1);
            place(h, w, -1);
        }
    };
    rec(0);
}

std::vector<WeightedBiorientation> all_orientations(const CombMap& m,
                                                    const OrientationSpec& spec) {
    std::vector<WeightedBiorientation> out;
    enumerate_orientations(m, spec, [&](const WeightedBiorientation& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

}  // namespace tormaps
