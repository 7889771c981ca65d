#include "tormaps/topology.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace tormaps {

namespace {

bool is_vertex_simple(const CombMap& m, const ClosedWalk& w) {
    std::set<int> vs;
    for (Dart h : w.darts)
        if (!vs.insert(m.vertex_of(h)).second) return false;
    return true;
}

}  // namespace

int girth(const CombMap& m) {
    const int V = m.vertex_count();
    // loops
    for (Dart d = 0; d < m.dart_count(); ++d)
        if (m.head_of(d) == m.vertex_of(d)) return 1;
    // parallel edges
    std::set<std::pair<int, int>> seen_pairs;
    bool parallel = false;
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [h, hb] = m.darts_of_edge(e);
        int a = m.vertex_of(h), b = m.vertex_of(hb);
        if (!seen_pairs.insert({std::min(a, b), std::max(a, b)}).second) parallel = true;
    }
    if (parallel) return 2;
    // simple graph: BFS from every vertex
    std::vector<std::vector<int>> adj(static_cast<size_t>(V));
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [h, hb] = m.darts_of_edge(e);
        adj[static_cast<size_t>(m.vertex_of(h))].push_back(m.vertex_of(hb));
        adj[static_cast<size_t>(m.vertex_of(hb))].push_back(m.vertex_of(h));
    }
    int best = std::numeric_limits<int>::max();
    for (int s = 0; s < V; ++s) {
        std::vector<int> dist(static_cast<size_t>(V), -1), par(static_cast<size_t>(V), -1);
        std::queue<int> q;
        dist[static_cast<size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[static_cast<size_t>(u)]) {
                if (dist[static_cast<size_t>(w)] == -1) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                    par[static_cast<size_t>(w)] = u;
                    q.push(w);
                } else if (w != par[static_cast<size_t>(u)]) {
                    best = std::min(best, dist[static_cast<size_t>(u)] + dist[static_cast<size_t>(w)] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max())
        throw std::invalid_argument("girth: acyclic graph");
    return best;
}

// ---------------------------------------------------------------------------
// homology basis
// ---------------------------------------------------------------------------

namespace {

struct TreeData {
    std::vector<int> depth;
    std::vector<Dart> par_dart;  // dart from parent to this node (-1 at root)
};

// path of darts from vertex `from` to vertex `to` inside the spanning tree
std::vector<Dart> tree_path(const CombMap& m, const TreeData& t, int from, int to) {
    std::vector<Dart> up, down;
    int a = from, b = to;
    auto parent_of = [&](int v) { return m.vertex_of(t.par_dart[static_cast<size_t>(v)]); };
    while (t.depth[static_cast<size_t>(a)] > t.depth[static_cast<size_t>(b)]) {
        up.push_back(m.alpha(t.par_dart[static_cast<size_t>(a)]));
        a = parent_of(a);
    }
    while (t.depth[static_cast<size_t>(b)] > t.depth[static_cast<size_t>(a)]) {
        down.push_back(t.par_dart[static_cast<size_t>(b)]);
        b = parent_of(b);
    }
    while (a != b) {
        up.push_back(m.alpha(t.par_dart[static_cast<size_t>(a)]));
        a = parent_of(a);
        down.push_back(t.par_dart[static_cast<size_t>(b)]);
        b = parent_of(b);
    }
    std::reverse(down.begin(), down.end());
    up.insert(up.end(), down.begin(), down.end());
    return up;
}

}  // namespace

HomologyBasis homology_basis(const CombMap& m) {
    if (m.genus() != 1) throw std::invalid_argument("homology basis: map must have genus 1");
    const int V = m.vertex_count(), E = m.edge_count(), F = m.face_count();

    // primal spanning tree (BFS from vertex 0)
    std::vector<char> in_tree(static_cast<size_t>(E), 0);
    TreeData td;
    td.depth.assign(static_cast<size_t>(V), -1);
    td.par_dart.assign(static_cast<size_t>(V), -1);
    {
        std::queue<int> q;
        td.depth[0] = 0;
        q.push(0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (Dart h : m.darts_of_vertex(v)) {
                int w = m.head_of(h);
                if (td.depth[static_cast<size_t>(w)] == -1) {
                    td.depth[static_cast<size_t>(w)] = td.depth[static_cast<size_t>(v)] + 1;
                    td.par_dart[static_cast<size_t>(w)] = h;
                    in_tree[static_cast<size_t>(m.edge_of(h))] = 1;
                    q.push(w);
                }
            }
        }
    }

    // dual spanning tree over faces, avoiding primal tree edges.
    // dpar_dart[f]: dart with face_of == f crossing to the parent face.
    std::vector<int> ddepth(static_cast<size_t>(F), -1);
    std::vector<Dart> dpar_dart(static_cast<size_t>(F), -1);
    std::vector<char> in_cotree(static_cast<size_t>(E), 0);
    {
        std::queue<int> q;
        ddepth[0] = 0;
        q.push(0);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (Dart h : m.darts_of_face(f)) {
                if (in_tree[static_cast<size_t>(m.edge_of(h))]) continue;
                int g = m.face_of(m.alpha(h));
                if (ddepth[static_cast<size_t>(g)] == -1) {
                    ddepth[static_cast<size_t>(g)] = ddepth[static_cast<size_t>(f)] + 1;
                    dpar_dart[static_cast<size_t>(g)] = m.alpha(h);
                    in_cotree[static_cast<size_t>(m.edge_of(h))] = 1;
                    q.push(g);
                }
            }
        }
        for (int f = 0; f < F; ++f)
            if (ddepth[static_cast<size_t>(f)] == -1)
                throw std::logic_error("homology basis: dual cotree incomplete");
    }

    std::vector<int> leftover;
    for (int e = 0; e < E; ++e)
        if (!in_tree[static_cast<size_t>(e)] && !in_cotree[static_cast<size_t>(e)])
            leftover.push_back(e);
    if (leftover.size() != 2)
        throw std::logic_error("homology basis: expected exactly two leftover edges");

    HomologyBasis out;
    out.label.assign(static_cast<size_t>(m.dart_count()), HomologyVector{0, 0});

    ClosedWalk cycles[2] = {{}, {}};
    for (int i = 0; i < 2; ++i) {
        auto [h, hb] = m.darts_of_edge(leftover[static_cast<size_t>(i)]);
        std::vector<Dart> seq{h};
        auto path = tree_path(m, td, m.vertex_of(hb), m.vertex_of(h));
        seq.insert(seq.end(), path.begin(), path.end());
        cycles[i] = make_closed_walk(m, std::move(seq));
        if (!is_vertex_simple(m, cycles[i]))
            throw std::logic_error("homology basis: basis cycle not simple");
    }

    // cocycles: directed dual cycles through each leftover edge, closed by the
    // cotree path between its two faces.  lambda[i][h] is +1 when h crosses
    // the dual cycle with the tail face of the crossing on h's left.
    std::vector<std::array<int, 2>> lambda(static_cast<size_t>(m.dart_count()), {0, 0});
    for (int i = 0; i < 2; ++i) {
        auto [h, hb] = m.darts_of_edge(leftover[static_cast<size_t>(i)]);
        // crossing from face_of(h) to face_of(hb)
        lambda[static_cast<size_t>(h)][static_cast<size_t>(i)] += 1;
        lambda[static_cast<size_t>(hb)][static_cast<size_t>(i)] -= 1;
        // cotree path from face_of(hb) back to face_of(h)
        int a = m.face_of(hb), b = m.face_of(h);
        std::vector<Dart> up, down;  // tail-side darts of each crossing
        auto dparent = [&](int f) { return m.face_of(m.alpha(dpar_dart[static_cast<size_t>(f)])); };
        while (ddepth[static_cast<size_t>(a)] > ddepth[static_cast<size_t>(b)]) {
            up.push_back(dpar_dart[static_cast<size_t>(a)]);
            a = dparent(a);
        }
        while (ddepth[static_cast<size_t>(b)] > ddepth[static_cast<size_t>(a)]) {
            down.push_back(m.alpha(dpar_dart[static_cast<size_t>(b)]));
            b = dparent(b);
        }
        while (a != b) {
            up.push_back(dpar_dart[static_cast<size_t>(a)]);
            a = dparent(a);
            down.push_back(m.alpha(dpar_dart[static_cast<size_t>(b)]));
            b = dparent(b);
        }
        std::reverse(down.begin(), down.end());
        up.insert(up.end(), down.begin(), down.end());
        for (Dart x : up) {
            lambda[static_cast<size_t>(x)][static_cast<size_t>(i)] += 1;
            lambda[static_cast<size_t>(m.alpha(x))][static_cast<size_t>(i)] -= 1;
        }
    }

    // normalize signs so that cycle i evaluates to the i-th unit vector
    int sign[2];
    for (int i = 0; i < 2; ++i) {
        int s = 0;
        for (Dart x : cycles[i].darts) s += lambda[static_cast<size_t>(x)][static_cast<size_t>(i)];
        if (s != 1 && s != -1) throw std::logic_error("homology basis: bad cocycle pairing");
        sign[i] = s;
        int cross = 0;
        for (Dart x : cycles[1 - i].darts)
            cross += lambda[static_cast<size_t>(x)][static_cast<size_t>(i)];
        if (cross != 0) throw std::logic_error("homology basis: cocycles not independent");
    }
    for (Dart d = 0; d < m.dart_count(); ++d)
        out.label[static_cast<size_t>(d)] = {sign[0] * lambda[static_cast<size_t>(d)][0],
                                             sign[1] * lambda[static_cast<size_t>(d)][1]};
    out.b1 = cycles[0];
    out.b2 = cycles[1];

    // every face contour must be null-homologous
    for (int f = 0; f < F; ++f) {
        HomologyVector s{0, 0};
        for (Dart h : m.darts_of_face(f)) {
            s[0] += out.label[static_cast<size_t>(h)][0];
            s[1] += out.label[static_cast<size_t>(h)][1];
        }
        if (s != HomologyVector{0, 0})
            throw std::logic_error("homology basis: face contour not null-homologous");
    }
    if (homology_vector(out, out.b1) != HomologyVector{1, 0} ||
        homology_vector(out, out.b2) != HomologyVector{0, 1})
        throw std::logic_error("homology basis: normalization failed");
    return out;
}

HomologyVector homology_vector(const HomologyBasis& basis, const ClosedWalk& w) {
    HomologyVector s{0, 0};
    for (Dart h : w.darts) {
        s[0] += basis.label[static_cast<size_t>(h)][0];
        s[1] += basis.label[static_cast<size_t>(h)][1];
    }
    return s;
}

// ---------------------------------------------------------------------------
// simple cycles
// ---------------------------------------------------------------------------

std::vector<ClosedWalk> simple_cycles(const CombMap& m) {
    std::vector<ClosedWalk> out;
    std::vector<char> on_path(static_cast<size_t>(m.vertex_count()), 0);
    std::vector<Dart> seq;

    // Cycles are enumerated with their minimum vertex first; since a
    // vertex-simple cycle passes that vertex once, each directed cycle is
    // produced exactly once.
    std::function<void(int, int)> extend = [&](int start_vertex, int at) {
        for (Dart h : m.darts_of_vertex(at)) {
            int w = m.head_of(h);
            if (w == start_vertex) {
                if (seq.size() == 1 && h == m.alpha(seq[0])) continue;  // back-track over one edge
                seq.push_back(h);
                out.push_back(make_closed_walk(m, seq));
                seq.pop_back();
            } else if (w > start_vertex && !on_path[static_cast<size_t>(w)]) {
                seq.push_back(h);
                on_path[static_cast<size_t>(w)] = 1;
                extend(start_vertex, w);
                on_path[static_cast<size_t>(w)] = 0;
                seq.pop_back();
            }
        }
    };
    for (int s = 0; s < m.vertex_count(); ++s) {
        seq.clear();
        extend(s, s);
    }
    std::sort(out.begin(), out.end(), [](const ClosedWalk& a, const ClosedWalk& b) {
        return a.darts.size() != b.darts.size() ? a.darts.size() < b.darts.size()
                                                : a.darts < b.darts;
    });
    return out;
}

ClosedWalk shortest_cycle_in_class(const CombMap& m, const HomologyBasis& basis,
                                   HomologyVector target) {
    if (target == HomologyVector{0, 0})
        throw std::invalid_argument("shortest cycle: target class must be nonzero");
    const ClosedWalk* best = nullptr;
    std::vector<Dart> best_key;
    auto all = simple_cycles(m);
    for (const ClosedWalk& c : all) {
        if (homology_vector(basis, c) != target) continue;
        std::vector<Dart> key = cyclic_normal_form(c.darts);
        if (best == nullptr || c.darts.size() < best->darts.size() ||
            (c.darts.size() == best->darts.size() && key < best_key)) {
            best = &c;
            best_key = std::move(key);
        }
    }
    if (best == nullptr)
        throw std::invalid_argument("shortest cycle: no simple cycle in the given class");
    return make_closed_walk(m, best_key);
}

// ---------------------------------------------------------------------------
// essential girth
// ---------------------------------------------------------------------------

namespace {

// One breadth-first pass in the universal cover from every (v, 0, 0), with
// search radius `cap`.  Returns the best cycle-length candidate found, or
// INT_MAX.  Candidates are valid cycle lengths; when the result is <= 2*cap
// it equals the cover girth.
int cover_bfs_candidates(const CombMap& m, const HomologyBasis& basis, int cap, int best_known) {
    const int V = m.vertex_count();
    const int span = 2 * cap + 3, off = cap + 1;
    auto key_of = [&](int v, int dx, int dy) {
        return (static_cast<long long>(dx + off) * span + (dy + off)) * V + v;
    };
    int best = best_known;
    struct Node {
        int dist = -1;
        long long parent = -1;
        Dart parent_dart = -1;  // dart used to enter, as seen from the parent state
    };
    for (int src = 0; src < V; ++src) {
        std::unordered_map<long long, Node> info;
        std::queue<std::array<int, 3>> q;
        info[key_of(src, 0, 0)] = {0, -1, -1};
        q.push({src, 0, 0});
        while (!q.empty()) {
            auto [v, dx, dy] = q.front();
            q.pop();
            long long ku = key_of(v, dx, dy);
            Node nu = info[ku];
            if (nu.dist >= cap || 2 * nu.dist + 1 >= best) continue;
            for (Dart h : m.darts_of_vertex(v)) {
                auto lab = basis.label[static_cast<size_t>(h)];
                int wx = dx + lab[0], wy = dy + lab[1];
                if (std::abs(wx) > cap + 1 || std::abs(wy) > cap + 1) continue;
                int w = m.head_of(h);
                long long kw = key_of(w, wx, wy);
                auto it = info.find(kw);
                if (it == info.end()) {
                    info[kw] = {nu.dist + 1, ku, h};
                    q.push({w, wx, wy});
                } else {
                    // skip the tree edge back to the parent state
                    if (kw == nu.parent && m.alpha(nu.parent_dart) == h) continue;
                    best = std::min(best, nu.dist + it->second.dist + 1);
                }
            }
        }
    }
    return best;
}

}  // namespace

int essential_girth(const CombMap& m) {
    HomologyBasis basis = homology_basis(m);
    // cover loops and parallel lifted edges
    int best = std::numeric_limits<int>::max();
    for (Dart h = 0; h < m.dart_count(); ++h)
        if (m.head_of(h) == m.vertex_of(h) &&
            basis.label[static_cast<size_t>(h)] == HomologyVector{0, 0})
            return 1;
    std::set<std::array<int, 4>> dir_edges;
    for (Dart h = 0; h < m.dart_count(); ++h) {
        auto lab = basis.label[static_cast<size_t>(h)];
        std::array<int, 4> sig{m.vertex_of(h), m.head_of(h), lab[0], lab[1]};
        if (!dir_edges.insert(sig).second) best = std::min(best, 2);
    }
    for (int cap = 2;; cap *= 2) {
        int cand = cover_bfs_candidates(m, basis, cap, best);
        if (cand <= 2 * cap) return cand;
        if (cap > m.dart_count() + 2)
            throw std::runtime_error("essential girth: no cover cycle within bound");
    }
}

int essential_girth_via_d_angles(const CombMap& m) {
    for (int len = 1; len <= m.dart_count() + 1; ++len)
        if (!d_angles(m, len).empty()) return len;
    throw std::runtime_error("essential girth oracle: no d-angle within bound");
}

// ---------------------------------------------------------------------------
// enclosed region
// ---------------------------------------------------------------------------

namespace {

// Checks that the walk is the boundary contour of the face set R on its
// right: after each dart h, rotating clockwise from alpha(h) must sweep only
// darts whose left face is in R (the corner crossed when stepping from y to
// sigma^{-1}(y) lies in the face left of y) before reaching the next walk
// dart.  This is what distinguishes a walk that actually cuts out the patch
// R from a walk that merely has R-faces adjacent on its right.
bool is_right_boundary(const CombMap& m, const std::vector<Dart>& walk,
                       const std::set<int>& region) {
    std::vector<char> on_walk(static_cast<size_t>(m.dart_count()), 0);
    for (Dart h : walk) on_walk[static_cast<size_t>(h)] = 1;
    const size_t k = walk.size();
    for (size_t i = 0; i < k; ++i) {
        Dart expected = walk[(i + 1) % k];
        // sweep strictly past the arrival ray: the arrival dart itself may be
        // a departure of another passage of the walk through this vertex
        Dart y = m.sigma_inv(m.alpha(walk[i]));
        int guard = m.dart_count() + 1;
        while (!on_walk[static_cast<size_t>(y)]) {
            if (!region.count(m.face_of(y))) return false;
            y = m.sigma_inv(y);
            if (--guard == 0) return false;
        }
        if (y != expected) return false;
    }
    return true;
}

}  // namespace

EnclosedRegion enclosed_region(const CombMap& m, const HomologyBasis& basis,
                               const ClosedWalk& w) {
    if (homology_vector(basis, w) != HomologyVector{0, 0})
        throw std::invalid_argument("enclosed region: walk must be null-homologous");
    std::vector<char> edge_on_walk(static_cast<size_t>(m.edge_count()), 0);
    std::vector<char> vertex_on_walk(static_cast<size_t>(m.vertex_count()), 0);
    for (Dart h : w.darts) {
        edge_on_walk[static_cast<size_t>(m.edge_of(h))] = 1;
        vertex_on_walk[static_cast<size_t>(m.vertex_of(h))] = 1;
        vertex_on_walk[static_cast<size_t>(m.head_of(h))] = 1;
    }

    EnclosedRegion out;
    // flood fill of faces on the right, blocked by walk edges
    std::queue<int> q;
    for (Dart h : w.darts) {
        int f = m.face_of(m.alpha(h));
        if (out.faces.insert(f).second) q.push(f);
    }
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (Dart h : m.darts_of_face(f)) {
            if (edge_on_walk[static_cast<size_t>(m.edge_of(h))]) continue;
            int g = m.face_of(m.alpha(h));
            if (out.faces.insert(g).second) q.push(g);
        }
    }

    for (int e = 0; e < m.edge_count(); ++e) {
        if (edge_on_walk[static_cast<size_t>(e)]) continue;
        auto [h, hb] = m.darts_of_edge(e);
        if (out.faces.count(m.face_of(h)) && out.faces.count(m.face_of(hb)))
            out.inner_edges.insert(e);
    }
    bool pinched = false;
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (vertex_on_walk[static_cast<size_t>(v)]) continue;
        int inside = 0, total = 0;
        for (Dart h : m.darts_of_vertex(v)) {
            ++total;
            if (out.faces.count(m.face_of(h))) ++inside;
        }
        if (inside == total)
            out.inner_vertices.insert(v);
        else if (inside > 0)
            pinched = true;
    }

    // connectivity of the region's faces across inner edges
    bool connected = true;
    if (!out.faces.empty()) {
        std::set<int> comp{*out.faces.begin()};
        std::queue<int> cq;
        cq.push(*out.faces.begin());
        while (!cq.empty()) {
            int f = cq.front();
            cq.pop();
            for (Dart h : m.darts_of_face(f)) {
                if (!out.inner_edges.count(m.edge_of(h))) continue;
                int g = m.face_of(m.alpha(h));
                if (out.faces.count(g) && comp.insert(g).second) cq.push(g);
            }
        }
        connected = comp.size() == out.faces.size();
    }

    long long chi = static_cast<long long>(out.inner_vertices.size()) -
                    static_cast<long long>(out.inner_edges.size()) +
                    static_cast<long long>(out.faces.size());
    out.is_disk = !pinched && connected && !out.faces.empty() && chi == 1 &&
                  is_right_boundary(m, w.darts, out.faces);
    return out;
}

// ---------------------------------------------------------------------------
// d-angles
// ---------------------------------------------------------------------------

std::vector<DAngle> d_angles(const CombMap& m, int d) {
    if (d < 1) throw std::invalid_argument("d-angles: d must be positive");
    HomologyBasis basis = homology_basis(m);
    std::vector<DAngle> out;
    std::set<std::vector<Dart>> seen;
    std::vector<char> used(static_cast<size_t>(m.dart_count()), 0);
    std::vector<Dart> seq;

    // A single dart can carry a homology label of norm > 1 (non-tree darts
    // get the class of their whole fundamental cycle), so the reachability
    // prune must budget the largest label norm per remaining step.
    int max_label_norm = 1;
    for (const auto& lab : basis.label)
        max_label_norm = std::max(max_label_norm, std::abs(lab[0]) + std::abs(lab[1]));

    std::function<void(int, int, int)> extend = [&](int t, int k1, int k2) {
        if (t == d) {
            if (m.head_of(seq.back()) != m.vertex_of(seq.front())) return;
            if (k1 != 0 || k2 != 0) return;
            std::vector<Dart> key = cyclic_normal_form(seq);
            if (!seen.insert(key).second) return;
            ClosedWalk w = make_closed_walk(m, key);
            if (!w.non_repetitive) return;  // cannot happen: darts are distinct
            EnclosedRegion reg = enclosed_region(m, basis, w);
            if (!reg.is_disk) return;
            DAngle a;
            a.walk = std::move(w);
            a.interior_faces = std::move(reg.faces);
            out.push_back(std::move(a));
            return;
        }
        int at = m.head_of(seq.back());
        for (Dart h : m.darts_of_vertex(at)) {
            if (used[static_cast<size_t>(h)]) continue;
            auto lab = basis.label[static_cast<size_t>(h)];
            int n1 = k1 + lab[0], n2 = k2 + lab[1];
            if (std::abs(n1) + std::abs(n2) > (d - t - 1) * max_label_norm) continue;
            seq.push_back(h);
            used[static_cast<size_t>(h)] = 1;
            extend(t + 1, n1, n2);
            used[static_cast<size_t>(h)] = 0;
            seq.pop_back();
        }
    };
    for (Dart h0 = 0; h0 < m.dart_count(); ++h0) {
        auto lab = basis.label[static_cast<size_t>(h0)];
        if (std::abs(lab[0]) + std::abs(lab[1]) > (d - 1) * max_label_norm) continue;
        seq.assign(1, h0);
        used[static_cast<size_t>(h0)] = 1;
        extend(1, lab[0], lab[1]);
        used[static_cast<size_t>(h0)] = 0;
    }

    for (size_t i = 0; i < out.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < out.size() && maximal; ++j) {
            if (i == j) continue;
            const auto& a = out[i].interior_faces;
            const auto& b = out[j].interior_faces;
            if (a.size() < b.size() &&
                std::includes(b.begin(), b.end(), a.begin(), a.end()))
                maximal = false;
        }
        out[i].maximal = maximal;
    }
    return out;
}

DAngle root_d_angle(const FaceRootedMap& frm, int d) {
    auto all = d_angles(frm.map, d);
    const DAngle* found = nullptr;
    for (const DAngle& a : all) {
        if (!a.maximal || !a.interior_faces.count(frm.root_face)) continue;
        if (found != nullptr)
            throw std::runtime_error("root d-angle: not unique");
        found = &a;
    }
    if (found == nullptr) throw std::runtime_error("root d-angle: none found");
    return *found;
}

// ---------------------------------------------------------------------------
// cutting
// ---------------------------------------------------------------------------

namespace {

struct Surgery {
    std::vector<Dart> alpha, sigma;
    std::vector<Dart> to_orig;
    std::vector<Dart> t, u;  // twin darts of cycle dart i / its reverse
};

// Doubles the walk: the left copy keeps the original darts, the right copy
// gets fresh twins.  Works for any closed walk that is the boundary of its
// right-side region (each passage's right arc, swept counterclockwise from
// the departure dart, ends at the passage's own arrival dart).  Does not
// build a CombMap (the result may be disconnected when the walk is
// contractible).
Surgery cut_cycle_raw(const CombMap& m, const ClosedWalk& walk) {
    const int n = m.dart_count(), k = walk.length();
    std::vector<char> is_walk_dart(static_cast<size_t>(n), 0);
    for (Dart h : walk.darts) {
        if (is_walk_dart[static_cast<size_t>(h)])
            throw std::invalid_argument("cut: walk repeats a dart");
        is_walk_dart[static_cast<size_t>(h)] = 1;
    }
    Surgery s;
    s.alpha.resize(static_cast<size_t>(n + 2 * k));
    s.sigma.resize(static_cast<size_t>(n + 2 * k));
    s.to_orig.resize(static_cast<size_t>(n + 2 * k));
    for (Dart d = 0; d < n; ++d) {
        s.alpha[static_cast<size_t>(d)] = m.alpha(d);
        s.sigma[static_cast<size_t>(d)] = m.sigma(d);
        s.to_orig[static_cast<size_t>(d)] = d;
    }
    s.t.resize(static_cast<size_t>(k));
    s.u.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        s.t[static_cast<size_t>(i)] = n + 2 * i;
        s.u[static_cast<size_t>(i)] = n + 2 * i + 1;
        s.alpha[static_cast<size_t>(n + 2 * i)] = n + 2 * i + 1;
        s.alpha[static_cast<size_t>(n + 2 * i + 1)] = n + 2 * i;
        s.to_orig[static_cast<size_t>(n + 2 * i)] = walk.darts[static_cast<size_t>(i)];
        s.to_orig[static_cast<size_t>(n + 2 * i + 1)] = m.alpha(walk.darts[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < k; ++i) {
        Dart o = walk.darts[static_cast<size_t>(i)];
        Dart a = m.alpha(walk.darts[static_cast<size_t>((i + k - 1) % k)]);
        // right copy: the twin of the departing dart, the right-arc darts
        // swept counterclockwise from the departure towards the arrival
        // (their internal sigma links are untouched), the twin of the
        // arriving dart
        Dart u_prev = s.u[static_cast<size_t>((i + k - 1) % k)];
        Dart t_cur = s.t[static_cast<size_t>(i)];
        Dart first = -1, last = -1;
        int guard = n + 1;
        for (Dart y = m.sigma(o); y != a; y = m.sigma(y)) {
            if (is_walk_dart[static_cast<size_t>(y)] ||
                is_walk_dart[static_cast<size_t>(m.alpha(y))])
                throw std::invalid_argument("cut: walk is not a right-side boundary");
            if (--guard == 0) throw std::invalid_argument("cut: malformed walk");
            if (first == -1) first = y;
            last = y;
        }
        s.sigma[static_cast<size_t>(t_cur)] = first == -1 ? u_prev : first;
        if (last != -1) s.sigma[static_cast<size_t>(last)] = u_prev;
        s.sigma[static_cast<size_t>(u_prev)] = t_cur;
        // left copy closes the hole: the departure dart now rotates straight
        // to the arrival dart of the same passage
        s.sigma[static_cast<size_t>(o)] = a;
    }
    return s;
}

// connected components of darts under alpha and sigma
std::vector<int> dart_components(const std::vector<Dart>& alpha, const std::vector<Dart>& sigma) {
    const int n = static_cast<int>(alpha.size());
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int c = 0;
    for (Dart d = 0; d < n; ++d) {
        if (comp[static_cast<size_t>(d)] != -1) continue;
        std::queue<Dart> q;
        comp[static_cast<size_t>(d)] = c;
        q.push(d);
        while (!q.empty()) {
            Dart x = q.front();
            q.pop();
            for (Dart nb : {alpha[static_cast<size_t>(x)], sigma[static_cast<size_t>(x)]}) {
                if (comp[static_cast<size_t>(nb)] == -1) {
                    comp[static_cast<size_t>(nb)] = c;
                    q.push(nb);
                }
            }
        }
        ++c;
    }
    return comp;
}

}  // namespace

Annulus cut_along_cycle(const CombMap& m, const ClosedWalk& cycle) {
    if (!is_vertex_simple(m, cycle))
        throw std::invalid_argument("cut along cycle: cycle must be vertex-simple");
    HomologyBasis basis = homology_basis(m);
    if (homology_vector(basis, cycle) == HomologyVector{0, 0})
        throw std::invalid_argument("cut along cycle: cycle must be non-contractible");
    // cut on the left of the directed cycle, so the face made of the cycle's
    // own darts (their common face after the cut) survives on its left side
    Surgery s = cut_cycle_raw(m, reversed_walk(m, cycle));
    Annulus out{CombMap(s.alpha, s.sigma), s.to_orig, -1, -1};
    if (out.map.genus() != 0) throw std::logic_error("cut along cycle: annulus not planar");
    out.special_face = out.map.face_of(cycle.darts[0]);
    out.outer_face = out.map.face_of(s.t[0]);
    if (out.map.face_degree(out.special_face) != cycle.length() ||
        out.map.face_degree(out.outer_face) != cycle.length())
        throw std::logic_error("cut along cycle: boundary faces malformed");
    return out;
}

namespace {

// vertices in the order first reached by a depth-first traversal that scans
// each vertex's darts counterclockwise starting from the entry dart
std::vector<int> dfs_vertex_order(const CombMap& m, Dart start) {
    std::vector<int> order;
    std::vector<char> visited(static_cast<size_t>(m.vertex_count()), 0);
    std::function<void(Dart)> visit = [&](Dart entry) {
        int v = m.vertex_of(entry);
        visited[static_cast<size_t>(v)] = 1;
        order.push_back(v);
        Dart h = entry;
        do {
            int w = m.head_of(h);
            if (!visited[static_cast<size_t>(w)]) visit(m.alpha(h));
            h = m.sigma(h);
        } while (h != entry);
    };
    visit(start);
    return order;
}

}  // namespace

RootAngleCut cut_at_root_d_angle(const FaceRootedMap& frm, int d) {
    const CombMap& m = frm.map;
    if (m.face_degree(frm.root_face) != d)
        throw std::invalid_argument("root-angle cut: root face degree mismatch");
    Dart r0 = frm.root_corner;
    if (r0 == -1) r0 = m.darts_of_face(frm.root_face).front();
    if (m.face_of(r0) != frm.root_face)
        throw std::invalid_argument("root-angle cut: root corner not on root face");

    DAngle angle = root_d_angle(frm, d);
    const ClosedWalk& W = angle.walk;

    Surgery s = cut_cycle_raw(m, W);
    std::vector<int> comp = dart_components(s.alpha, s.sigma);
    int comp_L = comp[static_cast<size_t>(W.darts[0])];
    int comp_A = comp[static_cast<size_t>(s.t[0])];
    if (comp_L == comp_A) throw std::logic_error("root-angle cut: cut did not separate");

    // The root corner's dart, carried into the interior piece.  The cut walk
    // is the root-face contour traversed with that face on its right, so a
    // root-face dart lying on a walk edge is the reverse of a walk dart and
    // is represented in the interior piece by that dart's u-twin.
    const int k = W.length();
    Dart r0_in_A = r0;
    for (int i = 0; i < k; ++i)
        if (r0 == m.alpha(W.darts[static_cast<size_t>(i)])) {
            r0_in_A = s.u[static_cast<size_t>(i)];
            break;
        }
    if (comp[static_cast<size_t>(r0_in_A)] != comp_A)
        throw std::logic_error("root-angle cut: root corner not in the interior piece");

    auto extract = [&](int c) {
        std::vector<Dart> old_of;
        std::vector<Dart> new_of(s.alpha.size(), -1);
        for (Dart x = 0; x < static_cast<Dart>(s.alpha.size()); ++x)
            if (comp[static_cast<size_t>(x)] == c) {
                new_of[static_cast<size_t>(x)] = static_cast<Dart>(old_of.size());
                old_of.push_back(x);
            }
        std::vector<Dart> a(old_of.size()), g(old_of.size());
        std::vector<Dart> to_torus(old_of.size());
        for (size_t i = 0; i < old_of.size(); ++i) {
            a[i] = new_of[static_cast<size_t>(s.alpha[static_cast<size_t>(old_of[i])])];
            g[i] = new_of[static_cast<size_t>(s.sigma[static_cast<size_t>(old_of[i])])];
            to_torus[i] = s.to_orig[static_cast<size_t>(old_of[i])];
        }
        return std::tuple<CombMap, std::vector<Dart>, std::vector<Dart>>(
            CombMap(std::move(a), std::move(g)), std::move(to_torus), std::move(new_of));
    };

    auto [mapL, L_to_torus, newL] = extract(comp_L);
    auto [mapA, A_to_torus, newA] = extract(comp_A);
    if (mapL.genus() != 1) throw std::logic_error("root-angle cut: left piece not toroidal");
    if (mapA.genus() != 0) throw std::logic_error("root-angle cut: interior piece not planar");

    // canonical vertex: first walk vertex reached by the rooted traversal;
    // when the walk passes it several times, take the smallest departing dart
    std::vector<int> order = dfs_vertex_order(m, r0);
    std::set<int> walk_vertices;
    for (Dart h : W.darts) walk_vertices.insert(m.vertex_of(h));
    Dart canon_out = -1;
    for (int v : order) {
        if (!walk_vertices.count(v)) continue;
        for (Dart h : W.darts)
            if (m.vertex_of(h) == v && (canon_out == -1 || h < canon_out)) canon_out = h;
        break;
    }
    if (canon_out == -1) throw std::logic_error("root-angle cut: canonical vertex not found");

    RootAngleCut out{FaceRootedMap{mapL, 0, -1}, FaceRootedMap{mapA, 0, -1}, -1, -1,
                     std::move(L_to_torus), std::move(A_to_torus)};
    // The new degree-d face of L (filling the removed interior) is the face on
    // the right of the retained walk darts; its corner at the canonical
    // passage is carried by the arrival dart of that passage.
    int j = -1;
    for (int i = 0; i < k; ++i)
        if (W.darts[static_cast<size_t>(i)] == canon_out) j = i;
    if (j == -1) throw std::logic_error("root-angle cut: canonical passage not found");
    Dart corner_orig = m.alpha(W.darts[static_cast<size_t>((j + k - 1) % k)]);
    Dart lc = newL[static_cast<size_t>(corner_orig)];
    out.L.root_corner = lc;
    out.L.root_face = mapL.face_of(lc);
    if (mapL.face_degree(out.L.root_face) != d)
        throw std::logic_error("root-angle cut: marked face of left piece malformed");
    Dart ac = newA[static_cast<size_t>(r0_in_A)];
    out.A.root_corner = ac;
    out.A.root_face = mapA.face_of(ac);
    out.A_outer_face = mapA.face_of(newA[static_cast<size_t>(s.t[0])]);
    if (mapA.face_degree(out.A_outer_face) != d)
        throw std::logic_error("root-angle cut: boundary face of interior piece malformed");
    // Seam alignment: the outer-contour dart whose reverse twin copies the
    // walk dart arriving at the canonical passage, i.e. the dart glued back
    // onto L's root corner.
    Dart u_at_corner = newA[static_cast<size_t>(s.u[static_cast<size_t>((j + k - 1) % k)])];
    out.A_outer_corner = mapA.alpha(u_at_corner);
    if (mapA.face_of(out.A_outer_corner) != out.A_outer_face)
        throw std::logic_error("root-angle cut: seam corner not on the boundary face");
    return out;
}

namespace {

std::optional<FaceRootedMap> glue_attempt(const FaceRootedMap& L, const FaceRootedMap& A,
                                          int A_outer_face, int d, int r) {
    const CombMap& mL = L.map;
    const CombMap& mA = A.map;
    if (L.root_corner == -1 || A.root_corner == -1) return std::nullopt;

    // marked contour of L starting at its root corner
    std::vector<Dart> lcont;
    for (Dart x = L.root_corner;;) {
        lcont.push_back(x);
        x = mL.phi(x);
        if (x == L.root_corner) break;
    }
    std::vector<Dart> ocont = mA.darts_of_face(A_outer_face);
    if (static_cast<int>(lcont.size()) != d || static_cast<int>(ocont.size()) != d)
        return std::nullopt;

    std::vector<Dart> u(static_cast<size_t>(d)), t(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        t[static_cast<size_t>(j)] = ocont[static_cast<size_t>(((r - j) % d + d) % d)];
        u[static_cast<size_t>(j)] = mA.alpha(t[static_cast<size_t>(j)]);
    }
    // The hole contour of L lists the arrival darts of the cut walk, so each
    // u-twin of A is identified with a contour dart and each t-twin with the
    // contour dart's reverse (the walk dart itself).  The hole contour runs
    // through the walk backwards while the outer contour of A runs forwards,
    // hence the opposite indexing directions above.
    std::vector<char> dropped(static_cast<size_t>(mA.dart_count()), 0);
    std::vector<Dart> subst(static_cast<size_t>(mA.dart_count()), -1);
    for (int j = 0; j < d; ++j) {
        dropped[static_cast<size_t>(u[static_cast<size_t>(j)])] = 1;
        dropped[static_cast<size_t>(t[static_cast<size_t>(j)])] = 1;
        subst[static_cast<size_t>(u[static_cast<size_t>(j)])] = lcont[static_cast<size_t>(j)];
        subst[static_cast<size_t>(t[static_cast<size_t>(j)])] =
            mL.alpha(lcont[static_cast<size_t>(j)]);
    }

    const int nL = mL.dart_count();
    std::vector<Dart> new_id(static_cast<size_t>(mA.dart_count()), -1);
    int next = nL;
    for (Dart x = 0; x < mA.dart_count(); ++x)
        if (!dropped[static_cast<size_t>(x)]) new_id[static_cast<size_t>(x)] = next++;
    auto image = [&](Dart x) {  // final id of a kept A dart or the L dart replacing a twin
        return subst[static_cast<size_t>(x)] != -1 ? subst[static_cast<size_t>(x)]
                                                   : new_id[static_cast<size_t>(x)];
    };

    std::vector<Dart> alpha(static_cast<size_t>(next)), sigma(static_cast<size_t>(next));
    for (Dart x = 0; x < nL; ++x) {
        alpha[static_cast<size_t>(x)] = mL.alpha(x);
        sigma[static_cast<size_t>(x)] = mL.sigma(x);
    }
    for (Dart x = 0; x < mA.dart_count(); ++x) {
        if (dropped[static_cast<size_t>(x)]) continue;
        Dart nx = new_id[static_cast<size_t>(x)];
        alpha[static_cast<size_t>(nx)] = image(mA.alpha(x));
        Dart sg = mA.sigma(x);
        if (dropped[static_cast<size_t>(sg)] && subst[static_cast<size_t>(sg)] == -1)
            return std::nullopt;  // rotation runs into a deleted reverse twin
        sigma[static_cast<size_t>(nx)] = image(sg);
    }
    // undo the left closure: each walk dart rotates into the first dart of
    // the re-attached interior sector (or straight to the arrival dart when
    // that sector is empty)
    for (int j = 0; j < d; ++j) {
        Dart tgt = mA.sigma(t[static_cast<size_t>(j)]);
        if (dropped[static_cast<size_t>(tgt)] && subst[static_cast<size_t>(tgt)] == -1)
            return std::nullopt;
        sigma[static_cast<size_t>(mL.alpha(lcont[static_cast<size_t>(j)]))] = image(tgt);
    }

    try {
        CombMap glued(std::move(alpha), std::move(sigma));
        if (glued.genus() != 1) return std::nullopt;
        Dart rc = image(A.root_corner);
        return FaceRootedMap{glued, glued.face_of(rc), rc};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

namespace {

// Exact (non-canonicalized) signature of an interior piece together with its
// seam mark: relabel from the root corner and record the relabeled id of the
// marked outer-contour dart.  Two pieces compare equal iff there is a
// root-corner-preserving isomorphism that also matches the seam mark.
std::vector<int> interior_piece_signature(const FaceRootedMap& A, Dart outer_corner) {
    if (A.root_corner == -1) throw std::invalid_argument("piece signature: corner required");
    auto [rm, to_new] = A.map.relabeled(A.root_corner);
    std::vector<int> enc;
    enc.reserve(static_cast<size_t>(2 * rm.dart_count() + 1));
    for (Dart x = 0; x < rm.dart_count(); ++x) {
        enc.push_back(rm.alpha(x));
        enc.push_back(rm.sigma(x));
    }
    enc.push_back(to_new[static_cast<size_t>(outer_corner)]);
    return enc;
}

}  // namespace

FaceRootedMap glue_root_d_angle(const FaceRootedMap& L, const FaceRootedMap& A,
                                Dart A_outer_corner, int d) {
    if (A_outer_corner < 0 || A_outer_corner >= A.map.dart_count())
        throw std::invalid_argument("glue: seam corner out of range");
    int A_outer_face = A.map.face_of(A_outer_corner);
    // the seam mark pins the rotation: the marked outer dart is the one
    // identified with L's root corner
    std::vector<Dart> ocont = A.map.darts_of_face(A_outer_face);
    int r = -1;
    for (size_t i = 0; i < ocont.size(); ++i)
        if (ocont[i] == A_outer_corner) r = static_cast<int>(i);
    if (r == -1) throw std::logic_error("glue: seam corner not on its contour");
    auto cand = glue_attempt(L, A, A_outer_face, d, r);
    if (!cand) throw std::runtime_error("glue: pieces do not reassemble");
    // verify the reconstruction by cutting it back and comparing the pieces
    // including the seam alignment
    RootAngleCut back = cut_at_root_d_angle(*cand, d);
    if (!face_rooted_isomorphic(back.L, L) ||
        interior_piece_signature(back.A, back.A_outer_corner) !=
            interior_piece_signature(A, A_outer_corner))
        throw std::runtime_error("glue: reconstruction does not cut back to the pieces");
    return *cand;
}

// ---------------------------------------------------------------------------
// rooted isomorphism
// ---------------------------------------------------------------------------

std::vector<int> face_rooted_encoding(const FaceRootedMap& frm, Dart extra_marked_dart) {
    const CombMap& m = frm.map;
    auto encode_from = [&](Dart start) {
        auto [rm, to_new] = m.relabeled(start);
        std::vector<int> enc;
        enc.reserve(static_cast<size_t>(2 * m.dart_count() + 2));
        for (Dart d = 0; d < rm.dart_count(); ++d) {
            enc.push_back(rm.alpha(d));
            enc.push_back(rm.sigma(d));
        }
        enc.push_back(rm.face_of(to_new[static_cast<size_t>(
            m.darts_of_face(frm.root_face).front())]));
        enc.push_back(extra_marked_dart == -1
                          ? -1
                          : rm.face_of(to_new[static_cast<size_t>(extra_marked_dart)]));
        return enc;
    };
    if (frm.root_corner != -1) {
        if (m.face_of(frm.root_corner) != frm.root_face)
            throw std::invalid_argument("rooted encoding: corner not on root face");
        return encode_from(frm.root_corner);
    }
    std::vector<int> best;
    for (Dart h : m.darts_of_face(frm.root_face)) {
        auto enc = encode_from(h);
        if (best.empty() || enc < best) best = std::move(enc);
    }
    return best;
}

std::vector<int> face_rooted_encoding(const FaceRootedMap& frm) {
    return face_rooted_encoding(frm, -1);
}

bool face_rooted_isomorphic(const FaceRootedMap& a, const FaceRootedMap& b) {
    return face_rooted_encoding(a) == face_rooted_encoding(b);
}

}  // namespace tormaps
