#include "tormaps/enumerate.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "tormaps/topology.hpp"

namespace tormaps {

namespace {

bool is_bipartite(const CombMap& m) {
    std::vector<int> color(static_cast<size_t>(m.vertex_count()), -1);
    for (int start = 0; start < m.vertex_count(); ++start) {
        if (color[static_cast<size_t>(start)] >= 0) continue;
        color[static_cast<size_t>(start)] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (Dart d : m.darts_of_vertex(v)) {
                int u = m.head_of(d);
                if (color[static_cast<size_t>(u)] < 0) {
                    color[static_cast<size_t>(u)] = 1 - color[static_cast<size_t>(v)];
                    q.push(u);
                } else if (color[static_cast<size_t>(u)] == color[static_cast<size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Canonically labeled backtracking over (alpha, sigma).
//
// Darts are processed in label order 0, 1, 2, ...; when dart `pos` is
// processed its alpha partner is fixed first, then its sigma image, and any
// fresh dart created along the way receives the next unused label.  This is
// exactly the discovery discipline of CombMap::relabeled (breadth-first from
// dart 0, neighbors in alpha-then-sigma order), so every completed
// assignment is its own canonical encoding and each rooted map is produced
// exactly once.
// ---------------------------------------------------------------------------
class MapGen {
public:
    MapGen(const GenSpec& spec, const std::function<bool(const FaceRootedMap&)>& emit)
        : spec_(spec), emit_(emit) {
        if (spec.max_edges < 1)
            throw std::invalid_argument("generate_maps: max_edges must be >= 1");
        cap_ = 2 * spec.max_edges;
        al_.assign(static_cast<size_t>(cap_), -1);
        si_.assign(static_cast<size_t>(cap_), -1);
        simg_.assign(static_cast<size_t>(cap_), 0);
    }

    void run() {
        n_ = 1;  // dart 0 seeded
        process(0);
    }

private:
    void process(int pos) {
        if (!go_) return;
        if (pos == n_) {
            finish();
            return;
        }
        if (al_[static_cast<size_t>(pos)] == -1) {
            // pair with an existing unpaired dart (necessarily of larger label:
            // smaller labels were processed and are already paired)
            for (int q = pos + 1; q < n_; ++q) {
                if (al_[static_cast<size_t>(q)] != -1) continue;
                al_[static_cast<size_t>(pos)] = q;
                al_[static_cast<size_t>(q)] = pos;
                choose_sigma(pos);
                al_[static_cast<size_t>(pos)] = -1;
                al_[static_cast<size_t>(q)] = -1;
                if (!go_) return;
            }
            if (n_ < cap_) {  // fresh partner gets the next label
                int q = n_++;
                al_[static_cast<size_t>(pos)] = q;
                al_[static_cast<size_t>(q)] = pos;
                choose_sigma(pos);
                al_[static_cast<size_t>(pos)] = -1;
                al_[static_cast<size_t>(q)] = -1;
                --n_;
            }
        } else {
            choose_sigma(pos);
        }
    }

    void choose_sigma(int pos) {
        for (int e = 0; e < n_; ++e) {
            if (simg_[static_cast<size_t>(e)]) continue;
            si_[static_cast<size_t>(pos)] = e;
            simg_[static_cast<size_t>(e)] = 1;
            if (partial_ok()) process(pos + 1);
            si_[static_cast<size_t>(pos)] = -1;
            simg_[static_cast<size_t>(e)] = 0;
            if (!go_) return;
        }
        if (n_ < cap_) {
            int e = n_++;
            si_[static_cast<size_t>(pos)] = e;
            simg_[static_cast<size_t>(e)] = 1;
            if (partial_ok()) process(pos + 1);
            si_[static_cast<size_t>(pos)] = -1;
            simg_[static_cast<size_t>(e)] = 0;
            --n_;
        }
    }

    // prune on the partial assignment: lower bound on the vertex count and
    // the face-degree rule applied to the partial phi orbits
    bool partial_ok() const {
        if (spec_.max_vertices >= 0 || spec_.min_girth >= 2) {
            // partial vertices: components of the (partial) sigma chains.
            // comp[h] labels each dart's chain/cycle.
            std::vector<int> comp(static_cast<size_t>(n_), -1);
            int ncomp = 0, closed = 0;
            bool open = false;
            for (int h = 0; h < n_; ++h) {
                if (simg_[static_cast<size_t>(h)]) continue;  // chain starts only
                open = true;
                int c = ncomp++;
                int x = h;
                while (x != -1 && comp[static_cast<size_t>(x)] == -1) {
                    comp[static_cast<size_t>(x)] = c;
                    x = si_[static_cast<size_t>(x)];
                }
            }
            for (int h = 0; h < n_; ++h) {
                if (comp[static_cast<size_t>(h)] != -1 || si_[static_cast<size_t>(h)] == -1)
                    continue;
                ++closed;  // pure sigma cycle
                int c = ncomp++;
                int x = h;
                while (comp[static_cast<size_t>(x)] == -1) {
                    comp[static_cast<size_t>(x)] = c;
                    x = si_[static_cast<size_t>(x)];
                }
            }
            if (spec_.max_vertices >= 0 && closed + (open ? 1 : 0) > spec_.max_vertices)
                return false;
            if (spec_.min_girth >= 2) {
                // chains only merge as the search deepens, so a loop or a
                // parallel pair visible now stays one in every completion
                std::set<std::pair<int, int>> pairs;
                for (int h = 0; h < n_; ++h) {
                    int a = al_[static_cast<size_t>(h)];
                    if (a < h) continue;  // each edge once, unpaired skipped
                    int ch = comp[static_cast<size_t>(h)];
                    int ca = comp[static_cast<size_t>(a)];
                    if (ch == -1 || ca == -1) continue;
                    if (ch == ca) return false;  // loop
                    if (spec_.min_girth >= 3 &&
                        !pairs.insert({std::min(ch, ca), std::max(ch, ca)}).second)
                        return false;  // parallel edge
                }
            }
        }

        if (spec_.face_rule == FaceRule::any) return true;

        // partial phi: pn[h] = sigma(alpha(h)) where both are known (injective)
        std::vector<int> pn(static_cast<size_t>(n_), -1);
        std::vector<char> hasprev(static_cast<size_t>(n_), 0);
        for (int h = 0; h < n_; ++h) {
            int a = al_[static_cast<size_t>(h)];
            if (a != -1 && si_[static_cast<size_t>(a)] != -1) {
                pn[static_cast<size_t>(h)] = si_[static_cast<size_t>(a)];
                hasprev[static_cast<size_t>(pn[static_cast<size_t>(h)])] = 1;
            }
        }
        std::vector<char> vis(static_cast<size_t>(n_), 0);
        auto rule_ok = [&](int len, bool contains0, bool closed) {
            switch (spec_.face_rule) {
                case FaceRule::all_degree:
                    return closed ? len == spec_.face_param : len <= spec_.face_param;
                case FaceRule::all_even_min:
                    return !closed || (len % 2 == 0 && len >= spec_.face_param);
                case FaceRule::root_degree_min:
                    if (contains0)
                        return closed ? len == spec_.face_param : len <= spec_.face_param;
                    return !closed || len >= spec_.face_param;
                case FaceRule::root_degree:
                    if (contains0)
                        return closed ? len == spec_.face_param : len <= spec_.face_param;
                    return true;
                case FaceRule::any:
                    return true;
            }
            return true;
        };
        for (int h = 0; h < n_; ++h) {  // open chains
            if (hasprev[static_cast<size_t>(h)]) continue;
            int len = 0, x = h;
            bool c0 = false;
            while (x != -1) {
                vis[static_cast<size_t>(x)] = 1;
                if (x == 0) c0 = true;
                ++len;
                x = pn[static_cast<size_t>(x)];
            }
            if (!rule_ok(len, c0, false)) return false;
        }
        for (int h = 0; h < n_; ++h) {  // closed phi cycles
            if (vis[static_cast<size_t>(h)] || pn[static_cast<size_t>(h)] == -1) continue;
            int len = 0, x = h;
            bool c0 = false;
            while (!vis[static_cast<size_t>(x)]) {
                vis[static_cast<size_t>(x)] = 1;
                if (x == 0) c0 = true;
                ++len;
                x = pn[static_cast<size_t>(x)];
            }
            if (!rule_ok(len, c0, true)) return false;
        }
        return true;
    }

    void finish() {
        if (n_ % 2 != 0) return;  // unreachable: alpha pairs darts
        int edges = n_ / 2;
        if (edges < spec_.min_edges || edges > spec_.max_edges) return;

        std::vector<Dart> alpha(al_.begin(), al_.begin() + n_);
        std::vector<Dart> sigma(si_.begin(), si_.begin() + n_);
        CombMap m(std::move(alpha), std::move(sigma));

        if (spec_.max_vertices >= 0 && m.vertex_count() > spec_.max_vertices) return;
        if (spec_.genus >= 0 && m.genus() != spec_.genus) return;
        switch (spec_.face_rule) {
            case FaceRule::any:
                break;
            case FaceRule::all_degree:
                for (int f = 0; f < m.face_count(); ++f)
                    if (m.face_degree(f) != spec_.face_param) return;
                break;
            case FaceRule::all_even_min:
                for (int f = 0; f < m.face_count(); ++f) {
                    int fd = m.face_degree(f);
                    if (fd % 2 != 0 || fd < spec_.face_param) return;
                }
                break;
            case FaceRule::root_degree_min:
                if (m.face_degree(m.face_of(0)) != spec_.face_param) return;
                for (int f = 0; f < m.face_count(); ++f)
                    if (m.face_degree(f) < spec_.face_param) return;
                break;
            case FaceRule::root_degree:
                if (m.face_degree(m.face_of(0)) != spec_.face_param) return;
                break;
        }
        if (spec_.min_girth > 1 && girth(m) < spec_.min_girth) return;
        if (spec_.essential_girth >= 0) {
            if (m.genus() != 1) return;
            if (essential_girth(m) != spec_.essential_girth) return;
        }
        if (spec_.bipartite && !is_bipartite(m)) return;

        FaceRootedMap frm{m, m.face_of(0), 0};
        if (spec_.family != MapFamilyTag::none &&
            !in_map_family(frm, spec_.family, spec_.family_param))
            return;

        if (spec_.face_rooted) {
            // keep the map only when dart 0 is the canonical corner of its
            // face-rooted class (smallest encoding among the root face darts)
            std::vector<int> mine = m.canonical_encoding(0);
            for (Dart h : m.darts_of_face(frm.root_face)) {
                if (h == 0) continue;
                if (m.canonical_encoding(h) < mine) return;
            }
        }

        if (!emit_(frm)) go_ = false;
    }

    GenSpec spec_;
    const std::function<bool(const FaceRootedMap&)>& emit_;
    int cap_ = 0;
    std::vector<int> al_, si_;
    std::vector<char> simg_;
    int n_ = 0;
    bool go_ = true;
};

}  // namespace

void generate_maps(const GenSpec& spec, const std::function<bool(const FaceRootedMap&)>& emit) {
    MapGen gen(spec, emit);
    gen.run();
}

std::vector<FaceRootedMap> all_maps(const GenSpec& spec) {
    std::vector<FaceRootedMap> out;
    generate_maps(spec, [&](const FaceRootedMap& frm) {
        out.push_back(frm);
        return true;
    });
    return out;
}

bool in_map_family(const FaceRootedMap& frm, MapFamilyTag tag, int param) {
    if (tag == MapFamilyTag::none) return true;
    const CombMap& m = frm.map;
    if (m.genus() != 1) return false;
    const bool bip = tag == MapFamilyTag::hatF || tag == MapFamilyTag::hatL;
    if (bip && !is_bipartite(m)) return false;
    if (essential_girth(m) != param) return false;
    if (tag == MapFamilyTag::F || tag == MapFamilyTag::hatF) {
        for (int f = 0; f < m.face_count(); ++f)
            if (m.face_degree(f) != param) return false;
    } else if (m.face_degree(frm.root_face) != param) {
        return false;
    }
    if (tag == MapFamilyTag::M) return true;
    // F / L / hatF / hatL: the maximal d-angle around the root face must be
    // the root-face contour, i.e. enclose the root face only
    DAngle da = root_d_angle(frm, param);
    return da.interior_faces == std::set<int>{frm.root_face};
}

// ---------------------------------------------------------------------------
// Mobile generation: the same canonical backtracking extended with buds,
// colors and weights.  Uniqueness over unrooted mobiles is enforced by a
// canonical-form dedup set (the search finds each mobile once per admissible
// start dart).
// ---------------------------------------------------------------------------
namespace {

class MobGen {
public:
    MobGen(const MobileFamilyCheck& tag, int maxw, int cap,
           const std::function<bool(const Mobile&)>& emit)
        : tag_(tag), maxw_(maxw), cap_(cap), emit_(emit) {
        if (cap < 1) throw std::invalid_argument("generate_mobiles: max_darts must be >= 1");
        if (maxw < 1)
            throw std::invalid_argument("generate_mobiles: max_white_vertices must be >= 1");
        hat_ = tag.family == MobileFamily::hatU || tag.family == MobileFamily::hatUBal ||
               tag.family == MobileFamily::hatV || tag.family == MobileFamily::hatVBal;
        nreg_ = tag.family == MobileFamily::U || tag.family == MobileFamily::UBal ||
                tag.family == MobileFamily::hatU || tag.family == MobileFamily::hatUBal;
        p_ = tag.param;
        edge_wt_ = hat_ ? p_ - 1 : p_ - 2;
        black_lo_ = nreg_ ? 0 : (hat_ ? -1 : -2);
        black_deg_ = hat_ ? 2 * p_ : p_;  // N families only
        al_.assign(static_cast<size_t>(cap_), -2);
        si_.assign(static_cast<size_t>(cap_), -1);
        simg_.assign(static_cast<size_t>(cap_), 0);
        col_.assign(static_cast<size_t>(cap_), 0);  // 1 = black
        wt_.assign(static_cast<size_t>(cap_), 0);
    }

    void run() {
        for (int c = 0; c <= 1; ++c) {
            long long lo, hi;
            weight_range(c, lo, hi);
            for (long long w = lo; w <= hi && go_; ++w) {
                n_ = 1;
                col_[0] = static_cast<char>(c);
                wt_[0] = w;
                process(0);
            }
        }
    }

private:
    // admissible single-dart weights per color (1 = black)
    void weight_range(int c, long long& lo, long long& hi) const {
        if (c == 1) {
            lo = black_lo_;
            hi = 0;
        } else {
            lo = 1;
            // a white dart's edge partner has weight >= black_lo_, and a
            // white vertex weight never exceeds p
            hi = std::min(p_, edge_wt_ - black_lo_);
            if (hi < lo) hi = lo - 1;  // empty range
        }
    }

    void process(int pos) {
        if (!go_) return;
        if (pos == n_) {
            finish();
            return;
        }
        if (al_[static_cast<size_t>(pos)] == -2) {
            if (col_[static_cast<size_t>(pos)] == 1 && wt_[static_cast<size_t>(pos)] == 0) {
                al_[static_cast<size_t>(pos)] = -1;  // bud
                choose_sigma(pos);
                al_[static_cast<size_t>(pos)] = -2;
                if (!go_) return;
            }
            for (int q = pos + 1; q < n_; ++q) {
                if (al_[static_cast<size_t>(q)] != -2) continue;
                if (wt_[static_cast<size_t>(pos)] + wt_[static_cast<size_t>(q)] != edge_wt_)
                    continue;
                al_[static_cast<size_t>(pos)] = q;
                al_[static_cast<size_t>(q)] = pos;
                choose_sigma(pos);
                al_[static_cast<size_t>(pos)] = -2;
                al_[static_cast<size_t>(q)] = -2;
                if (!go_) return;
            }
            if (n_ < cap_) {
                long long qw = edge_wt_ - wt_[static_cast<size_t>(pos)];
                for (int qc = 0; qc <= 1; ++qc) {
                    long long lo, hi;
                    weight_range(qc, lo, hi);
                    if (qw < lo || qw > hi) continue;
                    int q = n_++;
                    col_[static_cast<size_t>(q)] = static_cast<char>(qc);
                    wt_[static_cast<size_t>(q)] = qw;
                    al_[static_cast<size_t>(pos)] = q;
                    al_[static_cast<size_t>(q)] = pos;
                    choose_sigma(pos);
                    al_[static_cast<size_t>(pos)] = -2;
                    al_[static_cast<size_t>(q)] = -2;
                    --n_;
                    if (!go_) return;
                }
            }
        } else {
            choose_sigma(pos);
        }
    }

    void choose_sigma(int pos) {
        for (int e = 0; e < n_; ++e) {
            if (simg_[static_cast<size_t>(e)]) continue;
            if (col_[static_cast<size_t>(e)] != col_[static_cast<size_t>(pos)]) continue;
            si_[static_cast<size_t>(pos)] = e;
            simg_[static_cast<size_t>(e)] = 1;
            if (partial_ok()) process(pos + 1);
            si_[static_cast<size_t>(pos)] = -1;
            simg_[static_cast<size_t>(e)] = 0;
            if (!go_) return;
        }
        if (n_ < cap_) {
            long long lo, hi;
            weight_range(col_[static_cast<size_t>(pos)], lo, hi);
            for (long long w = lo; w <= hi; ++w) {
                int e = n_++;
                col_[static_cast<size_t>(e)] = col_[static_cast<size_t>(pos)];
                wt_[static_cast<size_t>(e)] = w;
                si_[static_cast<size_t>(pos)] = e;
                simg_[static_cast<size_t>(e)] = 1;
                if (partial_ok()) process(pos + 1);
                si_[static_cast<size_t>(pos)] = -1;
                simg_[static_cast<size_t>(e)] = 0;
                --n_;
                if (!go_) return;
            }
        }
    }

    bool partial_ok() const {
        // ---- vertex closures along sigma
        std::vector<char> vis(static_cast<size_t>(n_), 0);
        int whites = 0;
        for (int h = 0; h < n_; ++h) {  // open chains from non-image starts
            if (simg_[static_cast<size_t>(h)]) continue;
            long long s = 0;
            int len = 0, x = h;
            while (x != -1) {
                vis[static_cast<size_t>(x)] = 1;
                s += wt_[static_cast<size_t>(x)];
                ++len;
                x = si_[static_cast<size_t>(x)];
            }
            if (col_[static_cast<size_t>(h)] == 0) {
                if (s > p_) return false;  // white weights are positive
            } else if (nreg_ && len > black_deg_) {
                return false;
            }
        }
        for (int h = 0; h < n_; ++h) {  // closed sigma cycles = finished vertices
            if (vis[static_cast<size_t>(h)] || si_[static_cast<size_t>(h)] == -1) continue;
            long long s = 0;
            int len = 0, x = h;
            while (!vis[static_cast<size_t>(x)]) {
                vis[static_cast<size_t>(x)] = 1;
                s += wt_[static_cast<size_t>(x)];
                ++len;
                x = si_[static_cast<size_t>(x)];
            }
            if (col_[static_cast<size_t>(h)] == 0) {
                if (s != p_) return false;
                if (++whites > maxw_) return false;
            } else if (nreg_) {
                if (len != black_deg_) return false;
            } else if (hat_) {
                if (len % 2 != 0 || s != p_ - len / 2) return false;
            } else {
                if (s != p_ - len) return false;
            }
        }

        // ---- unicellularity: a closed partial face orbit must cover all darts
        std::vector<int> fn(static_cast<size_t>(n_), -1);
        std::vector<char> hasprev(static_cast<size_t>(n_), 0);
        for (int h = 0; h < n_; ++h) {
            int a = al_[static_cast<size_t>(h)];
            int t = -1;
            if (a == -1)
                t = si_[static_cast<size_t>(h)];
            else if (a >= 0)
                t = si_[static_cast<size_t>(a)];
            if (t != -1) {
                fn[static_cast<size_t>(h)] = t;
                hasprev[static_cast<size_t>(t)] = 1;
            }
        }
        std::fill(vis.begin(), vis.end(), 0);
        for (int h = 0; h < n_; ++h) {
            if (hasprev[static_cast<size_t>(h)]) continue;
            int x = h;
            while (x != -1 && !vis[static_cast<size_t>(x)]) {
                vis[static_cast<size_t>(x)] = 1;
                x = fn[static_cast<size_t>(x)];
            }
        }
        for (int h = 0; h < n_; ++h) {
            if (vis[static_cast<size_t>(h)] || fn[static_cast<size_t>(h)] == -1) continue;
            int len = 0, x = h;
            while (!vis[static_cast<size_t>(x)]) {
                vis[static_cast<size_t>(x)] = 1;
                ++len;
                x = fn[static_cast<size_t>(x)];
            }
            if (len < n_) return false;  // a face closed without the other darts
        }
        return true;
    }

    void finish() {
        std::vector<Dart> alpha(static_cast<size_t>(n_));
        for (int h = 0; h < n_; ++h) alpha[static_cast<size_t>(h)] = al_[static_cast<size_t>(h)];
        std::vector<Dart> sigma(si_.begin(), si_.begin() + n_);
        std::vector<MColor> color(static_cast<size_t>(n_));
        for (int h = 0; h < n_; ++h)
            color[static_cast<size_t>(h)] =
                col_[static_cast<size_t>(h)] ? MColor::black : MColor::white;
        std::vector<long long> weight(wt_.begin(), wt_.begin() + n_);

        Mobile m = make_mobile(std::move(alpha), std::move(sigma), std::move(color),
                               std::move(weight));
        if (!check_family(m, tag_)) return;
        int whites = 0;
        for (int v = 0; v < m.n_vertices; ++v)
            if (m.color_of_vertex(v) == MColor::white) ++whites;
        if (whites > maxw_) return;
        std::vector<long long> key = mobile_canonical_form(m);
        if (!seen_.insert(std::move(key)).second) return;
        if (!emit_(m)) go_ = false;
    }

    MobileFamilyCheck tag_;
    int maxw_, cap_;
    const std::function<bool(const Mobile&)>& emit_;
    bool hat_ = false, nreg_ = false;
    long long p_ = 0, edge_wt_ = 0, black_lo_ = 0, black_deg_ = 0;
    std::vector<int> al_, si_;
    std::vector<char> simg_, col_;
    std::vector<long long> wt_;
    int n_ = 0;
    bool go_ = true;
    std::set<std::vector<long long>> seen_;
};

}  // namespace

void generate_mobiles(const MobileFamilyCheck& tag, int max_white_vertices, int max_darts,
                      const std::function<bool(const Mobile&)>& emit) {
    MobGen gen(tag, max_white_vertices, max_darts, emit);
    gen.run();
}

std::vector<Mobile> all_mobiles(const MobileFamilyCheck& tag, int max_white_vertices,
                                int max_darts) {
    std::vector<Mobile> out;
    generate_mobiles(tag, max_white_vertices, max_darts, [&](const Mobile& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Core / kernel decomposition
// ---------------------------------------------------------------------------
KernelDecomposition kernel_decompose(const Mobile& m) {
    if (!m.unicellular() || m.genus() != 1)
        throw std::invalid_argument("kernel_decompose: mobile must be unicellular of genus 1");

    const int n = m.dart_count();
    const int V = m.n_vertices;

    // degree over real darts only
    std::vector<int> deg(static_cast<size_t>(V), 0);
    for (Dart d = 0; d < n; ++d)
        if (!m.is_bud(d)) ++deg[static_cast<size_t>(m.vertex_of[static_cast<size_t>(d)])];

    // iterated leaf pruning
    std::vector<char> removed(static_cast<size_t>(V), 0);
    std::queue<int> q;
    for (int v = 0; v < V; ++v)
        if (deg[static_cast<size_t>(v)] <= 1) q.push(v);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (removed[static_cast<size_t>(v)]) continue;
        removed[static_cast<size_t>(v)] = 1;
        for (Dart d : m.darts_of_vertex(v)) {
            if (m.is_bud(d)) continue;
            int u = m.vertex_of[static_cast<size_t>(m.alpha[static_cast<size_t>(d)])];
            if (!removed[static_cast<size_t>(u)] && --deg[static_cast<size_t>(u)] <= 1)
                q.push(u);
        }
    }

    KernelDecomposition out;
    std::vector<int> core_deg(static_cast<size_t>(V), 0);
    auto is_core_dart = [&](Dart d) {
        if (m.is_bud(d)) return false;
        int a = m.vertex_of[static_cast<size_t>(m.alpha[static_cast<size_t>(d)])];
        int b = m.vertex_of[static_cast<size_t>(d)];
        return !removed[static_cast<size_t>(a)] && !removed[static_cast<size_t>(b)];
    };
    for (Dart d = 0; d < n; ++d)
        if (is_core_dart(d)) ++core_deg[static_cast<size_t>(m.vertex_of[static_cast<size_t>(d)])];
    for (int v = 0; v < V; ++v) {
        if (removed[static_cast<size_t>(v)]) continue;
        out.core_vertices.push_back(v);
        if (core_deg[static_cast<size_t>(v)] < 2)
            throw std::logic_error("kernel_decompose: core vertex of degree < 2");
        if (core_deg[static_cast<size_t>(v)] >= 3) out.kernel_vertices.push_back(v);
    }
    if (out.core_vertices.empty())
        throw std::logic_error("kernel_decompose: empty core on a genus-1 mobile");

    if (out.kernel_vertices.size() == 1) {
        out.type = KernelType::II;
        if (core_deg[static_cast<size_t>(out.kernel_vertices[0])] != 4)
            throw std::logic_error("kernel_decompose: type II kernel vertex degree != 4");
    } else if (out.kernel_vertices.size() == 2) {
        out.type = KernelType::I;
        for (int k : out.kernel_vertices)
            if (core_deg[static_cast<size_t>(k)] != 3)
                throw std::logic_error("kernel_decompose: type I kernel vertex degree != 3");
    } else {
        throw std::logic_error("kernel_decompose: kernel vertex count is not 1 or 2");
    }

    // chains: walk from each core dart at a kernel vertex through degree-2
    // core vertices; keep the direction with the smaller first dart
    std::vector<char> kernel_flag(static_cast<size_t>(V), 0);
    for (int k : out.kernel_vertices) kernel_flag[static_cast<size_t>(k)] = 1;
    for (int k : out.kernel_vertices) {
        for (Dart d : m.darts_of_vertex(k)) {
            if (!is_core_dart(d)) continue;
            std::vector<Dart> path{d};
            Dart cur = d;
            while (true) {
                int head = m.vertex_of[static_cast<size_t>(m.alpha[static_cast<size_t>(cur)])];
                if (kernel_flag[static_cast<size_t>(head)]) break;
                Dart back = m.alpha[static_cast<size_t>(cur)];
                Dart next = -1;
                for (Dart e : m.darts_of_vertex(head))
                    if (is_core_dart(e) && e != back) next = e;
                if (next < 0)
                    throw std::logic_error("kernel_decompose: broken chain interior");
                path.push_back(next);
                cur = next;
            }
            Dart reverse_start = m.alpha[static_cast<size_t>(path.back())];
            if (d < reverse_start) out.chains.push_back(std::move(path));
        }
    }
    if (out.chains.size() != (out.type == KernelType::I ? 3u : 2u))
        throw std::logic_error("kernel_decompose: wrong chain count");
    std::sort(out.chains.begin(), out.chains.end());

    // branch attachment: flood outward from the core over real edges
    out.attachment.assign(static_cast<size_t>(V), -1);
    std::queue<int> bfs;
    for (int v : out.core_vertices) {
        out.attachment[static_cast<size_t>(v)] = v;
        bfs.push(v);
    }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (Dart d : m.darts_of_vertex(v)) {
            if (m.is_bud(d)) continue;
            int u = m.vertex_of[static_cast<size_t>(m.alpha[static_cast<size_t>(d)])];
            if (out.attachment[static_cast<size_t>(u)] == -1) {
                out.attachment[static_cast<size_t>(u)] = out.attachment[static_cast<size_t>(v)];
                bfs.push(u);
            }
        }
    }
    for (int v = 0; v < V; ++v)
        if (out.attachment[static_cast<size_t>(v)] == -1)
            throw std::logic_error("kernel_decompose: vertex unreachable from the core");
    return out;
}

}  // namespace tormaps
