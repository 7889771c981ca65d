#include "tormaps/comb_map.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace tormaps {

namespace {

// orbit labeling of a permutation; returns number of orbits
int label_orbits(const std::vector<Dart>& perm, std::vector<int>& label) {
    const int n = static_cast<int>(perm.size());
    label.assign(static_cast<size_t>(n), -1);
    int count = 0;
    for (Dart d = 0; d < n; ++d) {
        if (label[static_cast<size_t>(d)] != -1) continue;
        for (Dart x = d; label[static_cast<size_t>(x)] == -1; x = perm[static_cast<size_t>(x)])
            label[static_cast<size_t>(x)] = count;
        ++count;
    }
    return count;
}

bool is_permutation(const std::vector<Dart>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (Dart v : p) {
        if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = 1;
    }
    return true;
}

}  // namespace

CombMap::CombMap(std::vector<Dart> alpha, std::vector<Dart> sigma)
    : n_(static_cast<int>(alpha.size())), alpha_(std::move(alpha)), sigma_(std::move(sigma)) {
    if (n_ == 0 || n_ % 2 != 0 || static_cast<int>(sigma_.size()) != n_)
        throw std::invalid_argument("map: dart count must be positive and even");
    if (!is_permutation(alpha_) || !is_permutation(sigma_))
        throw std::invalid_argument("map: alpha and sigma must be permutations");
    for (Dart d = 0; d < n_; ++d) {
        Dart a = alpha_[static_cast<size_t>(d)];
        if (a == d || alpha_[static_cast<size_t>(a)] != d)
            throw std::invalid_argument("map: alpha must be a fixed-point-free involution");
    }
    sigma_inv_.assign(static_cast<size_t>(n_), 0);
    for (Dart d = 0; d < n_; ++d) sigma_inv_[static_cast<size_t>(sigma_[static_cast<size_t>(d)])] = d;

    n_vertices_ = label_orbits(sigma_, vertex_of_);
    std::vector<Dart> phi_perm(static_cast<size_t>(n_));
    for (Dart d = 0; d < n_; ++d) phi_perm[static_cast<size_t>(d)] = phi(d);
    n_faces_ = label_orbits(phi_perm, face_of_);
    edge_of_.assign(static_cast<size_t>(n_), -1);
    int e = 0;
    for (Dart d = 0; d < n_; ++d) {
        if (edge_of_[static_cast<size_t>(d)] != -1) continue;
        edge_of_[static_cast<size_t>(d)] = e;
        edge_of_[static_cast<size_t>(alpha_[static_cast<size_t>(d)])] = e;
        ++e;
    }

    // connectedness: the group generated by alpha and sigma must be transitive
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::queue<Dart> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        Dart d = q.front();
        q.pop();
        for (Dart nb : {alpha_[static_cast<size_t>(d)], sigma_[static_cast<size_t>(d)]}) {
            if (!seen[static_cast<size_t>(nb)]) {
                seen[static_cast<size_t>(nb)] = 1;
                ++reached;
                q.push(nb);
            }
        }
    }
    if (reached != n_) throw std::invalid_argument("map: not connected");
}

CombMap CombMap::build(int dart_count, const std::vector<std::pair<Dart, Dart>>& alpha_pairs,
                       const std::vector<std::vector<Dart>>& sigma_cycles) {
    std::vector<Dart> alpha(static_cast<size_t>(dart_count), -1);
    for (auto [a, b] : alpha_pairs) {
        if (a < 0 || b < 0 || a >= dart_count || b >= dart_count)
            throw std::invalid_argument("map: alpha pair out of range");
        alpha[static_cast<size_t>(a)] = b;
        alpha[static_cast<size_t>(b)] = a;
    }
    std::vector<Dart> sigma(static_cast<size_t>(dart_count), -1);
    for (const auto& cyc : sigma_cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            Dart from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            if (from < 0 || from >= dart_count)
                throw std::invalid_argument("map: sigma cycle out of range");
            sigma[static_cast<size_t>(from)] = to;
        }
    }
    for (Dart d = 0; d < dart_count; ++d) {
        if (alpha[static_cast<size_t>(d)] == -1 || sigma[static_cast<size_t>(d)] == -1)
            throw std::invalid_argument("map: dart missing from alpha or sigma");
    }
    return CombMap(std::move(alpha), std::move(sigma));
}

int CombMap::genus() const {
    int chi = vertex_count() - edge_count() + face_count();
    if (chi % 2 != 0) throw std::logic_error("map: odd Euler characteristic");
    return (2 - chi) / 2;
}

int CombMap::vertex_degree(int v) const {
    int deg = 0;
    for (Dart d = 0; d < n_; ++d)
        if (vertex_of_[static_cast<size_t>(d)] == v) ++deg;
    return deg;
}

int CombMap::face_degree(int f) const {
    int deg = 0;
    for (Dart d = 0; d < n_; ++d)
        if (face_of_[static_cast<size_t>(d)] == f) ++deg;
    return deg;
}

std::vector<Dart> CombMap::darts_of_vertex(int v) const {
    Dart start = -1;
    for (Dart d = 0; d < n_; ++d)
        if (vertex_of_[static_cast<size_t>(d)] == v) {
            start = d;
            break;
        }
    if (start == -1) throw std::out_of_range("map: no such vertex");
    std::vector<Dart> out;
    Dart x = start;
    do {
        out.push_back(x);
        x = sigma_[static_cast<size_t>(x)];
    } while (x != start);
    return out;
}

std::vector<Dart> CombMap::darts_of_face(int f) const {
    Dart start = -1;
    for (Dart d = 0; d < n_; ++d)
        if (face_of_[static_cast<size_t>(d)] == f) {
            start = d;
            break;
        }
    if (start == -1) throw std::out_of_range("map: no such face");
    std::vector<Dart> out;
    Dart x = start;
    do {
        out.push_back(x);
        x = phi(x);
    } while (x != start);
    return out;
}

std::pair<Dart, Dart> CombMap::darts_of_edge(int e) const {
    for (Dart d = 0; d < n_; ++d)
        if (edge_of_[static_cast<size_t>(d)] == e && d < alpha_[static_cast<size_t>(d)])
            return {d, alpha_[static_cast<size_t>(d)]};
    throw std::out_of_range("map: no such edge");
}

CombMap CombMap::dual() const {
    std::vector<Dart> dual_sigma(static_cast<size_t>(n_));
    for (Dart d = 0; d < n_; ++d) dual_sigma[static_cast<size_t>(d)] = phi(d);
    return CombMap(alpha_, std::move(dual_sigma));
}

std::vector<int> CombMap::canonical_encoding(Dart root) const {
    auto [m, map_to_new] = relabeled(root);
    std::vector<int> enc;
    enc.reserve(static_cast<size_t>(2 * n_));
    for (Dart d = 0; d < n_; ++d) {
        enc.push_back(m.alpha(d));
        enc.push_back(m.sigma(d));
    }
    (void)map_to_new;
    return enc;
}

std::pair<CombMap, std::vector<Dart>> CombMap::relabeled(Dart root) const {
    std::vector<Dart> new_label(static_cast<size_t>(n_), -1);
    std::vector<Dart> old_of;
    old_of.reserve(static_cast<size_t>(n_));
    new_label[static_cast<size_t>(root)] = 0;
    old_of.push_back(root);
    std::queue<Dart> q;
    q.push(root);
    while (!q.empty()) {
        Dart d = q.front();
        q.pop();
        for (Dart nb : {alpha_[static_cast<size_t>(d)], sigma_[static_cast<size_t>(d)]}) {
            if (new_label[static_cast<size_t>(nb)] == -1) {
                new_label[static_cast<size_t>(nb)] = static_cast<Dart>(old_of.size());
                old_of.push_back(nb);
                q.push(nb);
            }
        }
    }
    std::vector<Dart> a(static_cast<size_t>(n_)), s(static_cast<size_t>(n_));
    for (Dart nd = 0; nd < n_; ++nd) {
        Dart od = old_of[static_cast<size_t>(nd)];
        a[static_cast<size_t>(nd)] = new_label[static_cast<size_t>(alpha_[static_cast<size_t>(od)])];
        s[static_cast<size_t>(nd)] = new_label[static_cast<size_t>(sigma_[static_cast<size_t>(od)])];
    }
    return {CombMap(std::move(a), std::move(s)), std::move(new_label)};
}

ClosedWalk make_closed_walk(const CombMap& m, std::vector<Dart> darts) {
    if (darts.empty()) throw std::invalid_argument("closed walk: empty");
    const size_t k = darts.size();
    for (size_t i = 0; i < k; ++i) {
        Dart cur = darts[i], nxt = darts[(i + 1) % k];
        if (cur < 0 || cur >= m.dart_count())
            throw std::invalid_argument("closed walk: dart out of range");
        if (m.head_of(cur) != m.vertex_of(nxt))
            throw std::invalid_argument("closed walk: consecutive darts not incident");
    }
    ClosedWalk w;
    w.darts = std::move(darts);
    std::vector<Dart> sorted = w.darts;
    std::sort(sorted.begin(), sorted.end());
    w.non_repetitive = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return w;
}

ClosedWalk reversed_walk(const CombMap& m, const ClosedWalk& w) {
    std::vector<Dart> rev;
    rev.reserve(w.darts.size());
    for (auto it = w.darts.rbegin(); it != w.darts.rend(); ++it) rev.push_back(m.alpha(*it));
    return make_closed_walk(m, std::move(rev));
}

std::vector<Dart> cyclic_normal_form(const std::vector<Dart>& seq) {
    std::vector<Dart> best = seq;
    std::vector<Dart> rot = seq;
    for (size_t i = 1; i < seq.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
    size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

MapFile read_map_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int dart_count = -1;
    std::vector<std::pair<Dart, Dart>> alpha_pairs;
    std::vector<std::vector<Dart>> sigma_cycles;
    Dart root_face_dart = -1, root_corner = -1;
    std::map<Dart, long long> weight_map;
    bool have_alpha = false, have_sigma = false, have_weights = false;

    while (std::getline(in, line)) {
        std::string body = strip_comment(line);
        std::istringstream ls(body);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "darts:") {
            if (!(ls >> dart_count)) throw std::invalid_argument("map text: bad darts line");
        } else if (key == "alpha:") {
            have_alpha = true;
            std::string tok;
            while (ls >> tok) {
                size_t dash = tok.find('-');
                if (dash == std::string::npos)
                    throw std::invalid_argument("map text: bad alpha pair '" + tok + "'");
                alpha_pairs.emplace_back(std::stoi(tok.substr(0, dash)),
                                         std::stoi(tok.substr(dash + 1)));
            }
        } else if (key == "sigma:") {
            have_sigma = true;
            std::string rest;
            std::getline(ls, rest);
            std::vector<Dart> cur;
            bool open = false;
            std::string num;
            auto flush_num = [&] {
                if (!num.empty()) {
                    cur.push_back(std::stoi(num));
                    num.clear();
                }
            };
            for (char c : rest) {
                if (c == '(') {
                    if (open) throw std::invalid_argument("map text: nested sigma cycle");
                    open = true;
                    cur.clear();
                } else if (c == ')') {
                    if (!open) throw std::invalid_argument("map text: unbalanced sigma cycle");
                    flush_num();
                    sigma_cycles.push_back(cur);
                    open = false;
                } else if (std::isdigit(static_cast<unsigned char>(c))) {
                    num.push_back(c);
                } else if (std::isspace(static_cast<unsigned char>(c))) {
                    flush_num();
                } else {
                    throw std::invalid_argument("map text: bad character in sigma line");
                }
            }
            if (open) throw std::invalid_argument("map text: unterminated sigma cycle");
        } else if (key == "root_face:") {
            if (!(ls >> root_face_dart)) throw std::invalid_argument("map text: bad root_face");
        } else if (key == "root_corner:") {
            if (!(ls >> root_corner)) throw std::invalid_argument("map text: bad root_corner");
        } else if (key == "weights:") {
            have_weights = true;
            std::string tok;
            while (ls >> tok) {
                size_t eq = tok.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("map text: bad weight entry '" + tok + "'");
                Dart d = std::stoi(tok.substr(0, eq));
                long long w = std::stoll(tok.substr(eq + 1));
                if (!weight_map.emplace(d, w).second)
                    throw std::invalid_argument("map text: duplicate weight entry");
            }
        } else {
            throw std::invalid_argument("map text: unknown key '" + key + "'");
        }
    }
    if (dart_count <= 0 || !have_alpha || !have_sigma)
        throw std::invalid_argument("map text: darts/alpha/sigma lines required");

    MapFile out;
    out.map = CombMap::build(dart_count, alpha_pairs, sigma_cycles);
    out.root_face_dart = root_face_dart;
    out.root_corner = root_corner;
    if (root_face_dart != -1 && (root_face_dart < 0 || root_face_dart >= dart_count))
        throw std::invalid_argument("map text: root_face dart out of range");
    if (root_corner != -1 && (root_corner < 0 || root_corner >= dart_count))
        throw std::invalid_argument("map text: root_corner dart out of range");
    if (have_weights) {
        out.weights.assign(static_cast<size_t>(dart_count), 0);
        if (static_cast<int>(weight_map.size()) != dart_count)
            throw std::invalid_argument("map text: weights must cover every dart");
        for (auto [d, w] : weight_map) {
            if (d < 0 || d >= dart_count)
                throw std::invalid_argument("map text: weight dart out of range");
            out.weights[static_cast<size_t>(d)] = w;
        }
    }
    return out;
}

MapFile read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_map_text(buf.str());
}

std::string write_map_text(const CombMap& m, Dart root_face_dart, Dart root_corner,
                           const std::vector<long long>* weights) {
    std::ostringstream out;
    out << "darts: " << m.dart_count() << "\n";
    out << "alpha:";
    for (Dart d = 0; d < m.dart_count(); ++d)
        if (d < m.alpha(d)) out << ' ' << d << '-' << m.alpha(d);
    out << "\n";
    out << "sigma:";
    for (int v = 0; v < m.vertex_count(); ++v) {
        out << " (";
        bool first = true;
        for (Dart d : m.darts_of_vertex(v)) {
            if (!first) out << ' ';
            first = false;
            out << d;
        }
        out << ")";
    }
    out << "\n";
    if (root_face_dart != -1) out << "root_face: " << root_face_dart << "\n";
    if (root_corner != -1) out << "root_corner: " << root_corner << "\n";
    if (weights != nullptr) {
        out << "weights:";
        for (Dart d = 0; d < m.dart_count(); ++d)
            out << ' ' << d << '=' << (*weights)[static_cast<size_t>(d)];
        out << "\n";
    }
    return out.str();
}

}  // namespace tormaps
