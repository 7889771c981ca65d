#pragma once
//
// Combinatorial maps as rotation systems.
//
// A map is a pair of permutations on darts {0..n-1}: alpha (a fixed-point-free
// involution pairing the two darts of each edge) and sigma (next dart
// counterclockwise around its vertex).  Derived: vertices = sigma-orbits,
// edges = alpha-orbits, faces = orbits of phi = sigma o alpha.
//
// Global convention: traversing a dart keeps its phi-orbit (its face) on the
// LEFT.  Every left/right notion elsewhere in the library derives from this.

#include <optional>
#include <string>
#include <vector>

namespace tormaps {

using Dart = int;

class CombMap {
public:
    // alpha and sigma as full permutation vectors; validates involution,
    // permutation and connectedness.
    CombMap(std::vector<Dart> alpha, std::vector<Dart> sigma);

    // convenience constructor from alpha pairs and sigma cycles
    static CombMap build(int dart_count,
                         const std::vector<std::pair<Dart, Dart>>& alpha_pairs,
                         const std::vector<std::vector<Dart>>& sigma_cycles);

    int dart_count() const { return n_; }
    Dart alpha(Dart d) const { return alpha_[static_cast<size_t>(d)]; }
    Dart sigma(Dart d) const { return sigma_[static_cast<size_t>(d)]; }
    Dart sigma_inv(Dart d) const { return sigma_inv_[static_cast<size_t>(d)]; }
    // face permutation: next dart along the face kept on the left
    Dart phi(Dart d) const { return sigma_[static_cast<size_t>(alpha_[static_cast<size_t>(d)])]; }

    int vertex_of(Dart d) const { return vertex_of_[static_cast<size_t>(d)]; }
    int edge_of(Dart d) const { return edge_of_[static_cast<size_t>(d)]; }
    int face_of(Dart d) const { return face_of_[static_cast<size_t>(d)]; }

    int vertex_count() const { return n_vertices_; }
    int edge_count() const { return n_ / 2; }
    int face_count() const { return n_faces_; }
    int genus() const;

    int vertex_degree(int v) const;
    int face_degree(int f) const;

    // darts of a vertex in sigma order / of a face in phi order, each
    // starting from the smallest dart of the orbit
    std::vector<Dart> darts_of_vertex(int v) const;
    std::vector<Dart> darts_of_face(int f) const;

    // the two darts of an edge (smaller first)
    std::pair<Dart, Dart> darts_of_edge(int e) const;

    // head vertex of a dart (= vertex of the opposite dart)
    int head_of(Dart d) const { return vertex_of(alpha(d)); }

    // dual map: darts reused, dual rotation = phi (faces become vertices)
    CombMap dual() const;

    // Deterministic relabeling by a breadth-first traversal from `root`
    // (root gets label 0, then alpha/sigma discovery order).  Returns the
    // encoding used for isomorphism tests of rooted maps: two rooted maps are
    // isomorphic iff their encodings coincide.
    std::vector<int> canonical_encoding(Dart root) const;
    // the relabeled map together with old->new dart mapping
    std::pair<CombMap, std::vector<Dart>> relabeled(Dart root) const;

    bool operator==(const CombMap& o) const {
        return alpha_ == o.alpha_ && sigma_ == o.sigma_;
    }

private:
    int n_ = 0;
    std::vector<Dart> alpha_, sigma_, sigma_inv_;
    std::vector<int> vertex_of_, edge_of_, face_of_;
    int n_vertices_ = 0, n_faces_ = 0;
};

// A map with a marked face; root_corner (a dart whose vertex carries the
// marked corner and whose face is the root face) is optional and is -1 when
// absent.
struct FaceRootedMap {
    CombMap map;
    int root_face = 0;
    Dart root_corner = -1;
};

// Cyclic sequence of darts; consecutive darts share a vertex (the next dart
// leaves the vertex the previous one arrives at).
struct ClosedWalk {
    std::vector<Dart> darts;
    bool non_repetitive = true;  // no dart occurs twice

    int length() const { return static_cast<int>(darts.size()); }
};

// checks consecutive incidences and closure, and sets non_repetitive
ClosedWalk make_closed_walk(const CombMap& m, std::vector<Dart> darts);
// reverse traversal direction (alpha of each dart, reversed order)
ClosedWalk reversed_walk(const CombMap& m, const ClosedWalk& w);
// lexicographically smallest rotation, for deduplication
std::vector<Dart> cyclic_normal_form(const std::vector<Dart>& seq);

// -------------------------------------------------------------------------
// Text format:
//   darts: <n>
//   alpha: a-b c-d ...
//   sigma: (c1 c2 ...)(...)
//   root_face: <dart>     (optional; identifies the face containing the dart)
//   root_corner: <dart>   (optional)
//   weights: d0=w0 d1=w1 ...   (optional; parsed by orientation readers)
// '#' starts a comment.  The canonical writer sorts cycles by minimum element.
// -------------------------------------------------------------------------
struct MapFile {
    CombMap map;
    Dart root_face_dart = -1;  // a dart of the root face, or -1
    Dart root_corner = -1;
    std::vector<long long> weights;  // empty when absent

    MapFile() : map({1, 0}, {0, 1}) {}
};

MapFile read_map_text(const std::string& text);
MapFile read_map_file(const std::string& path);
std::string write_map_text(const CombMap& m, Dart root_face_dart = -1, Dart root_corner = -1,
                           const std::vector<long long>* weights = nullptr);

}  // namespace tormaps
