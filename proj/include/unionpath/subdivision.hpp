#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "unionpath/geom.hpp"

namespace unionpath {

// A sub-range of a parent arc between two of its points.
struct Piece {
    Arc arc;
    Point left, right;
    unsigned label = 1;  // bitmask of input sources
    int tag = -1;        // caller payload, kept through construction

    static Piece whole(const Arc& a, unsigned label = 1, int tag = -1) { return {a, a.left, a.right, label, tag}; }
    double y_at(double x) const;
    Point tangent_right(const Point& p) const { return arc.tangent_right(p); }
    Point midpoint() const;
    std::array<double, 4> bbox() const;
    bool contains_x(double x, double eps = 0) const { return x >= left.x - eps && x <= right.x + eps; }
    // +1 when the owning object's interior lies above the piece, -1 below, 0 unknown.
    int interior_side() const;
};

// Crossing points between two pieces that lie in the interior of both.
std::vector<Point> piece_crossings(const Piece& a, const Piece& b);

// Bentley-Ottmann style sweep over x-monotone pieces. Every crossing updates the
// status order; `report` decides which pairs reach `on_hit`. The hit callback
// returns a mask: bit 0 deletes piece a, bit 1 deletes piece b (and, when groups
// are given, every piece of the same group).
class Sweep {
public:
    using Report = std::function<bool(int, int)>;
    using OnHit = std::function<unsigned(int, int, const Point&)>;

    explicit Sweep(const std::vector<Piece>& pieces, std::vector<int> groups = {});
    void run(const Report& report, const OnHit& on_hit);
    int events_processed() const { return events_; }

private:
    struct Impl;
    const std::vector<Piece>& pieces_;
    std::vector<int> groups_;
    int events_ = 0;
};

struct HalfEdge {
    int origin = -1, twin = -1, next = -1, prev = -1, face = -1, edge = -1;
    bool forward = true;  // runs from piece.left to piece.right
};

struct Face {
    int outer = -1;  // half-edge on the outer cycle, -1 for the unbounded face
    std::vector<int> holes;  // one half-edge per hole cycle
};

struct Location {
    enum Kind { InFace, OnEdge, OnVertex } kind = InFace;
    int index = 0;
};

class Subdivision {
public:
    std::vector<Point> vertices;
    std::vector<Piece> edges;
    std::vector<HalfEdge> half_edges;
    std::vector<Face> faces;  // faces[0] is unbounded
    int components = 0;

    int num_faces() const { return int(faces.size()); }
    int bounded_faces() const { return int(faces.size()) - 1; }
    const Point& origin(int h) const { return vertices[half_edges[h].origin]; }
    const Point& dest(int h) const { return vertices[half_edges[half_edges[h].twin].origin]; }
    Point direction(int h) const;  // unit tangent leaving origin(h)
    std::vector<int> cycle(int h) const;
    std::vector<int> boundary(int f) const;  // half-edges of outer and hole cycles
    std::vector<int> outgoing(int v) const;  // sorted counterclockwise
    bool euler_ok() const;

    Location locate(const Point& p) const;
    Location locate_brute(const Point& p) const;
    int face_at(const Point& p) const;  // face, or a neighbouring face when p is on an edge or vertex
    Point face_sample(int f) const;
    // Face directly right of the horizontal ray hit; -1 when nothing is hit.
    int shoot_left(const Point& p, bool brute = false) const;

    nlohmann::json to_json() const;

    struct Grid;
    std::shared_ptr<const Grid> grid;
    std::vector<std::vector<int>> out_sorted;
};

struct BuildOptions {
    bool find_crossings = true;  // pieces may cross; split them at crossings
    bool split_touching = true;  // split pieces at endpoints of others lying on them
};

// The edges build_from_pieces would create, without building faces.
std::vector<Piece> split_pieces(std::vector<Piece> pieces, const BuildOptions& opt = {});
Subdivision build_from_pieces(std::vector<Piece> pieces, const BuildOptions& opt = {});
Subdivision build_arrangement(const std::vector<Arc>& arcs);

struct DualGraph {
    std::vector<int> face_of_node;
    std::vector<int> node_of_face;  // -1 for faces that are not nodes
    std::vector<std::array<int, 3>> edges;  // node, node, subdivision edge
    std::vector<std::vector<std::pair<int, int>>> adj;  // neighbour node, subdivision edge
    int nodes() const { return int(face_of_node.size()); }
    int deg(int v) const { return int(adj[v].size()); }
};

// Nodes are bounded faces (optionally filtered), one dual edge per shared subdivision edge.
DualGraph dual_graph(const Subdivision& s, const std::vector<char>* keep_face = nullptr);

// Set of objects containing each face; faces are reached through edge crossings.
std::vector<std::vector<int>> face_depth_sets(const Subdivision& s);

struct UnionResult {
    Subdivision sub;
    std::vector<char> inside;  // per face of sub
    int union_vertices() const;  // vertices where the boundary switches object
    int inside_components() const;
};

UnionResult union_of_objects(const std::vector<const GeomObject*>& objs);
UnionResult union_of_objects(const Instance& inst, const std::vector<int>& ids);

}  // namespace unionpath
