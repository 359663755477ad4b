#pragma once

#include "unionpath/geom.hpp"

// Brute-force oracles. Only geom is used here so the checks stay independent
// of the sweep, subdivision and stacking code.
namespace unionpath::reference {

inline constexpr int kInf = -1;

struct ExplicitGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    bool has_edge(int u, int v) const;
};

ExplicitGraph explicit_graph(const Instance& inst);
ExplicitGraph induced(const ExplicitGraph& g, const std::vector<int>& nodes);  // nodes renumbered in given order
std::vector<int> bfs(const ExplicitGraph& g, int src);  // kInf when unreachable
std::vector<std::vector<int>> all_pairs(const ExplicitGraph& g);
std::vector<int> exact_eccentricities(const ExplicitGraph& g);  // throws NotConnected
int exact_diameter(const ExplicitGraph& g);
bool is_connected(const ExplicitGraph& g);

// A piece of an arc is an Arc whose endpoints have been moved inward along it.
Arc restrict_arc(const Arc& a, const Point& from, const Point& to);

struct BruteArrangement {
    std::vector<Point> vertices;
    struct Edge {
        int u, v;    // u is the left end
        Arc piece;
        int above, below;  // faces on either side
    };
    std::vector<Edge> edges;
    int faces = 1;  // including the unbounded face 0
};

BruteArrangement brute_arrangement(const std::vector<Arc>& arcs);

struct PurplePoint {
    int red, blue;
    Point p;
};

// All crossings in the interior of both a red and a blue piece.
std::vector<PurplePoint> brute_red_blue(const std::vector<Arc>& red, const std::vector<Arc>& blue);

// Objects whose boundary meets each closed face; a face is its list of boundary pieces.
std::vector<std::vector<int>> brute_conflict_lists(const std::vector<std::vector<Arc>>& faces, const Instance& inst);

// Parity test against a set of closed boundary pieces: 1 inside, 0 outside, -1 on the boundary.
int inside_pieces(const std::vector<Arc>& pieces, const Point& p);

}  // namespace unionpath::reference
