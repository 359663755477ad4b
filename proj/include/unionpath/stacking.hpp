#pragma once

#include <functional>

#include "unionpath/subdivision.hpp"

namespace unionpath {

struct Stacking {
    std::vector<int> pi;    // object ids, bottom first
    std::vector<int> rank;  // position of each object in pi
    Subdivision arrangement;
    std::vector<int> cell_top;  // per arrangement face: topmost containing object, -1 outside
    Subdivision sub;            // edges tagged with their arrangement edge
    std::vector<int> owner;     // per face of sub, -1 outside the union

    int union_faces() const;
};

std::vector<int> random_permutation(int n, uint64_t seed);
Stacking build_stacking(const Instance& inst, uint64_t seed);
Stacking build_stacking(const Instance& inst, const std::vector<int>& pi);

struct SimplifiedStacking {
    Subdivision sub;         // edges tagged with their stacking edge
    std::vector<int> owner;  // per face, -1 outside the union
    std::vector<std::vector<int>> K;  // conflict list per face, ascending ids
    std::vector<std::vector<std::pair<int, Point>>> Kstar;  // boundary crossings per face
    std::vector<std::vector<int>> incidence;  // object -> faces whose K contains it
    std::vector<std::vector<int>> vertex_objects;  // per vertex: objects whose boundary passes through it

    int union_faces() const;
    nlohmann::json to_json() const;
};

SimplifiedStacking simplify_stacking(const Stacking& st);

struct PurpleHit {
    int red;   // index into the red pieces
    int blue;  // index into the blue arcs
    Point p;
};

// Crossings between non-crossing red pieces and blue arcs. Blue arcs of one
// object form a group; returning true from on_hit drops the rest of that group.
std::vector<PurpleHit> red_blue_intersections(const std::vector<Piece>& red, const std::vector<Arc>& blue,
                                              const std::function<bool(const PurpleHit&)>& on_hit = {});

void compute_conflict_lists(SimplifiedStacking& ss, const Stacking& st, const Instance& inst);

// Convenience: stacking, simplification and conflict lists in one call.
SimplifiedStacking build_simplified(const Instance& inst, uint64_t seed);

}  // namespace unionpath
