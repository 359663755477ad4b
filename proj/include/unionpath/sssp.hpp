#pragma once

#include "unionpath/stacking.hpp"

namespace unionpath {

namespace detail {
class BoxGrid;
}

inline constexpr int kUnreached = -1;

struct SsspOptions {
    bool verify = false;  // structural assertions throw AssertionFailed
};

// Union of one level with point location.
struct LevelUnion {
    UnionResult u;
    bool empty = true;
    std::shared_ptr<const detail::BoxGrid> edge_grid;  // over u.sub.edges

    bool interior(const Point& p) const;
};

LevelUnion level_union(const Instance& inst, const std::vector<int>& ids);

struct SsspStats {
    int levels = 0;
    int face_tests = 0;       // (face, level) pairs processed
    int max_face_visits = 0;  // over faces, number of levels whose F_j holds the face
    int full_faces = 0;       // faces found inside the level union
    int regions = 0;
    int outside_regions = 0;
    int region_sweeps = 0;
};

struct SsspResult {
    int source = 0;
    std::vector<int> dist;  // kUnreached when unreachable
    std::vector<std::vector<int>> levels;
    std::vector<int> face_visits;  // per face of the simplified stacking
    SsspStats stats;

    nlohmann::json to_json() const;
};

// L_0 and L_1 by direct intersection tests.
std::pair<std::vector<int>, std::vector<int>> initial_levels(const Instance& inst, int src);

// Union faces of the stacking meeting the level union; prev is the level itself.
std::vector<int> faces_intersecting_union(const SimplifiedStacking& ss, const LevelUnion& lu,
                                          const std::vector<int>& prev);

// K_f minus the objects at distance below j.
std::vector<int> candidates_in_face(const std::vector<int>& K, const std::vector<int>& dist, int j);

struct FaceTestStats {
    bool full = false;
    int regions = 0, outside_regions = 0, sweeps = 0;
};

// Candidates of face f meeting union(L_{j-1}) inside f. dist holds the levels
// found so far (L_{j-1} is dist == j-1).
std::vector<int> test_candidates(const Instance& inst, const SimplifiedStacking& ss, int f,
                                 const std::vector<int>& cand, const LevelUnion& lu,
                                 const std::vector<int>& dist, int j, bool verify,
                                 FaceTestStats* stats = nullptr);

SsspResult sssp(const Instance& inst, const SimplifiedStacking& ss, int src, const SsspOptions& opt = {});
SsspResult sssp(const Instance& inst, int src, uint64_t seed, const SsspOptions& opt = {});

}  // namespace unionpath
