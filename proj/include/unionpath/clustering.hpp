#pragma once

#include <string>

#include "unionpath/stacking.hpp"

namespace unionpath {

// Dual of the stacking's union faces plus one node for every object that owns no face.
struct AugmentedDual {
    std::vector<int> face_of_node;    // stacking face, -1 for an extra node
    std::vector<int> object_of_node;  // owner of the face, or the object itself
    std::vector<std::vector<int>> adj;  // sorted, no repeats
    std::vector<std::vector<int>> V;    // object -> its nodes
    std::vector<Point> rep;             // per object

    int nodes() const { return int(adj.size()); }
    int face_nodes() const;
};

AugmentedDual augment_dual(const Instance& inst, const Stacking& st);

struct RDivision {
    std::vector<std::vector<int>> regions;  // sorted node ids
    std::vector<char> boundary;             // S*

    std::vector<int> region_boundary(int i) const;
    int max_boundary() const;
    long total_boundary() const;  // sum over regions
};

// Nodes are split into parts of at most r nodes; a node with a neighbour in another
// part is a boundary node.
RDivision planar_r_division(const std::vector<std::vector<int>>& adj, int r);

// "" when cover, size and interior properties hold, otherwise the first failure.
std::string check_r_division(const std::vector<std::vector<int>>& adj, const RDivision& rd, int r);

struct Cluster {
    std::vector<int> members;  // ascending object ids
    std::vector<int> centers;  // S(C), ascending
};

struct StarClustering {
    std::vector<Cluster> clusters;  // ordered by smallest member
    int r = 0;
    int dual_nodes = 0;
    int regions = 0;
    int max_region_boundary = 0;
    long total_region_boundary = 0;

    int max_centers() const;
    long total_centers() const;
    nlohmann::json to_json() const;
};

struct ClusteringOptions {
    bool split_components = true;  // false keeps each region's objects as one cluster
};

StarClustering star_clustering(const Instance& inst, int r, uint64_t seed, const ClusteringOptions& opt = {});
StarClustering star_clustering(const Instance& inst, const Stacking& st, int r, const ClusteringOptions& opt = {});

struct ClusteringReport {
    bool ok = true;
    std::vector<std::string> problems;
    int witness_node = -1, witness_cluster = -1;  // first violation of the star property
};

ClusteringReport verify_star_clustering(const Instance& inst, const StarClustering& sc, int r);

}  // namespace unionpath
