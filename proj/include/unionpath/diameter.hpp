#pragma once

#include <map>

#include "unionpath/clustering.hpp"
#include "unionpath/sssp.hpp"

namespace unionpath {

using Pattern = std::vector<int>;

// to_centers[i] = d(v, q_i). Throws NotConnected when a distance is unreached.
Pattern pattern_of(const std::vector<int>& to_centers);

// min_i (d(u, q_i) + P[i])
int pattern_distance(const Pattern& P, const std::vector<int>& to_centers);

int default_diameter_r(int n);  // ceil(n^(1/7))
int default_oracle_r(int n);    // ceil(n^(2/13))

// Full-instance distances from star centers, computed on first use.
class CenterDistances {
public:
    CenterDistances(const Instance& inst, const SimplifiedStacking& ss) : inst_(inst), ss_(ss) {}
    const std::vector<int>& from(int s);
    int runs() const { return int(memo_.size()); }

private:
    const Instance& inst_;
    const SimplifiedStacking& ss_;
    std::map<int, std::vector<int>> memo_;
};

struct ClusterTables {
    std::vector<int> members;                  // ascending
    std::vector<int> Q;                        // star centers ascending, Q[0] = q_0
    std::vector<Pattern> patterns;             // deduplicated, lexicographic
    std::vector<int> pattern_index;            // per object
    std::vector<int> anchor;                   // per object, d(v, q_0)
    std::vector<std::vector<int>> local_dist;  // d in IG[C], indexed by member position
    std::vector<int> far_node;                 // per pattern, u(P, C)
    std::vector<int> far_dist;                 // per pattern, d(P, u(P, C))
    int center_spread = 0;                     // max_i d(q_0, q_i)

    int local_index(int v) const;  // -1 when v is not a member
};

// Builds the tables of one cluster; in-cluster distances come from sssp on the sub-instance.
ClusterTables build_cluster_tables(const Instance& inst, const Cluster& c, CenterDistances& cd, uint64_t seed);

// Delta(v, C)
int cluster_delta(const ClusterTables& t, int v, CenterDistances& cd);

struct PatternStat {
    int cluster = 0;
    int k = 0;          // |S(C)|
    int patterns = 0;   // |P_C|
    int spread = 0;     // max_i d(q_0, q_i)
    double bound = 0;   // (k * spread)^4
};

struct EccentricityResult {
    std::vector<int> ecc;
    int diameter = 0;
    int r = 0;
    StarClustering clustering;
    int center_sssp_runs = 0;  // distinct star centers, whether or not a shared context had them cached
    int local_sssp_runs = 0;
    std::vector<PatternStat> pattern_stats;

    nlohmann::json to_json() const;
};

// Stacking and center distances of one instance, shared across runs with different r.
class DiameterContext {
public:
    DiameterContext(const Instance& inst, uint64_t seed);
    DiameterContext(const DiameterContext&) = delete;
    DiameterContext& operator=(const DiameterContext&) = delete;

    const Instance& inst;
    uint64_t seed;
    Stacking st;
    SimplifiedStacking ss;
    CenterDistances cd;
};

// r <= 0 selects the default
EccentricityResult approx_eccentricities(const Instance& inst, int r, uint64_t seed);
EccentricityResult approx_eccentricities(DiameterContext& ctx, int r);
int approx_diameter(const Instance& inst, int r, uint64_t seed);

struct DistanceOracle {
    struct Table {
        std::vector<int> members;
        std::vector<int> centers;
        std::vector<std::vector<int>> local_dist;
        std::vector<int> pattern_index;  // per object
        std::vector<int> anchor;         // per object
        std::vector<int> local;          // per object, member position or -1
        std::vector<std::vector<int>> pattern_dist;  // [pattern][home slot]
    };

    int n = 0;
    int r = 0;
    std::vector<int> home;       // per object
    std::vector<int> home_slot;  // per object, position among the objects homed at its cluster
    std::vector<Table> tables;
    int max_patterns = 0;

    int query(int u, int v) const;
    long storage_cells() const;
    nlohmann::json to_json() const;
    static DistanceOracle from_json(const nlohmann::json& j);
};

DistanceOracle build_distance_oracle(const Instance& inst, int r, uint64_t seed);
DistanceOracle build_distance_oracle(DiameterContext& ctx, int r);

}  // namespace unionpath
