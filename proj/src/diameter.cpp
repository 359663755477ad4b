#include "unionpath/diameter.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>

#include "unionpath/reference.hpp"

namespace unionpath {

namespace {

void require_connected(const Instance& inst) {
    if (!reference::is_connected(reference::explicit_graph(inst)))
        throw NotConnected("intersection graph is not connected");
}

int ceil_root(int n, double e) {
    int r = int(std::ceil(std::pow(double(std::max(n, 1)), e) - 1e-9));
    return std::max(r, 1);
}

// d(P, u) with the center distances of u read from the full-instance tables
int pattern_distance_at(const Pattern& P, const std::vector<const std::vector<int>*>& D, int u) {
    int best = INT_MAX;
    for (size_t i = 0; i < P.size(); ++i) best = std::min(best, (*D[i])[u] + P[i]);
    return best;
}

std::vector<const std::vector<int>*> center_rows(const std::vector<int>& Q, CenterDistances& cd) {
    std::vector<const std::vector<int>*> D;
    for (int q : Q) D.push_back(&cd.from(q));
    return D;
}

std::vector<ClusterTables> all_tables(const Instance& inst, const StarClustering& sc, CenterDistances& cd,
                                      uint64_t seed, int* local_runs) {
    std::vector<ClusterTables> out;
    for (const Cluster& c : sc.clusters) {
        out.push_back(build_cluster_tables(inst, c, cd, seed));
        if (local_runs && c.members.size() > 1) *local_runs += int(c.members.size());
    }
    return out;
}

}  // namespace

Pattern pattern_of(const std::vector<int>& to_centers) {
    Pattern P(to_centers.size());
    for (size_t i = 0; i < to_centers.size(); ++i) {
        if (to_centers[i] == kUnreached || to_centers[0] == kUnreached) throw NotConnected("center unreachable");
        P[i] = to_centers[i] - to_centers[0];
    }
    return P;
}

int pattern_distance(const Pattern& P, const std::vector<int>& to_centers) {
    if (P.size() != to_centers.size() || P.empty()) throw std::invalid_argument("pattern length mismatch");
    int best = INT_MAX;
    for (size_t i = 0; i < P.size(); ++i) best = std::min(best, to_centers[i] + P[i]);
    return best;
}

int default_diameter_r(int n) { return ceil_root(n, 1.0 / 7); }
int default_oracle_r(int n) { return ceil_root(n, 2.0 / 13); }

const std::vector<int>& CenterDistances::from(int s) {
    auto it = memo_.find(s);
    if (it == memo_.end()) it = memo_.emplace(s, sssp(inst_, ss_, s).dist).first;
    return it->second;
}

int ClusterTables::local_index(int v) const {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    return it != members.end() && *it == v ? int(it - members.begin()) : -1;
}

ClusterTables build_cluster_tables(const Instance& inst, const Cluster& c, CenterDistances& cd, uint64_t seed) {
    if (c.centers.empty()) throw std::invalid_argument("cluster without star center");
    int n = inst.n();
    ClusterTables t;
    t.members = c.members;
    t.Q = c.centers;
    auto D = center_rows(t.Q, cd);
    int k = int(t.Q.size());

    std::vector<Pattern> per(n);
    std::vector<int> to(k);
    t.anchor.resize(n);
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < k; ++i) to[i] = (*D[i])[v];
        per[v] = pattern_of(to);
        t.anchor[v] = to[0];
    }
    t.patterns = per;
    std::sort(t.patterns.begin(), t.patterns.end());
    t.patterns.erase(std::unique(t.patterns.begin(), t.patterns.end()), t.patterns.end());
    t.pattern_index.resize(n);
    for (int v = 0; v < n; ++v)
        t.pattern_index[v] = int(std::lower_bound(t.patterns.begin(), t.patterns.end(), per[v]) - t.patterns.begin());
    for (int i = 0; i < k; ++i) t.center_spread = std::max(t.center_spread, (*D[i])[t.Q[0]]);

    int m = int(t.members.size());
    if (m == 1) {
        t.local_dist = {{0}};
    } else {
        Instance sub = inst.subset(t.members);
        SimplifiedStacking ss = build_simplified(sub, seed);
        for (int a = 0; a < m; ++a) {
            t.local_dist.push_back(sssp(sub, ss, a).dist);
            if (std::count(t.local_dist.back().begin(), t.local_dist.back().end(), kUnreached))
                throw NotConnected("cluster is not connected");
        }
    }

    for (const Pattern& P : t.patterns) {
        int best = -1, far = -1;
        for (int u : t.members) {
            int d = pattern_distance_at(P, D, u);
            if (d > best) best = d, far = u;
        }
        t.far_node.push_back(far);
        t.far_dist.push_back(best);
    }
    return t;
}

int cluster_delta(const ClusterTables& t, int v, CenterDistances& cd) {
    int pv = t.pattern_index[v];
    int lv = t.local_index(v);
    if (lv < 0) return t.anchor[v] + t.far_dist[pv];
    auto D = center_rows(t.Q, cd);
    const Pattern& P = t.patterns[pv];
    int best = 0;
    for (int a = 0; a < int(t.members.size()); ++a) {
        int via = t.anchor[v] + pattern_distance_at(P, D, t.members[a]);
        best = std::max(best, std::min(t.local_dist[a][lv], via));
    }
    return best;
}

nlohmann::json EccentricityResult::to_json() const {
    nlohmann::json ps = nlohmann::json::array();
    for (const PatternStat& p : pattern_stats)
        ps.push_back({{"cluster", p.cluster}, {"k", p.k}, {"patterns", p.patterns}, {"spread", p.spread}, {"bound", p.bound}});
    return {{"schema", 1},
            {"r", r},
            {"diameter", diameter},
            {"ecc", ecc},
            {"clusters", clustering.clusters.size()},
            {"center_sssp_runs", center_sssp_runs},
            {"local_sssp_runs", local_sssp_runs},
            {"pattern_stats", ps}};
}

DiameterContext::DiameterContext(const Instance& inst, uint64_t seed)
    : inst(inst), seed(seed), st(build_stacking(inst, seed)), ss(simplify_stacking(st)), cd(inst, ss) {
    require_connected(inst);
    compute_conflict_lists(ss, st, inst);
}

EccentricityResult approx_eccentricities(const Instance& inst, int r, uint64_t seed) {
    if (inst.n() == 0) {
        EccentricityResult res;
        res.r = r > 0 ? r : default_diameter_r(0);
        return res;
    }
    DiameterContext ctx(inst, seed);
    return approx_eccentricities(ctx, r);
}

EccentricityResult approx_eccentricities(DiameterContext& ctx, int r) {
    const Instance& inst = ctx.inst;
    int n = inst.n();
    EccentricityResult res;
    res.r = r > 0 ? r : default_diameter_r(n);
    if (n == 0) return res;
    CenterDistances& cd = ctx.cd;
    res.clustering = star_clustering(inst, ctx.st, res.r);
    auto tables = all_tables(inst, res.clustering, cd, ctx.seed, &res.local_sssp_runs);
    res.ecc.assign(n, 0);
    for (int ci = 0; ci < int(tables.size()); ++ci) {
        const ClusterTables& t = tables[ci];
        for (int v = 0; v < n; ++v) res.ecc[v] = std::max(res.ecc[v], cluster_delta(t, v, cd));
        double kd = double(t.Q.size()) * t.center_spread;
        res.pattern_stats.push_back({ci, int(t.Q.size()), int(t.patterns.size()), t.center_spread, kd * kd * kd * kd});
    }
    std::set<int> centers;
    for (const Cluster& c : res.clustering.clusters) centers.insert(c.centers.begin(), c.centers.end());
    res.center_sssp_runs = int(centers.size());
    res.diameter = *std::max_element(res.ecc.begin(), res.ecc.end());
    return res;
}

int approx_diameter(const Instance& inst, int r, uint64_t seed) { return approx_eccentricities(inst, r, seed).diameter; }

int DistanceOracle::query(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("object id out of range");
    const Table& t = tables[home[v]];
    int ans = t.anchor[u] + t.pattern_dist[t.pattern_index[u]][home_slot[v]];
    int lu = t.local[u];
    if (lu >= 0) ans = std::min(ans, t.local_dist[lu][t.local[v]]);
    return ans;
}

long DistanceOracle::storage_cells() const {
    long cells = 2L * n;
    for (const Table& t : tables) {
        cells += long(t.members.size()) * long(t.members.size());
        for (const auto& row : t.pattern_dist) cells += long(row.size());
        cells += 3L * n;
    }
    return cells;
}

nlohmann::json DistanceOracle::to_json() const {
    nlohmann::json ts = nlohmann::json::array();
    for (const Table& t : tables)
        ts.push_back({{"members", t.members},
                      {"centers", t.centers},
                      {"local_dist", t.local_dist},
                      {"pattern_index", t.pattern_index},
                      {"anchor", t.anchor},
                      {"pattern_dist", t.pattern_dist}});
    return {{"schema", 1},
            {"format", "unionpath-oracle"},
            {"version", 1},
            {"n", n},
            {"r", r},
            {"home", home},
            {"home_slot", home_slot},
            {"max_patterns", max_patterns},
            {"tables", ts}};
}

DistanceOracle DistanceOracle::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "unionpath-oracle" || j.value("version", 0) != 1)
        throw std::invalid_argument("not a version 1 oracle file");
    DistanceOracle o;
    o.n = j.at("n").get<int>();
    o.r = j.at("r").get<int>();
    o.home = j.at("home").get<std::vector<int>>();
    o.home_slot = j.at("home_slot").get<std::vector<int>>();
    o.max_patterns = j.value("max_patterns", 0);
    for (const auto& jt : j.at("tables")) {
        Table t;
        jt.at("members").get_to(t.members);
        jt.at("centers").get_to(t.centers);
        jt.at("local_dist").get_to(t.local_dist);
        jt.at("pattern_index").get_to(t.pattern_index);
        jt.at("anchor").get_to(t.anchor);
        jt.at("pattern_dist").get_to(t.pattern_dist);
        t.local.assign(o.n, -1);
        for (int i = 0; i < int(t.members.size()); ++i) t.local.at(t.members[i]) = i;
        o.tables.push_back(std::move(t));
    }
    if (int(o.home.size()) != o.n || int(o.home_slot.size()) != o.n) throw std::invalid_argument("oracle tables have wrong size");
    return o;
}

DistanceOracle build_distance_oracle(const Instance& inst, int r, uint64_t seed) {
    if (inst.n() == 0) {
        DistanceOracle o;
        o.r = r > 0 ? r : default_oracle_r(0);
        return o;
    }
    DiameterContext ctx(inst, seed);
    return build_distance_oracle(ctx, r);
}

DistanceOracle build_distance_oracle(DiameterContext& ctx, int r) {
    const Instance& inst = ctx.inst;
    int n = inst.n();
    DistanceOracle o;
    o.n = n;
    o.r = r > 0 ? r : default_oracle_r(n);
    if (n == 0) return o;
    CenterDistances& cd = ctx.cd;
    StarClustering sc = star_clustering(inst, ctx.st, o.r);
    auto tables = all_tables(inst, sc, cd, ctx.seed, nullptr);

    o.home.assign(n, -1);
    o.home_slot.assign(n, -1);
    std::vector<std::vector<int>> homed(tables.size());
    for (int ci = 0; ci < int(tables.size()); ++ci)
        for (int v : tables[ci].members)
            if (o.home[v] < 0) {
                o.home[v] = ci;
                o.home_slot[v] = int(homed[ci].size());
                homed[ci].push_back(v);
            }
    for (int ci = 0; ci < int(tables.size()); ++ci) {
        ClusterTables& ct = tables[ci];
        DistanceOracle::Table t;
        t.members = ct.members;
        t.centers = ct.Q;
        t.local_dist = std::move(ct.local_dist);
        t.pattern_index = std::move(ct.pattern_index);
        t.anchor = std::move(ct.anchor);
        t.local.assign(n, -1);
        for (int i = 0; i < int(t.members.size()); ++i) t.local[t.members[i]] = i;
        auto D = center_rows(ct.Q, cd);
        for (const Pattern& P : ct.patterns) {
            std::vector<int> row;
            for (int u : homed[ci]) row.push_back(pattern_distance_at(P, D, u));
            t.pattern_dist.push_back(std::move(row));
        }
        o.max_patterns = std::max(o.max_patterns, int(ct.patterns.size()));
        o.tables.push_back(std::move(t));
    }
    return o;
}

}  // namespace unionpath
