#include "bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "unionpath/diameter.hpp"
#include "unionpath/reference.hpp"

namespace unionpath::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<int> doubling(int lo, int hi) {
    std::vector<int> out;
    for (int n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

GeneratorSpec spec_for(const std::string& preset, int n, uint64_t seed, bool connected) {
    GeneratorSpec s;
    s.preset = preset;
    s.n = n;
    s.seed = seed;
    s.connected = connected;
    return s;
}

struct Job {
    int n;
    uint64_t seed;
};

// Runs every job on up to `threads` workers; rows come back in job order.
std::vector<Row> run_jobs(const std::vector<Job>& jobs, int threads,
                          const std::function<std::vector<Row>(const Job&)>& fn) {
    std::vector<std::vector<Row>> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < jobs.size();) {
            try {
                out[i] = fn(jobs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int t = std::max(1, std::min<int>(threads, int(jobs.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<Row> rows;
    for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::vector<Job> grid_jobs(const std::vector<int>& ns, int seeds) {
    std::vector<Job> jobs;
    for (int n : ns)
        for (int s = 0; s < seeds; ++s) jobs.push_back({n, uint64_t(s)});
    return jobs;
}

std::vector<Row> stacking_scaling(const Config& cfg) {
    auto ns = doubling(cfg.n_min ? cfg.n_min : 256, cfg.n_max ? cfg.n_max : 8192);
    return run_jobs(grid_jobs(ns, cfg.seeds), cfg.threads, [](const Job& j) {
        Instance inst = generate_instance(spec_for("disks", j.n, j.seed, false));
        auto t = Clock::now();
        Stacking st = build_stacking(inst, j.seed);
        double t_stack = seconds_since(t);
        t = Clock::now();
        SimplifiedStacking ss = simplify_stacking(st);
        compute_conflict_lists(ss, st, inst);
        double t_conf = seconds_since(t);
        long sum_k = 0;
        size_t max_k = 0;
        for (const auto& k : ss.K) sum_k += long(k.size()), max_k = std::max(max_k, k.size());
        const char* s = "stacking-scaling";
        return std::vector<Row>{{s, j.n, j.seed, "faces", double(st.union_faces()), t_stack},
                                {s, j.n, j.seed, "simplified_faces", double(ss.union_faces()), t_conf},
                                {s, j.n, j.seed, "sum_conflicts", double(sum_k), t_conf},
                                {s, j.n, j.seed, "max_conflicts", double(max_k), t_conf}};
    });
}

std::vector<Row> sssp_scaling(const Config& cfg) {
    auto ns = doubling(cfg.n_min ? cfg.n_min : 256, cfg.n_max ? cfg.n_max : 8192);
    return run_jobs(grid_jobs(ns, cfg.seeds), cfg.threads, [](const Job& j) {
        Instance inst = dense_disks(j.n, j.seed);
        SimplifiedStacking ss = build_simplified(inst, j.seed);
        int src = giant_component_source(inst);
        auto t = Clock::now();
        SsspResult r = sssp(inst, ss, src);
        double wall = seconds_since(t);
        int reached = 0;
        for (int d : r.dist) reached += d != kUnreached;
        const char* s = "sssp-scaling";
        return std::vector<Row>{{s, j.n, j.seed, "sssp_seconds", wall, wall},
                                {s, j.n, j.seed, "reached", double(reached), wall},
                                {s, j.n, j.seed, "levels", double(r.stats.levels), wall},
                                {s, j.n, j.seed, "face_tests", double(r.stats.face_tests), wall}};
    });
}

std::vector<Row> clustering_stats(const Config& cfg) {
    auto ns = doubling(cfg.n_min ? cfg.n_min : 32, cfg.n_max ? cfg.n_max : 512);
    return run_jobs(grid_jobs(ns, cfg.seeds), cfg.threads, [](const Job& j) {
        Instance inst = generate_instance(spec_for(j.seed % 2 ? "polygons" : "disks", j.n, j.seed, true));
        Stacking st = build_stacking(inst, j.seed);
        std::vector<int> rs{2, 4, int(std::ceil(std::sqrt(j.n))), default_diameter_r(j.n)};
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        std::vector<Row> rows;
        for (int r : rs) {
            auto t = Clock::now();
            StarClustering sc = star_clustering(inst, st, r);
            double wall = seconds_since(t);
            bool ok = verify_star_clustering(inst, sc, r).ok;
            double root = std::sqrt(double(r));
            std::string tag = "@r" + std::to_string(r);
            const char* s = "clustering-stats";
            rows.push_back({s, j.n, j.seed, "clusters" + tag, double(sc.clusters.size()), wall});
            rows.push_back({s, j.n, j.seed, "max_centers" + tag, double(sc.max_centers()), wall});
            rows.push_back({s, j.n, j.seed, "max_centers_bound" + tag, 8 * root, wall});
            rows.push_back({s, j.n, j.seed, "total_centers" + tag, double(sc.total_centers()), wall});
            rows.push_back({s, j.n, j.seed, "total_centers_bound" + tag, 8 * (sc.dual_nodes / root + root), wall});
            rows.push_back({s, j.n, j.seed, "valid" + tag, ok ? 1.0 : 0.0, wall});
        }
        return rows;
    });
}

std::vector<Row> diameter_error(const Config& cfg) {
    int lo = cfg.n_min ? cfg.n_min : 3, hi = cfg.n_max ? cfg.n_max : 300;
    std::vector<Job> jobs;
    for (int i = 0; i < cfg.instances; ++i) {
        std::mt19937_64 rng{uint64_t(i)};
        jobs.push_back({lo + int(rng() % uint64_t(hi - lo + 1)), uint64_t(i)});
    }
    return run_jobs(jobs, cfg.threads, [](const Job& j) {
        Instance inst = generate_instance(spec_for(j.seed % 2 ? "polygons" : "disks", j.n, j.seed, true));
        auto exact = reference::exact_eccentricities(reference::explicit_graph(inst));
        int diam = *std::max_element(exact.begin(), exact.end());
        DiameterContext ctx(inst, j.seed);
        std::vector<int> rs{2, default_diameter_r(j.n), int(std::ceil(std::sqrt(j.n)))};
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        std::vector<Row> rows;
        for (int r : rs) {
            auto t = Clock::now();
            EccentricityResult res = approx_eccentricities(ctx, r);
            double wall = seconds_since(t);
            int lo_err = 0, hi_err = 0;
            for (int v = 0; v < j.n; ++v) {
                lo_err = std::min(lo_err, res.ecc[v] - exact[v]);
                hi_err = std::max(hi_err, res.ecc[v] - exact[v]);
            }
            std::string tag = "@r" + std::to_string(r);
            const char* s = "diameter-error";
            rows.push_back({s, j.n, j.seed, "error" + tag, double(res.diameter - diam), wall});
            rows.push_back({s, j.n, j.seed, "min_ecc_error" + tag, double(lo_err), wall});
            rows.push_back({s, j.n, j.seed, "max_ecc_error" + tag, double(hi_err), wall});
        }
        return rows;
    });
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"stacking-scaling", "sssp-scaling", "clustering-stats", "diameter-error"};
    return names;
}

std::vector<Row> run_suite(const std::string& suite, const Config& cfg) {
    if (suite == "stacking-scaling") return stacking_scaling(cfg);
    if (suite == "sssp-scaling") return sssp_scaling(cfg);
    if (suite == "clustering-stats") return clustering_stats(cfg);
    if (suite == "diameter-error") return diameter_error(cfg);
    throw std::invalid_argument("unknown suite " + suite);
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
    out << "suite,n,seed,metric,value,wall_seconds\n";
    char buf[64];
    for (const Row& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.value);
        out << r.suite << ',' << r.n << ',' << r.seed << ',' << r.metric << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.wall);
        out << buf << '\n';
    }
}

int default_threads() {
    int hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("UNIONPATH_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) return std::min(hw, cap);
    }
    return hw;
}

Instance dense_disks(int n, uint64_t seed) {
    GeneratorSpec s = spec_for("disks", n, seed, false);
    s.box = 1.4 * std::sqrt(double(std::max(n, 1)));
    return generate_instance(s);
}

int giant_component_source(const Instance& inst) {
    auto g = reference::explicit_graph(inst);
    std::vector<int> comp(g.n, -1);
    int best = -1, best_size = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = s;
        int size = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++size;
            for (int w : g.adj[v])
                if (comp[w] < 0) comp[w] = s, stack.push_back(w);
        }
        if (size > best_size) best = s, best_size = size;
    }
    return best;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
    mx /= double(x.size());
    my /= double(y.size());
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace unionpath::bench
