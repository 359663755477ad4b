#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "unionpath/diameter.hpp"
#include "unionpath/reference.hpp"

using namespace unionpath;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kBadInput = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(1) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << j.dump(1) << "\n";
}

int verdict(bool ok, const std::string& what) {
    if (ok) return kOk;
    std::cerr << "verification failed: " << what << "\n";
    return kVerifyFailed;
}

struct GenArgs {
    std::string preset, family, out;
    int n = 0, k = 0;
    uint64_t seed = 0;
    bool connected = false;
    double r_min = 0.5, r_max = 1.5, box = 0;
};

int cmd_gen(const GenArgs& a) {
    if (a.preset.empty() == a.family.empty()) throw UsageError("give exactly one of --preset and --family");
    GeneratorSpec spec;
    if (!a.preset.empty()) {
        spec.preset = a.preset;
        if (a.preset == "chain" && a.k < 1) throw UsageError("--preset chain needs --k >= 1");
        spec.k = a.k;
    } else {
        if (a.n < 1) throw UsageError("--family needs --n >= 1");
        if (a.r_min <= 0 || a.r_max < a.r_min) throw UsageError("need 0 < --r-min <= --r-max");
        spec.preset = a.family;
        spec.n = a.n;
        spec.seed = a.seed;
        spec.connected = a.connected;
        spec.r_min = a.r_min;
        spec.r_max = a.r_max;
        spec.box = a.box;
    }
    Instance inst = generate_instance(spec);
    emit(instance_to_json(inst), a.out);
    return kOk;
}

struct RunArgs {
    std::string instance, out;
    uint64_t seed = 0;
    int source = 0, r = 0;
    bool verify = false, plant_fault = false;
};

void check_object(const Instance& inst, int id, const char* flag) {
    if (id < 0 || id >= inst.n()) throw UsageError(std::string(flag) + " out of range");
}

int cmd_sssp(const RunArgs& a) {
    Instance inst = load_instance(a.instance);
    check_object(inst, a.source, "--source");
    SsspResult res = sssp(inst, a.source, a.seed, {a.verify});
    if (a.plant_fault) res.dist[inst.n() - 1] += 1;
    json j = res.to_json();
    j["levels"] = res.stats.levels;
    j["seed"] = a.seed;
    j["stats"] = {{"face_tests", res.stats.face_tests},   {"max_face_visits", res.stats.max_face_visits},
                  {"full_faces", res.stats.full_faces},   {"regions", res.stats.regions},
                  {"outside_regions", res.stats.outside_regions}, {"region_sweeps", res.stats.region_sweeps}};
    bool ok = true;
    if (a.verify) {
        ok = reference::bfs(reference::explicit_graph(inst), a.source) == res.dist;
        j["verified"] = ok;
    }
    emit(j, a.out);
    return a.verify ? verdict(ok, "distances differ from BFS") : kOk;
}

int cmd_diameter(const RunArgs& a) {
    Instance inst = load_instance(a.instance);
    if (a.r < 0) throw UsageError("--r must be positive");
    EccentricityResult res = approx_eccentricities(inst, a.r, a.seed);
    if (a.plant_fault && inst.n() > 0) {
        res.ecc[0] += 3;
        res.diameter = *std::max_element(res.ecc.begin(), res.ecc.end());
    }
    json j = res.to_json();
    j["seed"] = a.seed;
    bool ok = true;
    if (a.verify && inst.n() > 0) {
        auto exact = reference::exact_eccentricities(reference::explicit_graph(inst));
        int diam = *std::max_element(exact.begin(), exact.end());
        ok = res.diameter >= diam && res.diameter <= diam + 2;
        for (int v = 0; v < inst.n(); ++v) ok = ok && res.ecc[v] >= exact[v] && res.ecc[v] <= exact[v] + 2;
        j["exact_diameter"] = diam;
        j["verified"] = ok;
    }
    emit(j, a.out);
    return a.verify ? verdict(ok, "estimate outside [exact, exact + 2]") : kOk;
}

int cmd_cluster(const RunArgs& a) {
    Instance inst = load_instance(a.instance);
    if (a.r < 1) throw UsageError("--r must be at least 1");
    StarClustering sc = star_clustering(inst, a.r, a.seed);
    if (a.plant_fault && !sc.clusters.empty()) sc.clusters[0].centers.clear();
    json j = sc.to_json();
    j["seed"] = a.seed;
    if (!a.verify) {
        emit(j, a.out);
        return kOk;
    }
    ClusteringReport rep = verify_star_clustering(inst, sc, a.r);
    j["verified"] = rep.ok;
    j["problems"] = rep.problems;
    emit(j, a.out);
    return verdict(rep.ok, rep.ok ? "" : rep.problems.front());
}

bool oracle_matches(const Instance& inst, const DistanceOracle& o, bool plant_fault) {
    auto g = reference::explicit_graph(inst);
    for (int u = 0; u < inst.n(); ++u) {
        auto d = reference::bfs(g, u);
        for (int v = 0; v < inst.n(); ++v) {
            int q = o.query(u, v);
            if (plant_fault && u == 0 && v == inst.n() - 1) q += 3;
            if (q < d[v] || q > d[v] + 2) return false;
        }
    }
    return true;
}

int cmd_oracle_build(const RunArgs& a) {
    Instance inst = load_instance(a.instance);
    if (a.r < 0) throw UsageError("--r must be positive");
    DistanceOracle o = build_distance_oracle(inst, a.r, a.seed);
    emit(o.to_json(), a.out);
    std::cerr << "storage cells: " << o.storage_cells() << "\n";
    return a.verify ? verdict(oracle_matches(inst, o, a.plant_fault), "a query is outside [d, d + 2]") : kOk;
}

struct QueryArgs {
    std::string oracle, instance, out;
    int u = 0, v = 0;
    bool verify = false, plant_fault = false;
};

int cmd_oracle_query(const QueryArgs& a) {
    std::ifstream f(a.oracle);
    if (!f) throw UsageError("cannot open " + a.oracle);
    DistanceOracle o = DistanceOracle::from_json(json::parse(f));
    if (a.u < 0 || a.u >= o.n || a.v < 0 || a.v >= o.n) throw UsageError("--u/--v out of range");
    int q = o.query(a.u, a.v);
    if (a.plant_fault) q += 3;
    json j = {{"schema", 1}, {"u", a.u}, {"v", a.v}, {"distance", q}};
    bool ok = true;
    if (a.verify) {
        if (a.instance.empty()) throw UsageError("--verify needs --instance");
        Instance inst = load_instance(a.instance);
        if (inst.n() != o.n) throw UsageError("oracle and instance sizes differ");
        int d = reference::bfs(reference::explicit_graph(inst), a.u)[a.v];
        ok = q >= d && q <= d + 2;
        j["exact"] = d;
        j["verified"] = ok;
    }
    emit(j, a.out);
    return a.verify ? verdict(ok, "answer outside [d, d + 2]") : kOk;
}

struct BenchArgs {
    std::vector<std::string> suites;
    std::string out;
    bench::Config cfg;
};

int cmd_bench(BenchArgs a) {
    if (a.suites.empty()) throw UsageError("no suite given; choose from stacking-scaling, sssp-scaling, clustering-stats, diameter-error");
    for (const auto& s : a.suites)
        if (std::find(bench::suite_names().begin(), bench::suite_names().end(), s) == bench::suite_names().end())
            throw UsageError("unknown suite " + s);
    if (a.cfg.seeds < 1 || a.cfg.instances < 1 || a.cfg.n_min < 0 || a.cfg.n_max < 0 ||
        (a.cfg.n_min && a.cfg.n_max && a.cfg.n_min > a.cfg.n_max))
        throw UsageError("bad size or seed flags");
    if (a.cfg.threads < 1) a.cfg.threads = bench::default_threads();
    std::vector<bench::Row> rows;
    for (const auto& s : a.suites) {
        auto part = bench::run_suite(s, a.cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    if (a.out.empty()) {
        bench::write_csv(std::cout, rows);
    } else {
        std::ofstream f(a.out);
        if (!f) throw UsageError("cannot write " + a.out);
        bench::write_csv(f, rows);
    }
    return kOk;
}

void add_run_flags(CLI::App* c, RunArgs& a, bool with_r, bool with_source) {
    c->add_option("--instance", a.instance, "Instance JSON file")->required();
    c->add_option("--seed", a.seed, "Stacking seed");
    if (with_r) c->add_option("--r", a.r, "Cluster size parameter (0 = default)");
    if (with_source) c->add_option("--source", a.source, "Source object id")->required();
    c->add_option("--out", a.out, "Output file (default stdout)");
    c->add_flag("--verify", a.verify, "Check against the brute-force reference");
    c->add_flag("--plant-fault", a.plant_fault)->group("");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shortest paths, clusterings and diameter on intersection graphs of planar objects"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate an instance");
    g->add_option("--preset", gen.preset, "Named instance")->check(CLI::IsMember({"chain", "pair", "nest", "iso", "clique"}));
    g->add_option("--family", gen.family, "Random family")->check(CLI::IsMember({"disks", "polygons"}));
    g->add_option("--n", gen.n, "Number of objects");
    g->add_option("--k", gen.k, "Chain length");
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_flag("--connected", gen.connected, "Require a connected intersection graph");
    g->add_option("--r-min", gen.r_min, "Smallest radius or scale");
    g->add_option("--r-max", gen.r_max, "Largest radius or scale");
    g->add_option("--box", gen.box, "Side of the placement box (0 = default density)");
    g->add_option("--out", gen.out, "Output file (default stdout)");

    RunArgs ss_args, diam_args, cl_args, ob_args;
    auto* ss = app.add_subcommand("sssp", "Hop distances from one object");
    add_run_flags(ss, ss_args, false, true);
    auto* di = app.add_subcommand("diameter", "Eccentricities and diameter within +2");
    add_run_flags(di, diam_args, true, false);
    auto* cl = app.add_subcommand("cluster", "Star-based r-clustering");
    add_run_flags(cl, cl_args, true, false);
    cl->get_option("--r")->required();

    auto* orc = app.add_subcommand("oracle", "Build or query a +2 distance oracle");
    orc->require_subcommand(1);
    auto* ob = orc->add_subcommand("build", "Build an oracle file");
    add_run_flags(ob, ob_args, true, false);
    ob->get_option("--out")->required();
    QueryArgs q;
    auto* oq = orc->add_subcommand("query", "Answer one query from an oracle file");
    oq->add_option("--oracle", q.oracle, "Oracle file")->required();
    oq->add_option("--u", q.u, "First object")->required();
    oq->add_option("--v", q.v, "Second object")->required();
    oq->add_option("--instance", q.instance, "Instance file, needed by --verify");
    oq->add_option("--out", q.out, "Output file (default stdout)");
    oq->add_flag("--verify", q.verify, "Check against BFS");
    oq->add_flag("--plant-fault", q.plant_fault)->group("");

    BenchArgs b;
    b.cfg.threads = 0;
    auto* be = app.add_subcommand("bench", "Run benchmark suites and write CSV");
    be->add_option("--suite", b.suites, "stacking-scaling, sssp-scaling, clustering-stats or diameter-error");
    be->add_option("--seeds", b.cfg.seeds, "Seeds per size");
    be->add_option("--n-min", b.cfg.n_min, "Smallest n (0 = suite default)");
    be->add_option("--n-max", b.cfg.n_max, "Largest n (0 = suite default)");
    be->add_option("--instances", b.cfg.instances, "Instances for diameter-error");
    be->add_option("--threads", b.cfg.threads, "Worker threads (0 = UNIONPATH_THREADS or all cores)");
    be->add_option("--out", b.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*ss) return cmd_sssp(ss_args);
        if (*di) return cmd_diameter(diam_args);
        if (*cl) return cmd_cluster(cl_args);
        if (*ob) return cmd_oracle_build(ob_args);
        if (*oq) return cmd_oracle_query(q);
        if (*be) return cmd_bench(b);
    } catch (const AssertionFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
