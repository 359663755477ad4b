#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "unionpath/geom.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "unionpath_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& out = "") {
    std::string cmd = std::string(UNIONPATH_CLI) + " " + args + " > " + (out.empty() ? "/dev/null" : path(out)) + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const std::string& name) {
    std::ifstream in(path(name));
    return nlohmann::json::parse(in);
}

std::string slurp(const std::string& name) {
    std::ifstream in(path(name));
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("gen") {
    CHECK(run("gen --preset chain --k 6 --out " + path("ch6.json")) == 0);
    CHECK(unionpath::load_instance(path("ch6.json")).n() == 6);
    CHECK(run("gen --family disks --n 100 --seed 7 --connected", "a.json") == 0);
    CHECK(run("gen --family disks --n 100 --seed 7 --connected", "b.json") == 0);
    CHECK(slurp("a.json") == slurp("b.json"));
    CHECK(unionpath::load_instance(path("a.json")).n() == 100);
    CHECK(run("gen --family cubes --n 5") == 2);
    CHECK(run("gen --preset chain") == 2);
    CHECK(run("gen --preset chain --k 3 --family disks --n 3") == 2);
    CHECK(run("gen --family disks") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("sssp") {
    REQUIRE(run("gen --preset chain --k 6 --out " + path("ch6.json")) == 0);
    CHECK(run("sssp --instance " + path("ch6.json") + " --source 0 --verify", "d.json") == 0);
    auto j = read_json("d.json");
    CHECK(j["schema"] == 1);
    CHECK(j["dist"] == nlohmann::json({0, 1, 2, 3, 4, 5}));
    CHECK(j["verified"] == true);
    CHECK(run("sssp --instance " + path("ch6.json") + " --source 0 --verify --plant-fault") == 1);
    CHECK(run("sssp --instance " + path("ch6.json") + " --source 6") == 2);
    CHECK(run("sssp --instance " + path("missing.json") + " --source 0") == 2);

    REQUIRE(run("gen --preset iso --out " + path("iso.json")) == 0);
    CHECK(run("sssp --instance " + path("iso.json") + " --source 0 --verify", "iso_d.json") == 0);
    CHECK(read_json("iso_d.json")["dist"] == nlohmann::json({0, -1}));

    std::ofstream(path("bad.json")) << "{\"objects\": [";
    CHECK(run("sssp --instance " + path("bad.json") + " --source 0") == 2);
}

TEST_CASE("diameter and cluster") {
    REQUIRE(run("gen --preset chain --k 6 --out " + path("ch6.json")) == 0);
    CHECK(run("diameter --instance " + path("ch6.json") + " --r 3 --verify", "diam.json") == 0);
    int d = read_json("diam.json")["diameter"];
    CHECK(d >= 5);
    CHECK(d <= 7);
    CHECK(run("diameter --instance " + path("ch6.json") + " --r 3 --verify --plant-fault") == 1);
    REQUIRE(run("gen --preset iso --out " + path("iso.json")) == 0);
    CHECK(run("diameter --instance " + path("iso.json")) == 2);

    REQUIRE(run("gen --family polygons --n 40 --seed 3 --connected --out " + path("p40.json")) == 0);
    CHECK(run("cluster --instance " + path("p40.json") + " --r 4 --verify", "cl.json") == 0);
    CHECK(read_json("cl.json")["verified"] == true);
    CHECK(run("cluster --instance " + path("p40.json") + " --r 4 --verify --plant-fault") == 1);
    CHECK(run("cluster --instance " + path("p40.json") + " --r 0") == 2);
}

TEST_CASE("oracle") {
    REQUIRE(run("gen --preset chain --k 6 --out " + path("ch6.json")) == 0);
    CHECK(run("oracle build --instance " + path("ch6.json") + " --r 3 --verify --out " + path("o.json")) == 0);
    CHECK(run("oracle query --oracle " + path("o.json") + " --u 0 --v 5", "q.json") == 0);
    int q = read_json("q.json")["distance"];
    CHECK(q >= 5);
    CHECK(q <= 7);
    CHECK(run("oracle query --oracle " + path("o.json") + " --u 0 --v 5 --verify --instance " + path("ch6.json")) == 0);
    CHECK(run("oracle query --oracle " + path("o.json") + " --u 0 --v 5 --verify --plant-fault --instance " +
              path("ch6.json")) == 1);
    CHECK(run("oracle build --instance " + path("ch6.json") + " --r 3 --verify --plant-fault --out " + path("o2.json")) == 1);
    CHECK(run("oracle query --oracle " + path("o.json") + " --u 0 --v 6") == 2);
    CHECK(run("oracle query --oracle " + path("ch6.json") + " --u 0 --v 1") == 2);
    CHECK(run("oracle") == 2);
}

TEST_CASE("bench") {
    CHECK(run("bench") == 2);
    CHECK(run("bench --suite nope") == 2);
    CHECK(run("bench --suite stacking-scaling --seeds 2 --n-max 512 --threads 2", "s.csv") == 0);
    std::string csv = slurp("s.csv");
    CHECK(csv.rfind("suite,n,seed,metric,value,wall_seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2 * 4);
    CHECK(run("bench --suite diameter-error --instances 4 --n-max 40", "e.csv") == 0);
    std::ifstream in(path("e.csv"));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.find(",error@") == std::string::npos) continue;
        ++rows;
        double err = std::stod(line.substr(line.find(',', line.find(",error@") + 1) + 1));
        CHECK(err >= 0);
        CHECK(err <= 2);
    }
    CHECK(rows >= 4);
}
