#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "unionpath/clustering.hpp"

using namespace unionpath;
using namespace unionpath::testing;

namespace {

std::vector<std::vector<int>> path_graph(int n) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i + 1 < n; ++i) adj[i].push_back(i + 1), adj[i + 1].push_back(i);
    return adj;
}

std::vector<std::vector<int>> grid_graph(int w, int h) {
    std::vector<std::vector<int>> adj(w * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int v = y * w + x;
            if (x + 1 < w) adj[v].push_back(v + 1), adj[v + 1].push_back(v);
            if (y + 1 < h) adj[v].push_back(v + w), adj[v + w].push_back(v);
        }
    return adj;
}

int count_edges(const std::vector<std::vector<int>>& adj) {
    int m = 0;
    for (const auto& a : adj) m += int(a.size());
    return m / 2;
}

}  // namespace

TEST_CASE("augmented dual") {
    SUBCASE("pair") {
        Instance inst = preset_pair();
        AugmentedDual ad = augment_dual(inst, build_stacking(inst, std::vector<int>{0, 1}));
        CHECK(ad.nodes() == 2);
        CHECK(ad.face_nodes() == 2);
        CHECK(count_edges(ad.adj) == 1);
        CHECK(ad.V[0].size() == 1);
        CHECK(ad.V[1].size() == 1);
    }
    SUBCASE("nest with the inner disk at the bottom") {
        Instance inst = preset_nest();
        Stacking st = build_stacking(inst, std::vector<int>{1, 0});
        AugmentedDual ad = augment_dual(inst, st);
        CHECK(ad.face_nodes() == 1);
        REQUIRE(ad.nodes() == 2);
        REQUIRE(ad.V[1].size() == 1);
        int v = ad.V[1][0];
        CHECK(ad.face_of_node[v] == -1);
        CHECK(ad.object_of_node[v] == 1);
        CHECK(ad.adj[v] == std::vector<int>{ad.V[0][0]});
        CHECK(object_contains_point(inst.objects[1], ad.rep[1]) == Containment::Interior);
    }
    SUBCASE("single disk") {
        Instance inst = preset_chain(1);
        AugmentedDual ad = augment_dual(inst, build_stacking(inst, 1));
        CHECK(ad.nodes() == 1);
        CHECK(ad.adj[0].empty());
    }
    SUBCASE("every object has nodes on random instances") {
        for (uint64_t seed = 0; seed < 10; ++seed) {
            Instance inst = generate_instance(random_spec(seed % 2 ? "polygons" : "disks", 40, seed));
            Stacking st = build_stacking(inst, seed);
            AugmentedDual ad = augment_dual(inst, st);
            for (int d = 0; d < inst.n(); ++d) {
                REQUIRE(!ad.V[d].empty());
                CHECK(object_contains_point(inst.objects[d], ad.rep[d]) == Containment::Interior);
                if (ad.face_of_node[ad.V[d][0]] < 0) CHECK(ad.V[d].size() == 1);
                for (int v : ad.V[d]) CHECK(ad.object_of_node[v] == d);
            }
        }
    }
}

TEST_CASE("r-division") {
    SUBCASE("graph within r is one region") {
        auto adj = path_graph(5);
        RDivision rd = planar_r_division(adj, 5);
        CHECK(rd.regions.size() == 1);
        CHECK(rd.total_boundary() == 0);
        CHECK(check_r_division(adj, rd, 5) == "");
    }
    SUBCASE("path of ten, r = 4") {
        auto adj = path_graph(10);
        RDivision rd = planar_r_division(adj, 4);
        CHECK(check_r_division(adj, rd, 4) == "");
        for (const auto& reg : rd.regions) CHECK(reg.size() <= 4);
    }
    SUBCASE("grid 8x8, r = 16") {
        auto adj = grid_graph(8, 8);
        RDivision rd = planar_r_division(adj, 16);
        CHECK(check_r_division(adj, rd, 16) == "");
        CHECK(rd.max_boundary() <= 8 * 4);
        CHECK(rd.regions.size() <= 8 * (64 / 16 + 1));
        MESSAGE("grid 8x8 r=16: regions " << rd.regions.size() << ", max boundary " << rd.max_boundary());
    }
    SUBCASE("r = 1 gives singletons") {
        auto adj = grid_graph(3, 3);
        RDivision rd = planar_r_division(adj, 1);
        CHECK(rd.regions.size() == 9);
        CHECK(check_r_division(adj, rd, 1) == "");
    }
    SUBCASE("checker catches a broken division") {
        auto adj = path_graph(6);
        RDivision rd = planar_r_division(adj, 3);
        REQUIRE(check_r_division(adj, rd, 3) == "");
        RDivision bad = rd;
        std::fill(bad.boundary.begin(), bad.boundary.end(), 0);
        CHECK(check_r_division(adj, bad, 3) != "");
        CHECK(check_r_division(adj, rd, 2) != "");
        bad = rd;
        bad.regions.pop_back();
        CHECK(check_r_division(adj, bad, 3) != "");
    }
    CHECK_THROWS_AS(planar_r_division(path_graph(3), 0), std::invalid_argument);
}

TEST_CASE("star clustering examples") {
    SUBCASE("chain of six, r = 3") {
        Instance inst = preset_chain(6);
        StarClustering sc = star_clustering(inst, 3, 1);
        for (const auto& c : sc.clusters) CHECK(c.members.size() <= 3);
        auto rep = verify_star_clustering(inst, sc, 3);
        CHECK(rep.ok);
        for (const auto& p : rep.problems) MESSAGE(p);
    }
    SUBCASE("pair, r = 1") {
        Instance inst = preset_pair();
        StarClustering sc = star_clustering(inst, 1, 2);
        REQUIRE(sc.clusters.size() == 2);
        for (const auto& c : sc.clusters) {
            CHECK(c.members.size() == 1);
            CHECK(c.centers == c.members);
        }
        CHECK(verify_star_clustering(inst, sc, 1).ok);
    }
    SUBCASE("chain with r at least the dual size is one cluster") {
        Instance inst = preset_chain(5);
        Stacking st = build_stacking(inst, 4);
        int F = augment_dual(inst, st).nodes();
        StarClustering sc = star_clustering(inst, st, F);
        REQUIRE(sc.clusters.size() == 1);
        CHECK(sc.clusters[0].members == std::vector<int>{0, 1, 2, 3, 4});
    }
    SUBCASE("disconnected input") {
        CHECK_THROWS_AS(star_clustering(preset_iso(), 1, 0), NotConnected);
    }
    SUBCASE("deleting a star center is caught") {
        Instance inst = preset_chain(6);
        StarClustering sc = star_clustering(inst, 2, 3);
        REQUIRE(verify_star_clustering(inst, sc, 2).ok);
        bool caught = false;
        for (size_t ci = 0; ci < sc.clusters.size() && !caught; ++ci)
            for (size_t k = 0; k < sc.clusters[ci].centers.size() && !caught; ++k) {
                StarClustering bad = sc;
                bad.clusters[ci].centers.erase(bad.clusters[ci].centers.begin() + k);
                auto rep = verify_star_clustering(inst, bad, 2);
                if (!rep.ok && rep.witness_node >= 0) {
                    caught = true;
                    CHECK(rep.witness_cluster == int(ci));
                    const auto& c = bad.clusters[ci].members;
                    CHECK(!std::binary_search(c.begin(), c.end(), rep.witness_node));
                }
            }
        CHECK(caught);
    }
    SUBCASE("output is deterministic and ordered") {
        Instance inst = generate_instance(random_spec("disks", 30, 5, true));
        StarClustering a = star_clustering(inst, 4, 9), b = star_clustering(inst, 4, 9);
        CHECK(a.to_json() == b.to_json());
        for (size_t i = 1; i < a.clusters.size(); ++i)
            CHECK(a.clusters[i - 1].members.front() <= a.clusters[i].members.front());
    }
}

TEST_CASE("star clustering on random connected instances") {
    int runs = 0;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 5 + int(seed * 13 % 80);
        Instance inst = generate_instance(random_spec(seed % 2 ? "polygons" : "disks", n, seed, true));
        Stacking st = build_stacking(inst, seed + 100);
        AugmentedDual ad = augment_dual(inst, st);
        int F = ad.nodes();
        for (int r : {2, 4, int(std::ceil(std::sqrt(n))), int(std::ceil(std::pow(n, 1.0 / 7)))}) {
            CAPTURE(seed);
            CAPTURE(r);
            RDivision rd = planar_r_division(ad.adj, r);
            CHECK(check_r_division(ad.adj, rd, r) == "");
            StarClustering sc = star_clustering(inst, st, r);
            auto rep = verify_star_clustering(inst, sc, r);
            CHECK(rep.ok);
            for (const auto& p : rep.problems) MESSAGE(p);
            CHECK(sc.max_centers() <= 8 * std::sqrt(r));
            CHECK(sc.total_centers() <= 8 * (F / std::sqrt(r) + std::sqrt(r)));
            ++runs;
        }
    }
    CHECK(runs == 160);
}

TEST_CASE("clustering without the component split") {
    Instance inst = generate_instance(random_spec("disks", 40, 11, true));
    StarClustering sc = star_clustering(inst, 3, 1, {.split_components = false});
    auto rep = verify_star_clustering(inst, sc, 3);
    for (const auto& c : sc.clusters) CHECK(c.members.size() <= 3);
    std::vector<char> covered(inst.n(), 0);
    for (const auto& c : sc.clusters)
        for (int d : c.members) covered[d] = 1;
    CHECK(std::count(covered.begin(), covered.end(), 1) == inst.n());
    for (const auto& p : rep.problems) CHECK(p.find("not connected") != std::string::npos);
}
