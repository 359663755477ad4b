#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"
#include "unionpath/sssp.hpp"

using namespace unionpath;
using namespace unionpath::testing;

namespace {

// Does the closed face (given by its ring) hold a point of the interior of e that is
// also in d, or in the closure of d when closed_d is set?
bool meets(const std::vector<Arc>& ring, const Instance& inst, int e, int d, bool closed_d) {
    std::vector<Arc> arcs = inst.objects[e].boundary;
    if (d >= 0) arcs.insert(arcs.end(), inst.objects[d].boundary.begin(), inst.objects[d].boundary.end());
    // ring pieces lying on a full arc already present would overlap it
    size_t full = arcs.size();
    for (const Arc& a : ring)
        if (std::none_of(arcs.begin(), arcs.begin() + full, [&](const Arc& b) { return b.id == a.id; })) arcs.push_back(a);
    for (const Point& p : cell_samples(arcs)) {
        if (reference::inside_pieces(ring, p) == 0) continue;
        if (object_contains_point(inst.objects[e], p) != Containment::Interior) continue;
        if (d < 0) return true;
        Containment c = object_contains_point(inst.objects[d], p);
        if (c == Containment::Interior || (closed_d && c == Containment::Boundary)) return true;
    }
    return false;
}

std::vector<int> bfs_dist(const Instance& inst, int src) { return reference::bfs(reference::explicit_graph(inst), src); }

// Runs the level loop step by step and checks every face test against brute force.
// A face reports the candidates whose closure meets the level union in the closed face.
void check_steps(const Instance& inst, uint64_t seed, int src) {
    SimplifiedStacking ss = build_simplified(inst, seed);
    std::vector<std::vector<Arc>> rings(ss.sub.num_faces());
    for (int f = 1; f < ss.sub.num_faces(); ++f)
        if (ss.owner[f] >= 0) rings[f] = face_ring(ss.sub, f);
    std::vector<int> dist(inst.n(), kUnreached);
    auto [l0, l1] = initial_levels(inst, src);
    dist[src] = 0;
    for (int d : l1) dist[d] = 1;
    std::vector<int> prev = l1;
    for (int j = 2; !prev.empty(); ++j) {
        LevelUnion lu = level_union(inst, prev);
        std::vector<int> F = faces_intersecting_union(ss, lu, prev);
        for (int f = 1; f < ss.sub.num_faces(); ++f) {
            if (ss.owner[f] < 0) continue;
            bool exact = false;
            for (int e : prev) exact |= meets(rings[f], inst, e, -1, false);
            if (exact) CHECK(std::binary_search(F.begin(), F.end(), f));
        }
        std::vector<int> next;
        for (int f : F) {
            std::vector<int> cand = candidates_in_face(ss.K[f], dist, j);
            std::vector<int> got = test_candidates(inst, ss, f, cand, lu, dist, j, true);
            std::vector<int> want;
            for (int d : cand) {
                bool hit = false;
                for (int e : prev) hit = hit || meets(rings[f], inst, e, d, true);
                if (hit) want.push_back(d);
            }
            CAPTURE(f);
            CAPTURE(j);
            CHECK(ids(got) == ids(want));
            for (int d : got)
                if (dist[d] == kUnreached) dist[d] = j, next.push_back(d);
        }
        std::sort(next.begin(), next.end());
        prev = next;
    }
    CHECK(dist == bfs_dist(inst, src));
}

}  // namespace

TEST_CASE("sssp examples") {
    SUBCASE("chain of three") {
        CHECK(sssp(preset_chain(3), 0, 1).dist == std::vector<int>{0, 1, 2});
    }
    SUBCASE("single object") {
        SsspResult r = sssp(preset_chain(1), 0, 1);
        CHECK(r.dist == std::vector<int>{0});
        CHECK(r.levels.size() == 1);
    }
    SUBCASE("isolated pair") {
        CHECK(sssp(preset_iso(), 0, 1).dist == std::vector<int>{0, kUnreached});
    }
    SUBCASE("nest from the inner disk") {
        for (uint64_t seed = 0; seed < 4; ++seed) CHECK(sssp(preset_nest(), 1, seed).dist == std::vector<int>{1, 0});
    }
    SUBCASE("chain of six from each end") {
        CHECK(sssp(preset_chain(6), 0, 7).dist == std::vector<int>{0, 1, 2, 3, 4, 5});
        CHECK(sssp(preset_chain(6), 5, 7).dist == std::vector<int>{5, 4, 3, 2, 1, 0});
    }
    SUBCASE("json output") {
        auto j = sssp(preset_iso(), 1, 0).to_json();
        CHECK(j["schema"] == 1);
        CHECK(j["source"] == 1);
        CHECK(j["dist"] == nlohmann::json::array({-1, 0}));
    }
    CHECK_THROWS_AS(sssp(preset_pair(), 2, 0), std::out_of_range);
}

TEST_CASE("initial levels") {
    auto [l0, l1] = initial_levels(preset_chain(5), 2);
    CHECK(l0 == std::vector<int>{2});
    CHECK(l1 == std::vector<int>{1, 3});
    CHECK(initial_levels(preset_chain(1), 0).second.empty());
    CHECK(initial_levels(preset_clique(), 1).second == std::vector<int>{0, 2});
}

TEST_CASE("candidates in face") {
    std::vector<int> dist{0, kUnreached, kUnreached};
    CHECK(candidates_in_face({0, 1, 2}, dist, 2) == std::vector<int>{1, 2});
    CHECK(candidates_in_face({0}, dist, 2).empty());
    std::vector<int> later{0, 1, 2};
    CHECK(candidates_in_face({0, 1, 2}, later, 2) == std::vector<int>{2});
}

TEST_CASE("pair run ends after one level") {
    Instance inst = preset_pair();
    SimplifiedStacking ss = build_simplified(inst, 0);
    SsspResult r = sssp(inst, ss, 0, {.verify = true});
    CHECK(r.dist == std::vector<int>{0, 1});
    CHECK(r.levels.size() == 2);
    LevelUnion lu = level_union(inst, {1});
    CHECK(faces_intersecting_union(ss, lu, {1}).size() == size_t(ss.union_faces()));
}

TEST_CASE("face tests match brute force") {
    SUBCASE("chain of four") {
        for (int src = 0; src < 4; ++src) check_steps(preset_chain(4), 3, src);
    }
    SUBCASE("chain of three") { check_steps(preset_chain(3), 1, 0); }
    SUBCASE("random small instances") {
        for (uint64_t seed = 0; seed < 60; ++seed) {
            CAPTURE(seed);
            int n = 4 + int(seed % 13);
            bool connected = seed % 3 != 0;
            Instance inst = generate_instance(random_spec(seed % 2 ? "polygons" : "disks", n, seed, connected));
            check_steps(inst, seed * 7 + 1, int(seed % n));
        }
    }
}

TEST_CASE("sssp equals bfs on random instances") {
    int runs = 0;
    for (uint64_t it = 0; it < 40; ++it) {
        int n = 2 + int(it * 37 % 150);
        bool connected = it % 3 != 0;
        Instance inst = generate_instance(random_spec(it % 2 ? "polygons" : "disks", n, 1000 + it, connected));
        auto g = reference::explicit_graph(inst);
        for (uint64_t seed = 0; seed < 2; ++seed) {
            SimplifiedStacking ss = build_simplified(inst, seed);
            for (int k = 0; k < 2; ++k) {
                int src = int((it * 11 + k * 5) % n);
                CAPTURE(it);
                CAPTURE(src);
                SsspResult r = sssp(inst, ss, src, {.verify = true});
                CHECK(r.dist == reference::bfs(g, src));
                CHECK(r.stats.max_face_visits <= 3);
                for (size_t j = 0; j < r.levels.size(); ++j)
                    for (int d : r.levels[j]) CHECK(r.dist[d] == int(j));
                ++runs;
            }
        }
    }
    CHECK(runs == 160);
}
