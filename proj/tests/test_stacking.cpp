#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"
#include "unionpath/stacking.hpp"

using namespace unionpath;
using namespace unionpath::testing;

namespace {

int face_with(const Stacking& st, Point p) { return st.sub.face_at(p); }

}  // namespace

TEST_CASE("stacking of presets") {
    SUBCASE("pair") {
        Instance inst = preset_pair();
        Stacking st = build_stacking(inst, std::vector<int>{0, 1});
        CHECK(st.union_faces() == 2);
        CHECK(st.owner[face_with(st, {1.5, 0})] == 1);
        CHECK(st.owner[face_with(st, {0.5, 0})] == 1);
        CHECK(st.owner[face_with(st, {-0.5, 0})] == 0);
        SimplifiedStacking ss = simplify_stacking(st);
        CHECK(ss.union_faces() == 2);
        compute_conflict_lists(ss, st, inst);
        for (int f = 1; f < ss.sub.num_faces(); ++f)
            if (ss.owner[f] >= 0) CHECK(ss.K[f] == std::vector<int>{0, 1});
    }
    SUBCASE("single disk") {
        Instance inst = preset_chain(1);
        Stacking st = build_stacking(inst, 3);
        CHECK(st.union_faces() == 1);
        SimplifiedStacking ss = simplify_stacking(st);
        compute_conflict_lists(ss, st, inst);
        CHECK(ss.union_faces() == 1);
        CHECK(ss.K[1] == std::vector<int>{0});
    }
    SUBCASE("nest") {
        Instance inst = preset_nest();
        Stacking st = build_stacking(inst, std::vector<int>{0, 1});
        CHECK(st.union_faces() == 2);
        int outer = face_with(st, {-1.5, 0});
        CHECK(st.owner[outer] == 0);
        CHECK(st.sub.faces[outer].holes.size() == 1);
        CHECK(st.owner[face_with(st, {0.5, 0})] == 1);
        SimplifiedStacking ss = simplify_stacking(st);
        CHECK(ss.union_faces() == 1);
        CHECK(ss.owner[ss.sub.face_at({0.5, 0})] == 0);
        for (int f = 1; f < ss.sub.num_faces(); ++f) CHECK(ss.sub.faces[f].holes.empty());
    }
    SUBCASE("nest with the small disk below") {
        Instance inst = preset_nest();
        Stacking st = build_stacking(inst, std::vector<int>{1, 0});
        CHECK(st.union_faces() == 1);
        CHECK(st.owner[face_with(st, {0.5, 0})] == 0);
    }
}

TEST_CASE("chain conflict lists stay local") {
    Instance inst = preset_chain(3);
    for (uint64_t seed = 0; seed < 6; ++seed) {
        SimplifiedStacking ss = build_simplified(inst, seed);
        for (int f = 1; f < ss.sub.num_faces(); ++f) {
            if (ss.owner[f] < 0) continue;
            for (int o : ss.K[f]) CHECK(std::abs(o - ss.owner[f]) <= 1);
        }
        CHECK(compare_conflict_lists(inst, ss) == "");
    }
}

TEST_CASE("red-blue intersections") {
    auto square = [] {
        const double t = 1.0 / 1024;
        return std::vector<Piece>{
            Piece::whole(Arc::segment({0, 0}, {1, t})), Piece::whole(Arc::segment({1, t}, {1 + t, 1})),
            Piece::whole(Arc::segment({t, 1 + t}, {1 + t, 1})), Piece::whole(Arc::segment({0, 0}, {t, 1 + t}))};
    };
    SUBCASE("segment through a square") {
        auto hits = red_blue_intersections(square(), {Arc::segment({-2, 0.5}, {2, 0.5})});
        REQUIRE(hits.size() == 2);
        std::vector<Point> pts{hits[0].p, hits[1].p};
        std::sort(pts.begin(), pts.end());
        CHECK(pts[0].x == doctest::Approx(0.5 / 1024 / (1 + 1.0 / 1024) * (1 + 1.0 / 1024)).epsilon(1e-3));
        CHECK(pts[1].x == doctest::Approx(1 + 0.5 / 1024).epsilon(1e-6));
    }
    SUBCASE("blue segments inside") {
        auto hits = red_blue_intersections(square(), {Arc::segment({0.2, 0.2}, {0.8, 0.8}), Arc::segment({0.2, 0.8}, {0.8, 0.2})});
        CHECK(hits.empty());
    }
    SUBCASE("lens against a third disk") {
        Instance inst = preset_pair();
        Subdivision arr = build_arrangement(inst.arcs);
        int lens = arr.face_at({0.5, 0});
        std::vector<Piece> red;
        for (int h : arr.boundary(lens)) red.push_back(arr.edges[arr.half_edges[h].edge]);
        GeomObject d = GeomObject::disk(2, Rational(1, 2), 1, 1);
        std::vector<Arc> blue = d.boundary;
        auto hits = red_blue_intersections(red, blue);
        std::vector<Arc> red_arcs;
        for (const Piece& p : red) red_arcs.push_back(reference::restrict_arc(p.arc, p.left, p.right));
        auto brute = reference::brute_red_blue(red_arcs, blue);
        REQUIRE(hits.size() == brute.size());
        CHECK(hits.size() == 2);
        for (size_t i = 0; i < hits.size(); ++i) {
            bool found = false;
            for (const auto& b : brute) found |= b.red == hits[i].red && b.blue == hits[i].blue && near(b.p, hits[i].p);
            CHECK(found);
        }
    }
    SUBCASE("early exit drops the rest of the object") {
        std::vector<Arc> blue = {Arc::segment({-2, 0.5}, {2, 0.5}, -1, 7), Arc::segment({-2, 0.25}, {2, 0.75}, -1, 7)};
        int calls = 0;
        auto hits = red_blue_intersections(square(), blue, [&](const PurpleHit&) {
            ++calls;
            return true;
        });
        CHECK(calls == 1);
        CHECK(hits.size() == 1);
    }
}

TEST_CASE("random red-blue against brute force") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = generate_instance(random_spec(seed % 2 ? "polygons" : "disks", 20, seed));
        Stacking st = build_stacking(inst, seed);
        std::vector<Arc> red;
        for (const Piece& p : st.sub.edges) red.push_back(reference::restrict_arc(p.arc, p.left, p.right));
        auto hits = red_blue_intersections(st.sub.edges, inst.arcs);
        auto brute = reference::brute_red_blue(red, inst.arcs);
        CHECK(hits.size() == brute.size());
    }
}

TEST_CASE("stacking matches the brute-force oracle") {
    CHECK(compare_stacking(preset_pair(), build_stacking(preset_pair(), std::vector<int>{0, 1})) == "");
    CHECK(compare_stacking(preset_nest(), build_stacking(preset_nest(), std::vector<int>{0, 1})) == "");
    for (const char* preset : {"disks", "polygons"})
        for (int n : {3, 7, 12})
            for (uint64_t seed = 0; seed < 8; ++seed) {
                Instance inst = generate_instance(random_spec(preset, n, seed, true));
                INFO(preset, " n=", n, " seed=", seed);
                Stacking st = build_stacking(inst, seed);
                CHECK(compare_stacking(inst, st) == "");
                SimplifiedStacking ss = simplify_stacking(st);
                for (int f = 1; f < ss.sub.num_faces(); ++f)
                    if (ss.owner[f] >= 0) CHECK(ss.sub.faces[f].holes.empty());
            }
}

TEST_CASE("conflict lists match the brute-force oracle") {
    for (const char* preset : {"disks", "polygons"})
        for (int n : {5, 20, 40})
            for (uint64_t seed = 0; seed < 4; ++seed) {
                Instance inst = generate_instance(random_spec(preset, n, seed, seed % 2 == 1));
                INFO(preset, " n=", n, " seed=", seed);
                SimplifiedStacking ss = build_simplified(inst, seed);
                CHECK(compare_conflict_lists(inst, ss) == "");
                for (int o = 0; o < inst.n(); ++o)
                    for (int f : ss.incidence[o]) CHECK(std::binary_search(ss.K[f].begin(), ss.K[f].end(), o));
            }
}
