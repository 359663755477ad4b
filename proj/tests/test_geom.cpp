#include <cmath>
#include <random>

#include "doctest.h"
#include "unionpath/geom.hpp"

using namespace unionpath;

namespace {

GeomObject unit_disk(int id, double x, double y, double r = 1) {
    return GeomObject::disk(id, Rational(int64_t(std::llround(x * 1024)), 1024),
                            Rational(int64_t(std::llround(y * 1024)), 1024), Rational(int64_t(std::llround(r * 1024)), 1024));
}

// Independent check: closed disks intersect iff the center distance is at most r1 + r2.
bool disks_meet(const GeomObject& a, const GeomObject& b) {
    double d = std::hypot(a.cx.value() - b.cx.value(), a.cy.value() - b.cy.value());
    return d <= a.r.value() + b.r.value();
}

}  // namespace

TEST_CASE("rational parse, print and arithmetic") {
    Rational a = Rational::parse("6/4");
    CHECK(a.num == 3);
    CHECK(a.den == 2);
    CHECK(a.str() == "3/2");
    CHECK((a + Rational(1, 2)) == Rational(2));
    CHECK(Rational::parse("-7").value() == -7.0);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInstance);
    CHECK_THROWS_AS(Rational::parse("x"), InvalidInstance);
}

TEST_CASE("arc intersections") {
    SUBCASE("two unit circles, upper halves") {
        Arc a = Arc::half_circle(0, 0, 1, true), b = Arc::half_circle(1, 0, 1, true);
        auto pts = arc_intersections(a, b);
        REQUIRE(pts.size() == 1);
        // x^2 + y^2 = 1 and (x-1)^2 + y^2 = 1 give x = 1/2, y = sqrt(3)/2
        CHECK(pts[0].x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(pts[0].y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    }
    SUBCASE("disjoint segments") {
        CHECK(arc_intersections(Arc::segment({0, 0}, {1, 0}), Arc::segment({2, 0}, {3, 0})).empty());
    }
    SUBCASE("crossing diagonals") {
        auto pts = arc_intersections(Arc::segment({-1, -1}, {1, 1}), Arc::segment({-1, 1}, {1, -1}));
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].x == doctest::Approx(0));
        CHECK(pts[0].y == doctest::Approx(0));
    }
    SUBCASE("shared endpoint is not a proper intersection") {
        CHECK(arc_intersections(Arc::segment({0, 0}, {1, 1}), Arc::segment({1, 1}, {2, 0})).empty());
    }
    SUBCASE("overlap is degenerate") {
        CHECK_THROWS_AS(arc_intersections(Arc::segment({0, 0}, {2, 0}), Arc::segment({1, 0}, {3, 0})), DegenerateOverlap);
        CHECK_THROWS_AS(arc_intersections(Arc::half_circle(0, 0, 1, true), Arc::half_circle(0, 0, 1, true)),
                        DegenerateOverlap);
    }
    SUBCASE("result is symmetric and bounded by s") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int t = 0; t < 500; ++t) {
            Arc a = Arc::half_circle(u(rng), u(rng), 0.5 + std::abs(u(rng)), t % 2, 0);
            Arc b = t % 3 ? Arc::half_circle(u(rng), u(rng), 0.5 + std::abs(u(rng)), t % 5 < 2, 1)
                          : Arc::segment({u(rng), u(rng)}, {u(rng) + 5, u(rng)}, 1);
            auto ab = arc_intersections(a, b), ba = arc_intersections(b, a);
            CHECK(ab.size() <= 2);
            REQUIRE(ab.size() == ba.size());
            for (size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == ba[i]);
            for (const Point& p : ab) {
                CHECK(a.on_arc(p, 1e-9));
                CHECK(b.on_arc(p, 1e-9));
            }
        }
    }
}

TEST_CASE("object contains point") {
    GeomObject d = GeomObject::disk(0, 0, 0, 1);
    CHECK(object_contains_point(d, {0, 0}) == Containment::Interior);
    CHECK(object_contains_point(d, {1, 0}) == Containment::Boundary);
    CHECK(object_contains_point(d, {3, 0}) == Containment::Exterior);
    GeomObject sq = GeomObject::polygon(1, {{0, 0}, {Rational(2), Rational(1, 8)}, {Rational(17, 8), 2}, {Rational(1, 8), Rational(17, 8)}});
    CHECK(object_contains_point(sq, {1, 1}) == Containment::Interior);
    CHECK(object_contains_point(sq, {3, 1}) == Containment::Exterior);
    CHECK(object_contains_point(sq, {0, 0}) == Containment::Boundary);
}

TEST_CASE("objects intersect on presets") {
    Instance pair = preset_pair(), iso = preset_iso(), nest = preset_nest();
    CHECK(objects_intersect(pair.objects[0], pair.objects[1]));
    CHECK_FALSE(objects_intersect(iso.objects[0], iso.objects[1]));
    CHECK(objects_intersect(nest.objects[0], nest.objects[1]));
    CHECK(objects_intersect(nest.objects[1], nest.objects[0]));
}

TEST_CASE("objects intersect agrees with center distances") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0, 6), rad(0.2, 2);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        GeomObject a = unit_disk(0, pos(rng), pos(rng), rad(rng)), b = unit_disk(1, pos(rng), pos(rng), rad(rng));
        double d = std::hypot(a.cx.value() - b.cx.value(), a.cy.value() - b.cy.value());
        double gap = std::min(std::abs(d - a.r.value() - b.r.value()), std::abs(d - std::abs(a.r.value() - b.r.value())));
        if (gap < 1e-6) continue;
        CHECK(objects_intersect(a, b) == disks_meet(a, b));
        CHECK(objects_intersect(a, b) == objects_intersect(b, a));
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("validation") {
    SUBCASE("tangent disks") {
        Instance inst;
        inst.objects = {GeomObject::disk(0, 0, 0, 1), GeomObject::disk(1, 2, 0, 1)};
        inst.finalize();
        auto rep = validate_general_position(inst);
        REQUIRE_FALSE(rep.clean());
        CHECK(rep.violations[0].kind == ViolationKind::Tangency);
        CHECK(rep.violations[0].where.x == doctest::Approx(1));
        CHECK(rep.violations[0].where.y == doctest::Approx(0));
    }
    SUBCASE("identical disks") {
        Instance inst;
        inst.objects = {GeomObject::disk(0, 0, 0, 1), GeomObject::disk(1, 0, 0, 1)};
        inst.finalize();
        auto rep = validate_general_position(inst);
        REQUIRE_FALSE(rep.clean());
        CHECK(rep.violations[0].kind == ViolationKind::ArcOverlap);
    }
    SUBCASE("vertical polygon edge") {
        Instance inst;
        inst.objects = {GeomObject::polygon(0, {{0, 0}, {1, 0}, {1, 1}})};
        inst.finalize();
        auto rep = validate_general_position(inst);
        REQUIRE_FALSE(rep.clean());
        CHECK(rep.violations[0].kind == ViolationKind::VerticalEdge);
    }
    SUBCASE("presets are clean") {
        CHECK(validate_general_position(preset_chain(3)).clean());
        CHECK(validate_general_position(preset_chain(6)).clean());
        CHECK(validate_general_position(preset_pair()).clean());
        CHECK(validate_general_position(preset_nest()).clean());
        CHECK(validate_general_position(preset_iso()).clean());
        CHECK(validate_general_position(preset_clique()).clean());
    }
}

TEST_CASE("generator") {
    SUBCASE("chain graph is a path") {
        Instance ch = preset_chain(5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) CHECK(objects_intersect(ch.objects[i], ch.objects[j]) == (j == i + 1));
    }
    SUBCASE("empty") {
        GeneratorSpec spec;
        spec.n = 0;
        CHECK(generate_instance(spec).n() == 0);
    }
    SUBCASE("deterministic and valid") {
        for (const char* preset : {"disks", "polygons"}) {
            GeneratorSpec spec;
            spec.preset = preset;
            spec.n = 40;
            spec.seed = 3;
            Instance a = generate_instance(spec), b = generate_instance(spec);
            CHECK(instance_to_json(a) == instance_to_json(b));
            CHECK(validate_general_position(a).clean());
        }
    }
    SUBCASE("connected flag") {
        for (uint64_t seed = 0; seed < 7; ++seed) {
            GeneratorSpec spec;
            spec.n = seed < 5 ? 30 : 1500;
            spec.seed = seed;
            spec.connected = true;
            spec.preset = seed % 2 ? "polygons" : "disks";
            Instance inst = generate_instance(spec);
            // plain BFS over pairwise tests
            std::vector<int> seen(inst.n(), 0), queue{0};
            seen[0] = 1;
            for (size_t q = 0; q < queue.size(); ++q)
                for (int j = 0; j < inst.n(); ++j)
                    if (!seen[j] && objects_intersect(inst.objects[queue[q]], inst.objects[j])) {
                        seen[j] = 1;
                        queue.push_back(j);
                    }
            CHECK(int(queue.size()) == inst.n());
        }
    }
    SUBCASE("unknown preset") {
        GeneratorSpec spec;
        spec.preset = "blobs";
        CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);
    }
}

TEST_CASE("instance json round trip") {
    GeneratorSpec spec;
    spec.preset = "polygons";
    spec.n = 10;
    spec.seed = 1;
    Instance a = generate_instance(spec);
    Instance b = instance_from_json(instance_to_json(a));
    CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());
    Instance n = instance_from_json(nlohmann::json::parse(
        R"({"name":"x","objects":[{"id":0,"shape":"disk","center":["1/2",0.25],"radius":1}]})"));
    CHECK(n.objects[0].cx == Rational(1, 2));
    CHECK(n.objects[0].cy == Rational(1, 4));
    CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"objects":[{"id":1,"shape":"disk","center":[0,0],"radius":1}]})")),
                    InvalidInstance);
    CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"objects":[{"id":0,"shape":"blob"}]})")), InvalidInstance);
}
