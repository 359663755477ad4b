#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace unionpath {

// Absolute tolerance for floating comparisons and the minimum gap the
// generator enforces between distinct critical values.
inline constexpr double kEps = 1e-9;
inline constexpr double kGap = 1e-6;

struct DegenerateOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneracyDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenerationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotConnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AssertionFailed : std::logic_error {
    using std::logic_error::logic_error;
};

struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n) : num(n), den(1) {}
    Rational(int64_t n, int64_t d);

    double value() const { return double(num) / double(den); }
    std::string str() const;
    static Rational parse(const std::string& s);

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b);
};

struct Point {
    double x = 0, y = 0;
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

bool near(const Point& a, const Point& b, double eps = kEps);

enum class ArcKind { Segment, Circular };

// x-monotone boundary piece; left.x < right.x always.
struct Arc {
    ArcKind kind = ArcKind::Segment;
    Point left, right;
    double cx = 0, cy = 0, r = 0;
    bool upper = false;
    int object = -1;
    int id = -1;
    int interior = 0;  // +1 when the object lies above the arc, -1 below

    static Arc segment(Point a, Point b, int id = -1, int object = -1);
    // Half circle (upper or lower) spanning the full x-extent of the circle.
    static Arc half_circle(double cx, double cy, double r, bool upper, int id = -1, int object = -1);

    double y_at(double x) const;
    // Unit tangent when moving towards increasing x at p.
    Point tangent_right(const Point& p) const;
    bool contains_x(double x, double eps = 0) const {
        return x >= left.x - eps && x <= right.x + eps;
    }
    // Distance-like test for p lying on this arc.
    bool on_arc(const Point& p, double eps = kEps) const;
    // x-coordinates where the horizontal line y = y0 meets the arc.
    std::vector<double> x_at_y(double y0) const;
    std::array<double, 4> bbox() const;
};

// Proper intersection points, sorted; endpoints shared by both arcs are excluded.
std::vector<Point> arc_intersections(const Arc& a, const Arc& b);

enum class Shape { Disk, Polygon };

struct GeomObject {
    int id = 0;
    Shape shape = Shape::Disk;
    Rational cx, cy, r;
    std::vector<std::array<Rational, 2>> vertices;  // counterclockwise
    std::vector<Arc> boundary;                      // counterclockwise, x-monotone

    static GeomObject disk(int id, Rational cx, Rational cy, Rational r);
    static GeomObject polygon(int id, std::vector<std::array<Rational, 2>> verts);
    void build_boundary(int first_arc_id);
    Point sample_point() const;  // lexicographically smallest arc endpoint
    std::array<double, 4> bbox() const;
};

enum class Containment { Interior, Boundary, Exterior };

Containment object_contains_point(const GeomObject& d, const Point& p);
bool objects_intersect(const GeomObject& a, const GeomObject& b);

enum class Family { Disks, Polygons, Mixed, Empty };

struct Instance {
    std::string name;
    std::vector<GeomObject> objects;
    std::vector<Arc> arcs;  // all boundary arcs, arcs[i].id == i

    int n() const { return int(objects.size()); }
    Family family() const;
    int s() const;  // max intersections between two boundary arcs
    void finalize();  // renumbers ids and rebuilds arcs
    Instance subset(const std::vector<int>& ids) const;
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

enum class ViolationKind { Tangency, TriplePoint, ArcOverlap, CoincidentVertices, VerticalEdge, GapTooSmall };

struct Violation {
    ViolationKind kind;
    std::vector<int> objects;
    Point where;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
    std::vector<int> offending_objects() const;
};

std::string to_string(ViolationKind k);
ValidationReport validate_general_position(const Instance& inst, double gap = kGap);

struct GeneratorSpec {
    std::string preset = "disks";  // chain | pair | nest | iso | clique | disks | polygons
    int n = 0;
    int k = 0;  // chain length
    uint64_t seed = 0;
    bool connected = false;
    double r_min = 0.5, r_max = 1.5;
    double box = 0;  // side of the placement box, 0 = density default
    int retries = 50;
};

Instance generate_instance(const GeneratorSpec& spec);

Instance preset_chain(int k);
Instance preset_pair();
Instance preset_nest();
Instance preset_iso();
Instance preset_clique();

}  // namespace unionpath
