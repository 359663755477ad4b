#include "unionpath/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unionpath {

namespace {

int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return int64_t(v);
}

Rational make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) n = -n, d = -d;
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) n /= a, d /= a;
    Rational r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
}

double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

bool on_half(const Arc& a, const Point& p) {
    return a.upper ? p.y >= a.cy - kEps : p.y <= a.cy + kEps;
}

void push_unique(std::vector<Point>& out, Point p) {
    for (const Point& q : out)
        if (near(p, q, 1e-12)) return;
    out.push_back(p);
}

std::vector<Point> seg_seg(const Arc& a, const Arc& b) {
    Point p = a.left, r = sub(a.right, a.left);
    Point q = b.left, s = sub(b.right, b.left);
    double d = cross(r, s);
    Point qp = sub(q, p);
    double scale = std::hypot(r.x, r.y) * std::hypot(s.x, s.y);
    if (std::abs(d) <= 1e-14 * scale) {
        double dist = std::abs(cross(qp, r)) / std::hypot(r.x, r.y);
        if (dist <= kEps) {
            double lo = std::max(a.left.x, b.left.x), hi = std::min(a.right.x, b.right.x);
            if (hi - lo > kEps) throw DegenerateOverlap("collinear overlapping segments");
            if (hi - lo >= -kEps) return {a.right.x <= b.left.x + kEps ? a.right : a.left};
        }
        return {};
    }
    double t = cross(qp, s) / d, u = cross(qp, r) / d;
    const double tol = 1e-12;
    if (t < -tol || t > 1 + tol || u < -tol || u > 1 + tol) return {};
    return {{p.x + t * r.x, p.y + t * r.y}};
}

std::vector<Point> seg_circ(const Arc& s, const Arc& c) {
    Point p = s.left, v = sub(s.right, s.left);
    Point f = {p.x - c.cx, p.y - c.cy};
    double A = v.x * v.x + v.y * v.y;
    double B = 2 * (f.x * v.x + f.y * v.y);
    double C = f.x * f.x + f.y * f.y - c.r * c.r;
    double disc = B * B - 4 * A * C;
    if (disc < 0) {
        if (disc < -1e-18 * (B * B + std::abs(4 * A * C))) return {};
        disc = 0;
    }
    double sq = std::sqrt(disc);
    std::vector<double> ts;
    if (sq == 0) {
        ts.push_back(-B / (2 * A));
    } else {
        double q = -0.5 * (B + (B >= 0 ? sq : -sq));
        ts.push_back(q / A);
        if (q != 0) ts.push_back(C / q);
    }
    std::vector<Point> out;
    const double tol = 1e-12;
    for (double t : ts) {
        if (t < -tol || t > 1 + tol) continue;
        Point x{p.x + t * v.x, p.y + t * v.y};
        if (!c.contains_x(x.x, kEps) || !on_half(c, x)) continue;
        push_unique(out, x);
    }
    return out;
}

std::vector<Point> circ_circ(const Arc& a, const Arc& b) {
    double dx = b.cx - a.cx, dy = b.cy - a.cy;
    double d2 = dx * dx + dy * dy, d = std::sqrt(d2);
    if (d <= 1e-15 * (1 + a.r)) {
        if (std::abs(a.r - b.r) <= kEps) {
            if (a.upper == b.upper) {
                double lo = std::max(a.left.x, b.left.x), hi = std::min(a.right.x, b.right.x);
                if (hi - lo > kEps) throw DegenerateOverlap("overlapping circular arcs");
            }
        }
        return {};
    }
    if (d > a.r + b.r + kEps || d < std::abs(a.r - b.r) - kEps) return {};
    double along = (a.r * a.r - b.r * b.r + d2) / (2 * d);
    double h2 = a.r * a.r - along * along;
    double h = h2 > 0 ? std::sqrt(h2) : 0;
    Point m{a.cx + along * dx / d, a.cy + along * dy / d};
    Point cand[2] = {{m.x - h * dy / d, m.y + h * dx / d}, {m.x + h * dy / d, m.y - h * dx / d}};
    std::vector<Point> out;
    for (int i = 0; i < (h > 0 ? 2 : 1); ++i) {
        const Point& x = cand[i];
        if (!a.contains_x(x.x, kEps) || !b.contains_x(x.x, kEps)) continue;
        if (!on_half(a, x) || !on_half(b, x)) continue;
        push_unique(out, x);
    }
    return out;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) { *this = make(n, d); }

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            int64_t n = std::stoll(s, &used);
            if (used != s.size()) throw InvalidInstance("bad rational: " + s);
            return Rational(n);
        }
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        int64_t n = std::stoll(a, &used);
        if (used != a.size()) throw InvalidInstance("bad rational: " + s);
        int64_t d = std::stoll(b, &used);
        if (used != b.size() || d == 0) throw InvalidInstance("bad rational: " + s);
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw InvalidInstance("bad rational: " + s);
    }
}

Rational operator+(Rational a, Rational b) {
    return make(__int128(a.num) * b.den + __int128(b.num) * a.den, __int128(a.den) * b.den);
}
Rational operator-(Rational a, Rational b) {
    return make(__int128(a.num) * b.den - __int128(b.num) * a.den, __int128(a.den) * b.den);
}
Rational operator*(Rational a, Rational b) {
    return make(__int128(a.num) * b.num, __int128(a.den) * b.den);
}
Rational operator/(Rational a, Rational b) {
    return make(__int128(a.num) * b.den, __int128(a.den) * b.num);
}
bool operator<(Rational a, Rational b) {
    return __int128(a.num) * b.den < __int128(b.num) * a.den;
}

bool near(const Point& a, const Point& b, double eps) {
    return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
}

Arc Arc::segment(Point a, Point b, int id, int object) {
    Arc arc;
    arc.kind = ArcKind::Segment;
    if (b < a) std::swap(a, b);
    arc.left = a;
    arc.right = b;
    arc.id = id;
    arc.object = object;
    return arc;
}

Arc Arc::half_circle(double cx, double cy, double r, bool upper, int id, int object) {
    Arc arc;
    arc.kind = ArcKind::Circular;
    arc.cx = cx;
    arc.cy = cy;
    arc.r = r;
    arc.upper = upper;
    arc.left = {cx - r, cy};
    arc.right = {cx + r, cy};
    arc.id = id;
    arc.object = object;
    return arc;
}

double Arc::y_at(double x) const {
    if (x == left.x) return left.y;
    if (x == right.x) return right.y;
    if (kind == ArcKind::Segment) {
        double t = (x - left.x) / (right.x - left.x);
        return left.y + t * (right.y - left.y);
    }
    double dx = std::abs(x - cx);
    double h = (r - dx) * (r + dx);
    double s = h > 0 ? std::sqrt(h) : 0;
    return upper ? cy + s : cy - s;
}

Point Arc::tangent_right(const Point& p) const {
    Point t;
    if (kind == ArcKind::Segment) {
        t = sub(right, left);
    } else {
        double rx = p.x - cx, ry = p.y - cy;
        if (upper && ry < 0) ry = 0;
        if (!upper && ry > 0) ry = 0;
        t = upper ? Point{ry, -rx} : Point{-ry, rx};
    }
    double len = std::hypot(t.x, t.y);
    return {t.x / len, t.y / len};
}

bool Arc::on_arc(const Point& p, double eps) const {
    if (!contains_x(p.x, eps)) return false;
    if (kind == ArcKind::Segment) {
        Point d = sub(right, left);
        return std::abs(cross(d, sub(p, left))) / std::hypot(d.x, d.y) <= eps;
    }
    if (std::abs(std::hypot(p.x - cx, p.y - cy) - r) > eps) return false;
    return upper ? p.y >= cy - eps : p.y <= cy + eps;
}

std::vector<double> Arc::x_at_y(double y0) const {
    std::vector<double> out;
    if (kind == ArcKind::Segment) {
        double lo = std::min(left.y, right.y), hi = std::max(left.y, right.y);
        if (y0 < lo || y0 > hi || left.y == right.y) return out;
        double t = (y0 - left.y) / (right.y - left.y);
        out.push_back(left.x + t * (right.x - left.x));
        return out;
    }
    double dy = y0 - cy;
    if (upper ? dy < 0 : dy > 0) return out;
    double h = (r - std::abs(dy)) * (r + std::abs(dy));
    if (h < 0) return out;
    double s = std::sqrt(h);
    for (double x : {cx - s, cx + s})
        if (contains_x(x) && (out.empty() || out.back() != x)) out.push_back(x);
    return out;
}

std::array<double, 4> Arc::bbox() const {
    double x0 = left.x, x1 = right.x;
    double y0 = std::min(left.y, right.y), y1 = std::max(left.y, right.y);
    if (kind == ArcKind::Circular && cx >= x0 && cx <= x1) {
        if (upper)
            y1 = std::max(y1, cy + r);
        else
            y0 = std::min(y0, cy - r);
    }
    return {x0, y0, x1, y1};
}

std::vector<Point> arc_intersections(const Arc& a0, const Arc& b0) {
    bool swap = a0.id >= 0 && b0.id >= 0 && b0.id < a0.id;
    const Arc& a = swap ? b0 : a0;
    const Arc& b = swap ? a0 : b0;
    if (a.right.x < b.left.x - kEps || b.right.x < a.left.x - kEps) return {};
    std::vector<Point> pts;
    if (a.kind == ArcKind::Segment && b.kind == ArcKind::Segment)
        pts = seg_seg(a, b);
    else if (a.kind == ArcKind::Segment)
        pts = seg_circ(a, b);
    else if (b.kind == ArcKind::Segment)
        pts = seg_circ(b, a);
    else
        pts = circ_circ(a, b);
    std::vector<Point> out;
    for (const Point& p : pts) {
        bool shared = false;
        for (const Point& e : {a.left, a.right})
            if (near(e, p) && (near(b.left, e) || near(b.right, e))) shared = true;
        if (!shared) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

GeomObject GeomObject::disk(int id, Rational cx, Rational cy, Rational r) {
    GeomObject o;
    o.id = id;
    o.shape = Shape::Disk;
    o.cx = cx;
    o.cy = cy;
    o.r = r;
    o.build_boundary(-1);
    return o;
}

GeomObject GeomObject::polygon(int id, std::vector<std::array<Rational, 2>> verts) {
    GeomObject o;
    o.id = id;
    o.shape = Shape::Polygon;
    o.vertices = std::move(verts);
    o.build_boundary(-1);
    return o;
}

void GeomObject::build_boundary(int first_arc_id) {
    boundary.clear();
    int next = first_arc_id;
    auto nid = [&] { return first_arc_id < 0 ? -1 : next++; };
    if (shape == Shape::Disk) {
        double x = cx.value(), y = cy.value(), rr = r.value();
        boundary.push_back(Arc::half_circle(x, y, rr, false, nid(), id));
        boundary.back().interior = 1;
        boundary.push_back(Arc::half_circle(x, y, rr, true, nid(), id));
        boundary.back().interior = -1;
        return;
    }
    size_t k = vertices.size();
    double area2 = 0;
    for (size_t i = 0; i < k; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % k];
        area2 += a[0].value() * b[1].value() - b[0].value() * a[1].value();
    }
    for (size_t i = 0; i < k; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % k];
        boundary.push_back(Arc::segment({a[0].value(), a[1].value()}, {b[0].value(), b[1].value()}, nid(), id));
        bool rightward = a[0] < b[0];
        boundary.back().interior = (rightward == (area2 > 0)) ? 1 : -1;
    }
}

Point GeomObject::sample_point() const {
    Point best = boundary.front().left;
    for (const Arc& a : boundary) best = std::min(best, a.left);
    return best;
}

std::array<double, 4> GeomObject::bbox() const {
    std::array<double, 4> b = boundary.front().bbox();
    for (const Arc& a : boundary) {
        auto c = a.bbox();
        b[0] = std::min(b[0], c[0]);
        b[1] = std::min(b[1], c[1]);
        b[2] = std::max(b[2], c[2]);
        b[3] = std::max(b[3], c[3]);
    }
    return b;
}

Containment object_contains_point(const GeomObject& d, const Point& p) {
    for (const Arc& a : d.boundary)
        if (a.on_arc(p)) return Containment::Boundary;
    int crossings = 0;
    for (const Arc& a : d.boundary) {
        if (a.left.x == a.right.x) continue;
        if (p.x < a.left.x || p.x >= a.right.x) continue;
        if (a.y_at(p.x) > p.y) ++crossings;
    }
    return crossings % 2 ? Containment::Interior : Containment::Exterior;
}

bool objects_intersect(const GeomObject& a, const GeomObject& b) {
    auto ba = a.bbox(), bb = b.bbox();
    if (ba[2] < bb[0] - kEps || bb[2] < ba[0] - kEps || ba[3] < bb[1] - kEps || bb[3] < ba[1] - kEps)
        return false;
    for (const Arc& x : a.boundary)
        for (const Arc& y : b.boundary) {
            try {
                if (!arc_intersections(x, y).empty()) return true;
            } catch (const DegenerateOverlap&) {
                return true;
            }
        }
    return object_contains_point(b, a.sample_point()) != Containment::Exterior ||
           object_contains_point(a, b.sample_point()) != Containment::Exterior;
}

Family Instance::family() const {
    if (objects.empty()) return Family::Empty;
    bool disks = false, polys = false;
    for (const auto& o : objects) (o.shape == Shape::Disk ? disks : polys) = true;
    if (disks && polys) return Family::Mixed;
    return disks ? Family::Disks : Family::Polygons;
}

int Instance::s() const {
    for (const auto& o : objects)
        if (o.shape == Shape::Disk) return 2;
    return 1;
}

void Instance::finalize() {
    std::vector<int> seen(objects.size(), 0);
    for (const auto& o : objects) {
        if (o.id < 0 || o.id >= n() || seen[o.id]) throw InvalidInstance("object ids must be 0..n-1 and unique");
        seen[o.id] = 1;
    }
    std::sort(objects.begin(), objects.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    arcs.clear();
    for (auto& o : objects) {
        if (o.shape == Shape::Disk && !(Rational(0) < o.r)) throw InvalidInstance("disk radius must be positive");
        if (o.shape == Shape::Polygon && o.vertices.size() < 3) throw InvalidInstance("polygon needs 3 vertices");
        o.build_boundary(int(arcs.size()));
        for (const Arc& a : o.boundary) arcs.push_back(a);
    }
}

Instance Instance::subset(const std::vector<int>& ids) const {
    Instance out;
    out.name = name + "/subset";
    for (size_t i = 0; i < ids.size(); ++i) {
        GeomObject o = objects.at(ids[i]);
        o.id = int(i);
        out.objects.push_back(std::move(o));
    }
    out.finalize();
    return out;
}

}  // namespace unionpath
