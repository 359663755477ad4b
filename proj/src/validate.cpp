#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "box_grid.hpp"
#include "unionpath/geom.hpp"

namespace unionpath {

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::Tangency: return "tangency";
        case ViolationKind::TriplePoint: return "triple-point";
        case ViolationKind::ArcOverlap: return "arc-overlap";
        case ViolationKind::CoincidentVertices: return "coincident-vertices";
        case ViolationKind::VerticalEdge: return "vertical-edge";
        case ViolationKind::GapTooSmall: return "gap-too-small";
    }
    return "unknown";
}

std::vector<int> ValidationReport::offending_objects() const {
    std::set<int> s;
    for (const auto& v : violations) s.insert(v.objects.begin(), v.objects.end());
    return {s.begin(), s.end()};
}

namespace {

struct Critical {
    double x;
    int other;  // -1 for the arc's own endpoint
    Point p;
};

// Closest approach of a circle center to a segment, if the foot is interior.
bool segment_circle_tangent(const Arc& s, const Arc& c, double gap, Point& where) {
    double vx = s.right.x - s.left.x, vy = s.right.y - s.left.y;
    double len2 = vx * vx + vy * vy;
    double t = ((c.cx - s.left.x) * vx + (c.cy - s.left.y) * vy) / len2;
    if (t <= 0 || t >= 1) return false;
    Point foot{s.left.x + t * vx, s.left.y + t * vy};
    double d = std::hypot(foot.x - c.cx, foot.y - c.cy);
    if (std::abs(d - c.r) > gap) return false;
    // only the half that actually reaches the foot matters
    if (c.upper ? foot.y < c.cy - gap : foot.y > c.cy + gap) return false;
    where = foot;
    return true;
}

}  // namespace

ValidationReport validate_general_position(const Instance& inst, double gap) {
    ValidationReport rep;
    auto add = [&](ViolationKind k, std::vector<int> objs, Point p) {
        std::sort(objs.begin(), objs.end());
        objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
        rep.violations.push_back({k, std::move(objs), p});
    };

    for (const auto& o : inst.objects) {
        if (o.shape != Shape::Polygon) continue;
        for (const Arc& a : o.boundary)
            if (a.right.x - a.left.x < gap) add(ViolationKind::VerticalEdge, {o.id}, a.left);
    }

    std::vector<std::vector<Critical>> crit(inst.arcs.size());
    for (const Arc& a : inst.arcs) {
        crit[a.id].push_back({a.left.x, -1, a.left});
        crit[a.id].push_back({a.right.x, -1, a.right});
    }

    std::vector<detail::BoxGrid::Box> boxes;
    for (const auto& o : inst.objects) {
        auto b = o.bbox();
        boxes.push_back({b[0] - gap, b[1] - gap, b[2] + gap, b[3] + gap});
    }
    detail::BoxGrid grid(boxes);
    for (auto [i, j] : grid.overlapping_pairs()) {
        const GeomObject &a = inst.objects[i], &b = inst.objects[j];
        if (a.shape == Shape::Disk && b.shape == Shape::Disk) {
            double d = std::hypot(a.cx.value() - b.cx.value(), a.cy.value() - b.cy.value());
            double ra = a.r.value(), rb = b.r.value();
            if (d < gap && std::abs(ra - rb) < gap) {
                add(ViolationKind::ArcOverlap, {i, j}, {a.cx.value(), a.cy.value()});
                continue;
            }
            if (std::abs(d - (ra + rb)) < gap || (d >= gap && std::abs(d - std::abs(ra - rb)) < gap)) {
                double t = ra / std::max(d, 1e-300);
                add(ViolationKind::Tangency, {i, j},
                    {a.cx.value() + t * (b.cx.value() - a.cx.value()), a.cy.value() + t * (b.cy.value() - a.cy.value())});
                continue;
            }
        }
        if (a.shape == Shape::Polygon && b.shape == Shape::Polygon) {
            for (const auto& u : a.boundary)
                for (const auto& v : b.boundary)
                    if (near(u.left, v.left, gap) || near(u.left, v.right, gap))
                        add(ViolationKind::CoincidentVertices, {i, j}, u.left);
        }
        for (const Arc& x : a.boundary)
            for (const Arc& y : b.boundary) {
                Point w;
                if (x.kind == ArcKind::Segment && y.kind == ArcKind::Circular && segment_circle_tangent(x, y, gap, w))
                    add(ViolationKind::Tangency, {i, j}, w);
                if (y.kind == ArcKind::Segment && x.kind == ArcKind::Circular && segment_circle_tangent(y, x, gap, w))
                    add(ViolationKind::Tangency, {i, j}, w);
                std::vector<Point> pts;
                try {
                    pts = arc_intersections(x, y);
                } catch (const DegenerateOverlap&) {
                    add(ViolationKind::ArcOverlap, {i, j}, x.left);
                    continue;
                }
                if (pts.size() == 2 && near(pts[0], pts[1], gap)) add(ViolationKind::Tangency, {i, j}, pts[0]);
                for (const Point& p : pts) {
                    crit[x.id].push_back({p.x, j, p});
                    crit[y.id].push_back({p.x, i, p});
                }
            }
    }

    for (const Arc& a : inst.arcs) {
        auto& c = crit[a.id];
        std::sort(c.begin(), c.end(), [](const Critical& u, const Critical& v) { return u.x < v.x; });
        for (size_t k = 0; k + 1 < c.size(); ++k) {
            const Critical &u = c[k], &v = c[k + 1];
            if (v.x - u.x >= gap) continue;
            if (u.other < 0 && v.other < 0) continue;  // degenerate own arc, reported elsewhere
            std::vector<int> objs{a.object};
            if (u.other >= 0) objs.push_back(u.other);
            if (v.other >= 0) objs.push_back(v.other);
            bool triple = u.other >= 0 && v.other >= 0 && u.other != v.other && near(u.p, v.p, gap);
            add(triple ? ViolationKind::TriplePoint : ViolationKind::GapTooSmall, objs, u.p);
        }
    }
    return rep;
}

}  // namespace unionpath
