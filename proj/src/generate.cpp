#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "box_grid.hpp"
#include "unionpath/geom.hpp"

namespace unionpath {

namespace {

constexpr int64_t kGrid = 1024;  // coordinates are multiples of 1/kGrid

// Base convex hexagon for homothets; dyadic, no vertical or horizontal edges.
const std::array<std::array<int64_t, 2>, 6> kHexagon16 = {
    {{16, -5}, {11, 13}, {-3, 16}, {-16, 3}, {-10, -13}, {6, -16}}};

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}
    double uniform() { return double(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int64_t below(int64_t k) { return int64_t(gen() % uint64_t(k)); }
};

Rational quantize(double v, int64_t grid = kGrid) { return Rational(int64_t(std::llround(v * double(grid))), grid); }

GeomObject make_disk(int id, double x, double y, double r) {
    return GeomObject::disk(id, quantize(x), quantize(y), quantize(std::max(r, 0.05)));
}

GeomObject make_homothet(int id, double x, double y, double s) {
    Rational scale = quantize(s, 64), tx = quantize(x), ty = quantize(y);
    std::vector<std::array<Rational, 2>> verts;
    for (const auto& v : kHexagon16)
        verts.push_back({tx + scale * Rational(v[0], 16), ty + scale * Rational(v[1], 16)});
    return GeomObject::polygon(id, verts);
}

double size_of(const GeomObject& o) {
    if (o.shape == Shape::Disk) return o.r.value();
    auto b = o.bbox();
    return 0.5 * (b[2] - b[0]);
}

Point center_of(const GeomObject& o) {
    if (o.shape == Shape::Disk) return {o.cx.value(), o.cy.value()};
    auto b = o.bbox();
    return {0.5 * (b[0] + b[2]), 0.5 * (b[1] + b[3])};
}

bool is_connected(const Instance& inst) {
    int n = inst.n();
    if (n <= 1) return true;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<detail::BoxGrid::Box> boxes;
    for (const auto& o : inst.objects) {
        auto b = o.bbox();
        boxes.push_back({b[0] - kEps, b[1] - kEps, b[2] + kEps, b[3] + kEps});
    }
    int comps = n;
    for (auto [i, j] : detail::BoxGrid(boxes).overlapping_pairs()) {
        int a = find(i), b = find(j);
        if (a == b) continue;
        if (!objects_intersect(inst.objects[i], inst.objects[j])) continue;
        parent[a] = b;
        --comps;
    }
    return comps == 1;
}

Instance from_objects(std::string name, std::vector<GeomObject> objs) {
    Instance inst;
    inst.name = std::move(name);
    inst.objects = std::move(objs);
    inst.finalize();
    return inst;
}

class Generator {
public:
    Generator(const GeneratorSpec& spec, bool polygons) : spec_(spec), polygons_(polygons), rng_(spec.seed) {
        box_ = spec.box > 0 ? spec.box : 2.0 * std::sqrt(double(std::max(spec.n, 1))) * 0.5 * (spec.r_min + spec.r_max);
    }

    Instance run() {
        for (int attempt = 0; attempt <= spec_.retries; ++attempt) {
            std::vector<GeomObject> objs = spec_.connected ? grow() : scatter();
            Instance inst = from_objects(name(), std::move(objs));
            if (repair(inst) && (!spec_.connected || is_connected(inst))) return inst;
        }
        throw GenerationFailed("no valid instance within the retry budget");
    }

private:
    std::string name() const {
        return std::string(polygons_ ? "polygons" : "disks") + "-n" + std::to_string(spec_.n) + "-s" +
               std::to_string(spec_.seed) + (spec_.connected ? "-c" : "");
    }

    GeomObject make(int id, double x, double y, double size) {
        return polygons_ ? make_homothet(id, x, y, size) : make_disk(id, x, y, size);
    }

    std::vector<GeomObject> scatter() {
        std::vector<GeomObject> objs;
        for (int i = 0; i < spec_.n; ++i)
            objs.push_back(make(i, rng_.uniform(0, box_), rng_.uniform(0, box_), rng_.uniform(spec_.r_min, spec_.r_max)));
        return objs;
    }

    // Attaches each object to a random earlier one, keeping centers spread out
    // so the density stays bounded as n grows.
    std::vector<GeomObject> grow() {
        std::vector<GeomObject> objs;
        std::unordered_map<int64_t, std::vector<int>> grid;
        double cell = 2 * spec_.r_max;
        auto cell_key = [&](double x, double y) {
            return (int64_t(std::floor(x / cell)) << 32) ^ int64_t(uint32_t(int32_t(std::floor(y / cell))));
        };
        auto spaced = [&](const Point& c, double size) {
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find(cell_key(c.x + dx * cell, c.y + dy * cell));
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        Point q = center_of(objs[j]);
                        if (std::hypot(c.x - q.x, c.y - q.y) < kSpacing * (size + size_of(objs[j]))) return false;
                    }
                }
            return true;
        };
        for (int i = 0; i < spec_.n; ++i) {
            double size = rng_.uniform(spec_.r_min, spec_.r_max);
            GeomObject o;
            if (i == 0) {
                o = make(0, 0, 0, size);
            } else {
                bool placed = false;
                for (int tries = 0; tries < 64 && !placed; ++tries) {
                    const GeomObject& par = objs[rng_.below(i)];
                    Point c = center_of(par);
                    double ang = rng_.uniform(0, 2 * M_PI);
                    double d = rng_.uniform(kSpacing, 0.95) * (size_of(par) + size);
                    Point at{c.x + d * std::cos(ang), c.y + d * std::sin(ang)};
                    if (!spaced(at, size)) continue;
                    o = make(i, at.x, at.y, size);
                    placed = objects_intersect(o, par);
                }
                if (!placed) o = attach_anywhere(objs, i, size);
            }
            Point c = center_of(o);
            grid[cell_key(c.x, c.y)].push_back(i);
            objs.push_back(std::move(o));
        }
        return objs;
    }

    GeomObject attach_anywhere(const std::vector<GeomObject>& objs, int i, double size) {
        const GeomObject& par = objs[rng_.below(i)];
        Point c = center_of(par);
        double reach = 0.9;
        for (int tries = 0;; ++tries) {
            double ang = rng_.uniform(0, 2 * M_PI);
            double d = rng_.uniform(0.15, reach) * (size_of(par) + size);
            GeomObject o = make(i, c.x + d * std::cos(ang), c.y + d * std::sin(ang), size);
            if (objects_intersect(o, par)) return o;
            if (tries > 8) reach = std::max(0.2, reach * 0.8);
        }
    }

    static constexpr double kSpacing = 0.6;

    // Jitters offending objects until the instance is in general position.
    bool repair(Instance& inst) {
        for (int round = 0; round <= spec_.retries; ++round) {
            ValidationReport rep = validate_general_position(inst);
            if (rep.clean()) return true;
            for (int id : rep.offending_objects()) {
                GeomObject& o = inst.objects[id];
                double jx = double(rng_.below(9) - 4) / kGrid, jy = double(rng_.below(9) - 4) / kGrid;
                double js = double(rng_.below(9) - 4) / kGrid;
                if (o.shape == Shape::Disk) {
                    o = make_disk(id, o.cx.value() + jx, o.cy.value() + jy, o.r.value() + js);
                } else {
                    Rational dx = quantize(jx), dy = quantize(jy);
                    for (auto& v : o.vertices) v = {v[0] + dx, v[1] + dy};
                    o.build_boundary(-1);
                }
            }
            inst.finalize();
        }
        return false;
    }

    GeneratorSpec spec_;
    bool polygons_;
    Rng rng_;
    double box_;
};

}  // namespace

Instance preset_chain(int k) {
    std::vector<GeomObject> objs;
    for (int i = 0; i < k; ++i) objs.push_back(GeomObject::disk(i, Rational(7 * i, 5), 0, 1));
    return from_objects("chain-" + std::to_string(k), std::move(objs));
}

Instance preset_pair() {
    return from_objects("pair", {GeomObject::disk(0, 0, 0, 1), GeomObject::disk(1, 1, 0, 1)});
}

Instance preset_nest() {
    return from_objects("nest", {GeomObject::disk(0, 0, 0, 2), GeomObject::disk(1, Rational(1, 2), 0, Rational(1, 2))});
}

Instance preset_iso() {
    return from_objects("iso", {GeomObject::disk(0, 0, 0, 1), GeomObject::disk(1, 5, 0, 1)});
}

Instance preset_clique() {
    return from_objects("clique", {GeomObject::disk(0, 0, 0, 1), GeomObject::disk(1, 1, 0, 1),
                                   GeomObject::disk(2, Rational(1, 2), Rational(4, 5), 1)});
}

Instance generate_instance(const GeneratorSpec& spec) {
    const std::string& p = spec.preset;
    if (p == "chain") return preset_chain(spec.k > 0 ? spec.k : spec.n);
    if (p == "pair") return preset_pair();
    if (p == "nest") return preset_nest();
    if (p == "iso") return preset_iso();
    if (p == "clique") return preset_clique();
    if (spec.n < 0) throw std::invalid_argument("n must be non-negative");
    if (p == "disks") return Generator(spec, false).run();
    if (p == "polygons") return Generator(spec, true).run();
    throw std::invalid_argument("unknown preset: " + p);
}

}  // namespace unionpath
