#include "unionpath/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "box_grid.hpp"

namespace unionpath {

namespace {

double angle_of(Point d) { return std::atan2(d.y, d.x); }

double theta(const Arc& a, const Point& p) {
    double dx = p.x - a.cx, dy = p.y - a.cy;
    if (a.upper) return std::atan2(std::max(dy, 0.0), dx);
    if (dy >= 0) dy = -0.0;
    return std::atan2(dy, dx);
}

// Twice the signed area contribution of the piece traversed left to right.
double area_term(const Piece& p) {
    const Point &l = p.left, &r = p.right;
    if (p.arc.kind == ArcKind::Segment) return l.x * r.y - r.x * l.y;
    const Arc& a = p.arc;
    return a.r * a.r * (theta(a, r) - theta(a, l)) + a.cx * (r.y - l.y) - a.cy * (r.x - l.x);
}

struct Carrier {
    Piece base;
    std::vector<int> members;
    std::vector<Point> cuts;
};

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int v) {
        while (p[v] != v) v = p[v] = p[p[v]];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

// Dense bucket grid over edge bounding boxes, used for point location.
struct Subdivision::Grid {
    double x0 = 0, y0 = 0, cw = 1, ch = 1;
    int nx = 0, ny = 0;
    std::vector<std::vector<int>> cells;

    int col(double x) const { return std::clamp(int(std::floor((x - x0) / cw)), 0, nx - 1); }
    int row(double y) const { return std::clamp(int(std::floor((y - y0) / ch)), 0, ny - 1); }
    const std::vector<int>& at(int c, int r) const { return cells[size_t(r) * nx + c]; }
    bool inside_y(double y) const { return nx > 0 && y >= y0 && y <= y0 + ch * ny; }
    bool inside(double x, double y) const { return inside_y(y) && x >= x0 && x <= x0 + cw * nx; }

    explicit Grid(const std::vector<Piece>& edges) {
        if (edges.empty()) return;
        double X0 = 1e300, Y0 = 1e300, X1 = -1e300, Y1 = -1e300;
        for (const Piece& e : edges) {
            auto b = e.bbox();
            X0 = std::min(X0, b[0]), Y0 = std::min(Y0, b[1]);
            X1 = std::max(X1, b[2]), Y1 = std::max(Y1, b[3]);
        }
        double pad = 4 * kEps * (1 + std::max({std::abs(X0), std::abs(X1), std::abs(Y0), std::abs(Y1)}));
        X0 -= pad, Y0 -= pad, X1 += pad, Y1 += pad;
        double w = X1 - X0, h = Y1 - Y0;
        double target = std::max(1.0, double(edges.size()) / 2);
        double side = std::sqrt(w * h / target);
        nx = std::clamp(int(std::ceil(w / side)), 1, 4096);
        ny = std::clamp(int(std::ceil(h / side)), 1, 4096);
        x0 = X0, y0 = Y0, cw = w / nx, ch = h / ny;
        cells.assign(size_t(nx) * ny, {});
        for (int i = 0; i < int(edges.size()); ++i) {
            auto b = edges[i].bbox();
            for (int r = row(b[1] - pad); r <= row(b[3] + pad); ++r)
                for (int c = col(b[0] - pad); c <= col(b[2] + pad); ++c) cells[size_t(r) * nx + c].push_back(i);
        }
    }
};

Point Subdivision::direction(int h) const {
    const HalfEdge& he = half_edges[h];
    const Piece& e = edges[he.edge];
    if (he.forward) return e.tangent_right(e.left);
    Point t = e.tangent_right(e.right);
    return {-t.x, -t.y};
}

std::vector<int> Subdivision::cycle(int h) const {
    std::vector<int> out;
    int g = h;
    do {
        out.push_back(g);
        g = half_edges[g].next;
    } while (g != h && out.size() <= half_edges.size());
    return out;
}

std::vector<int> Subdivision::boundary(int f) const {
    std::vector<int> out;
    if (faces[f].outer >= 0) out = cycle(faces[f].outer);
    for (int h : faces[f].holes) {
        auto c = cycle(h);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<int> Subdivision::outgoing(int v) const { return out_sorted[v]; }

bool Subdivision::euler_ok() const {
    return int(vertices.size()) - int(edges.size()) + int(faces.size()) == 1 + components;
}

int Subdivision::shoot_left(const Point& p, bool brute) const {
    double best = -1e300;
    int best_edge = -1;
    auto consider = [&](int e) {
        const Piece& pc = edges[e];
        if (pc.left.x >= p.x - kEps) return;
        if (pc.left.y == pc.right.y && pc.arc.kind == ArcKind::Segment) return;
        auto b = pc.bbox();
        if (p.y < b[1] - kEps || p.y > b[3] + kEps) return;
        for (double x : pc.arc.x_at_y(p.y)) {
            if (x < pc.left.x - kEps || x > pc.right.x + kEps) continue;
            if (x >= p.x - kEps || x <= best) continue;
            Point t = pc.tangent_right({x, p.y});
            bool at_end = std::abs(x - pc.left.x) <= kEps || std::abs(x - pc.right.x) <= kEps;
            if (std::abs(t.y) < 1e-12 && !at_end) continue;  // tangent graze
            best = x;
            best_edge = e;
        }
    };
    if (brute || !grid) {
        for (int e = 0; e < int(edges.size()); ++e) consider(e);
    } else if (grid->inside_y(p.y) && p.x >= grid->x0) {
        int r = grid->row(p.y);
        for (int c = grid->col(p.x); c >= 0; --c) {
            for (int e : grid->at(c, r)) consider(e);
            if (best_edge >= 0 && best >= grid->x0 + c * grid->cw) break;
        }
    }
    if (best_edge < 0) return -1;
    const Piece& pc = edges[best_edge];
    Point hit{best, p.y};
    for (int end = 0; end < 2; ++end) {
        const Point& w = end == 0 ? pc.left : pc.right;
        if (!near(w, hit, kEps * (1 + std::abs(w.x)))) continue;
        int v = half_edges[2 * best_edge + end].origin;
        const auto& out = out_sorted[v];
        int pick = out.back();
        for (int h : out)
            if (angle_of(direction(h)) <= 0) pick = h;
        return pick;
    }
    Point t = pc.tangent_right(hit);
    return t.y < 0 ? 2 * best_edge : 2 * best_edge + 1;
}

Location Subdivision::locate(const Point& p) const {
    if (!grid || grid->nx == 0 || !grid->inside(p.x, p.y)) return locate_brute(p);
    double tol = kEps * (1 + std::abs(p.x) + std::abs(p.y));
    std::vector<int> cand;
    for (int r = grid->row(p.y - tol); r <= grid->row(p.y + tol); ++r)
        for (int c = grid->col(p.x - tol); c <= grid->col(p.x + tol); ++c)
            cand.insert(cand.end(), grid->at(c, r).begin(), grid->at(c, r).end());
    for (int e : cand)
        for (int end = 0; end < 2; ++end)
            if (near(end == 0 ? edges[e].left : edges[e].right, p, tol))
                return {Location::OnVertex, half_edges[2 * e + end].origin};
    for (int e : cand)
        if (edges[e].contains_x(p.x) && edges[e].arc.on_arc(p, tol)) return {Location::OnEdge, e};
    int h = shoot_left(p);
    return {Location::InFace, h < 0 ? 0 : half_edges[h].face};
}

Location Subdivision::locate_brute(const Point& p) const {
    double tol = kEps * (1 + std::abs(p.x) + std::abs(p.y));
    for (int v = 0; v < int(vertices.size()); ++v)
        if (near(vertices[v], p, tol)) return {Location::OnVertex, v};
    for (int e = 0; e < int(edges.size()); ++e)
        if (edges[e].contains_x(p.x) && edges[e].arc.on_arc(p, tol)) return {Location::OnEdge, e};
    int h = shoot_left(p, true);
    return {Location::InFace, h < 0 ? 0 : half_edges[h].face};
}

int Subdivision::face_at(const Point& p) const {
    Location loc = locate(p);
    if (loc.kind == Location::InFace) return loc.index;
    if (loc.kind == Location::OnEdge) return half_edges[2 * loc.index].face;
    return half_edges[out_sorted[loc.index].front()].face;
}

Point Subdivision::face_sample(int f) const {
    if (faces[f].outer < 0) {
        double x = 0;
        for (const Point& v : vertices) x = std::min(x, v.x);
        return {x - 1, 0};
    }
    auto outer = cycle(faces[f].outer);
    int first = outer.front();
    for (int h : outer)
        if (origin(h) < origin(first)) first = h;
    const Point& v = origin(first);
    auto all = boundary(f);
    double xn = 1e300;
    for (int h : all) {
        double x = origin(h).x;
        if (x > v.x && x < xn) xn = x;
    }
    double xs = 0.5 * (v.x + xn);
    double ylo = edges[half_edges[first].edge].y_at(xs);
    double yhi = 1e300;
    for (int h : all) {
        const Piece& e = edges[half_edges[h].edge];
        if (half_edges[h].edge == half_edges[first].edge) continue;
        if (xs <= e.left.x || xs >= e.right.x) continue;
        double y = e.y_at(xs);
        if (y > ylo && y < yhi) yhi = y;
    }
    return {xs, 0.5 * (ylo + yhi)};
}

nlohmann::json Subdivision::to_json() const {
    using nlohmann::json;
    json vs = json::array();
    for (const Point& v : vertices) vs.push_back({v.x, v.y});
    json es = json::array();
    for (int e = 0; e < int(edges.size()); ++e) {
        const Piece& p = edges[e];
        es.push_back({{"u", half_edges[2 * e].origin},
                      {"v", half_edges[2 * e + 1].origin},
                      {"kind", p.arc.kind == ArcKind::Segment ? "segment" : "arc"},
                      {"object", p.arc.object},
                      {"faces", {half_edges[2 * e].face, half_edges[2 * e + 1].face}}});
    }
    auto loop = [&](int h) {
        json l = json::array();
        for (int g : cycle(h)) l.push_back(half_edges[g].origin);
        return l;
    };
    json fs = json::array();
    for (const Face& f : faces) {
        json jf;
        jf["outer"] = f.outer < 0 ? json(nullptr) : loop(f.outer);
        jf["holes"] = json::array();
        for (int h : f.holes) jf["holes"].push_back(loop(h));
        fs.push_back(jf);
    }
    return {{"vertices", vs}, {"edges", es}, {"faces", fs}};
}

std::vector<Piece> split_pieces(std::vector<Piece> input, const BuildOptions& opt) {
    std::erase_if(input, [](const Piece& p) { return !(p.left.x < p.right.x); });

    // Overlapping pieces of one parent arc share a carrier.
    std::vector<int> order(input.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int ia = input[a].arc.id, ib = input[b].arc.id;
        if (ia != ib) return ia < ib;
        if (input[a].left.x != input[b].left.x) return input[a].left.x < input[b].left.x;
        return a < b;
    });
    std::vector<Carrier> car;
    for (int i : order) {
        const Piece& p = input[i];
        if (!car.empty() && p.arc.id >= 0 && car.back().base.arc.id == p.arc.id &&
            p.left.x < car.back().base.right.x) {
            Carrier& c = car.back();
            if (c.base.right < p.right) c.base.right = p.right;
            c.members.push_back(i);
            continue;
        }
        car.push_back({p, {i}, {}});
    }
    for (Carrier& c : car)
        for (int m : c.members) {
            c.cuts.push_back(input[m].left);
            c.cuts.push_back(input[m].right);
        }

    if (opt.find_crossings && car.size() > 1) {
        std::vector<Piece> bases;
        for (const Carrier& c : car) bases.push_back(c.base);
        Sweep sweep(bases);
        sweep.run([](int, int) { return true; },
                  [&](int a, int b, const Point& p) {
                      car[a].cuts.push_back(p);
                      car[b].cuts.push_back(p);
                      return 0u;
                  });
    }

    if (opt.split_touching && car.size() > 1) {
        std::vector<detail::BoxGrid::Box> boxes;
        for (const Carrier& c : car) {
            auto b = c.base.bbox();
            boxes.push_back({b[0] - kEps, b[1] - kEps, b[2] + kEps, b[3] + kEps});
        }
        detail::BoxGrid grid(boxes);
        std::vector<int> cand;
        std::vector<std::pair<int, Point>> extra;
        for (int c = 0; c < int(car.size()); ++c)
            for (const Point& q : car[c].cuts) {
                grid.query({q.x, q.y, q.x, q.y}, cand);
                for (int d : cand) {
                    if (d == c) continue;
                    const Piece& b = car[d].base;
                    if (b.arc.id >= 0 && b.arc.id == car[c].base.arc.id) continue;
                    if (q.x <= b.left.x + kEps || q.x >= b.right.x - kEps) continue;
                    if (b.arc.on_arc(q, kEps)) extra.emplace_back(d, q);
                }
            }
        for (auto& [d, q] : extra) car[d].cuts.push_back(q);
    }

    std::vector<Piece> pieces;
    for (Carrier& c : car) {
        auto& cuts = c.cuts;
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Point> stops{c.base.left};
        for (const Point& q : cuts)
            if (q.x > stops.back().x && q.x < c.base.right.x) stops.push_back(q);
        stops.push_back(c.base.right);
        for (size_t k = 0; k + 1 < stops.size(); ++k) {
            Piece p = c.base;
            p.left = stops[k];
            p.right = stops[k + 1];
            p.label = 0;
            p.tag = -1;
            double mx = 0.5 * (p.left.x + p.right.x);
            for (int m : c.members)
                if (input[m].left.x < mx && mx < input[m].right.x) {
                    p.label |= input[m].label;
                    if (p.tag < 0) p.tag = input[m].tag;
                }
            pieces.push_back(p);
        }
    }
    return pieces;
}

Subdivision build_from_pieces(std::vector<Piece> input, const BuildOptions& opt) {
    std::vector<Piece> pieces = split_pieces(std::move(input), opt);
    Subdivision s;
    std::map<Point, int> vid;
    auto vertex = [&](const Point& p) {
        auto [it, fresh] = vid.try_emplace(p, int(s.vertices.size()));
        if (fresh) s.vertices.push_back(p);
        return it->second;
    };
    s.edges = std::move(pieces);
    int E = int(s.edges.size());
    s.half_edges.assign(2 * E, {});
    for (int e = 0; e < E; ++e) {
        int u = vertex(s.edges[e].left), v = vertex(s.edges[e].right);
        s.half_edges[2 * e] = {u, 2 * e + 1, -1, -1, -1, e, true};
        s.half_edges[2 * e + 1] = {v, 2 * e, -1, -1, -1, e, false};
    }
    int V = int(s.vertices.size());
    s.out_sorted.assign(V, {});
    std::vector<double> ang(2 * E);
    for (int h = 0; h < 2 * E; ++h) {
        ang[h] = angle_of(s.direction(h));
        s.out_sorted[s.half_edges[h].origin].push_back(h);
    }
    std::vector<int> slot(2 * E);
    for (auto& out : s.out_sorted) {
        std::sort(out.begin(), out.end(), [&](int a, int b) { return ang[a] != ang[b] ? ang[a] < ang[b] : a < b; });
        for (int i = 0; i < int(out.size()); ++i) slot[out[i]] = i;
    }
    for (int h = 0; h < 2 * E; ++h) {
        int t = s.half_edges[h].twin;
        const auto& out = s.out_sorted[s.half_edges[t].origin];
        int nx = out[(slot[t] + int(out.size()) - 1) % int(out.size())];
        s.half_edges[h].next = nx;
        s.half_edges[nx].prev = h;
    }

    UnionFind uf(V);
    s.components = V;
    for (int e = 0; e < E; ++e)
        if (uf.unite(s.half_edges[2 * e].origin, s.half_edges[2 * e + 1].origin)) --s.components;

    // Cycles: positive area bounds a face, the rest are holes.
    std::vector<int> cyc(2 * E, -1);
    std::vector<int> cycle_start;
    std::vector<double> cycle_area;
    for (int h = 0; h < 2 * E; ++h) {
        if (cyc[h] >= 0) continue;
        int c = int(cycle_start.size());
        double a2 = 0;
        int g = h;
        do {
            cyc[g] = c;
            double t = area_term(s.edges[s.half_edges[g].edge]);
            a2 += s.half_edges[g].forward ? t : -t;
            g = s.half_edges[g].next;
        } while (g != h);
        cycle_start.push_back(h);
        cycle_area.push_back(a2);
    }
    int C = int(cycle_start.size());
    std::vector<int> cycle_face(C, -1);
    s.faces.push_back({});
    for (int c = 0; c < C; ++c)
        if (cycle_area[c] > 0) {
            cycle_face[c] = int(s.faces.size());
            s.faces.push_back({cycle_start[c], {}});
        }
    for (int c = 0; c < C; ++c) {
        if (cycle_face[c] < 0) continue;
        int g = cycle_start[c];
        do {
            s.half_edges[g].face = cycle_face[c];
            g = s.half_edges[g].next;
        } while (g != cycle_start[c]);
    }

    s.grid = std::make_shared<Subdivision::Grid>(s.edges);
    std::vector<int> leftmost(C, -1);
    for (int c = 0; c < C; ++c) {
        int best = cycle_start[c], g = best;
        do {
            if (s.origin(g) < s.origin(best)) best = g;
            g = s.half_edges[g].next;
        } while (g != cycle_start[c]);
        leftmost[c] = best;
    }
    std::vector<int> state(C, 0);
    auto resolve = [&](auto&& self, int c) -> int {
        if (cycle_face[c] >= 0) return cycle_face[c];
        if (state[c] == 1) throw DegeneracyDetected("cyclic hole assignment");
        state[c] = 1;
        int h = s.shoot_left(s.origin(leftmost[c]));
        int f = h < 0 ? 0 : self(self, cyc[h]);
        cycle_face[c] = f;
        return f;
    };
    for (int c = 0; c < C; ++c) {
        if (cycle_area[c] > 0) continue;
        int f = resolve(resolve, c);
        s.faces[f].holes.push_back(cycle_start[c]);
        int g = cycle_start[c];
        do {
            s.half_edges[g].face = f;
            g = s.half_edges[g].next;
        } while (g != cycle_start[c]);
    }
    if (!s.euler_ok()) throw DegeneracyDetected("Euler characteristic mismatch");
    return s;
}

Subdivision build_arrangement(const std::vector<Arc>& arcs) {
    std::vector<Piece> pieces;
    pieces.reserve(arcs.size());
    for (const Arc& a : arcs) pieces.push_back(Piece::whole(a));
    return build_from_pieces(std::move(pieces), {true, false});
}

DualGraph dual_graph(const Subdivision& s, const std::vector<char>* keep) {
    DualGraph g;
    g.node_of_face.assign(s.num_faces(), -1);
    for (int f = 1; f < s.num_faces(); ++f) {
        if (keep && !(*keep)[f]) continue;
        g.node_of_face[f] = g.nodes();
        g.face_of_node.push_back(f);
    }
    g.adj.assign(g.nodes(), {});
    for (int e = 0; e < int(s.edges.size()); ++e) {
        int a = g.node_of_face[s.half_edges[2 * e].face], b = g.node_of_face[s.half_edges[2 * e + 1].face];
        if (a < 0 || b < 0 || a == b) continue;
        g.edges.push_back({a, b, e});
        g.adj[a].push_back({b, e});
        g.adj[b].push_back({a, e});
    }
    return g;
}

std::vector<std::vector<int>> face_depth_sets(const Subdivision& s) {
    std::vector<std::vector<int>> sets(s.num_faces());
    std::vector<char> seen(s.num_faces(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int f = queue[qi];
        for (int h : s.boundary(f)) {
            int t = s.half_edges[h].twin;
            int g = s.half_edges[t].face;
            if (seen[g]) continue;
            const Piece& p = s.edges[s.half_edges[t].edge];
            // the left side of a forward half-edge is above the piece
            bool into = (p.arc.interior > 0) == s.half_edges[t].forward;
            std::vector<int> set = sets[f];
            int o = p.arc.object;
            auto it = std::lower_bound(set.begin(), set.end(), o);
            if (into) {
                if (it != set.end() && *it == o) throw DegeneracyDetected("inconsistent containment");
                set.insert(it, o);
            } else {
                if (it == set.end() || *it != o) throw DegeneracyDetected("inconsistent containment");
                set.erase(it);
            }
            sets[g] = std::move(set);
            seen[g] = 1;
            queue.push_back(g);
        }
    }
    return sets;
}

int UnionResult::union_vertices() const {
    int count = 0;
    for (int v = 0; v < int(sub.vertices.size()); ++v) {
        const auto& out = sub.out_sorted[v];
        for (size_t i = 1; i < out.size(); ++i)
            if (sub.edges[sub.half_edges[out[i]].edge].arc.object != sub.edges[sub.half_edges[out[0]].edge].arc.object) {
                ++count;
                break;
            }
    }
    return count;
}

int UnionResult::inside_components() const {
    UnionFind uf(sub.num_faces());
    int comps = 0;
    for (int f = 0; f < sub.num_faces(); ++f) comps += inside[f];
    for (int e = 0; e < int(sub.edges.size()); ++e) {
        int a = sub.half_edges[2 * e].face, b = sub.half_edges[2 * e + 1].face;
        if (inside[a] && inside[b] && uf.unite(a, b)) --comps;
    }
    // faces touching only at vertices are still one piece of the union
    for (int v = 0; v < int(sub.vertices.size()); ++v) {
        int first = -1;
        for (int h : sub.out_sorted[v]) {
            int f = sub.half_edges[h].face;
            if (!inside[f]) continue;
            if (first < 0)
                first = f;
            else if (uf.unite(first, f))
                --comps;
        }
    }
    return comps;
}

UnionResult union_of_objects(const std::vector<const GeomObject*>& objs) {
    std::vector<Piece> all;
    for (const GeomObject* o : objs)
        for (const Arc& a : o->boundary) all.push_back(Piece::whole(a));
    Subdivision arr = build_from_pieces(all, {true, false});
    auto sets = face_depth_sets(arr);
    std::vector<Piece> kept;
    for (int e = 0; e < int(arr.edges.size()); ++e) {
        bool a = !sets[arr.half_edges[2 * e].face].empty(), b = !sets[arr.half_edges[2 * e + 1].face].empty();
        if (a == b) continue;
        Piece p = arr.edges[e];
        p.tag = a ? 2 * e : 2 * e + 1;  // the half-edge on the inside
        kept.push_back(p);
    }
    UnionResult u;
    u.sub = build_from_pieces(std::move(kept), {false, false});
    u.inside.assign(u.sub.num_faces(), 0);
    for (int e = 0; e < int(u.sub.edges.size()); ++e) {
        int inner = u.sub.edges[e].tag;
        bool fwd_inside = (inner % 2 == 0);
        u.inside[u.sub.half_edges[fwd_inside ? 2 * e : 2 * e + 1].face] = 1;
    }
    return u;
}

UnionResult union_of_objects(const Instance& inst, const std::vector<int>& ids) {
    std::vector<const GeomObject*> objs;
    for (int i : ids) objs.push_back(&inst.objects.at(i));
    return union_of_objects(objs);
}

}  // namespace unionpath
