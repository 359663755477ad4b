#include "unionpath/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unionpath::reference {

bool ExplicitGraph::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

ExplicitGraph explicit_graph(const Instance& inst) {
    ExplicitGraph g;
    g.n = inst.n();
    g.adj.assign(g.n, {});
    std::vector<std::array<double, 4>> box;
    for (const auto& o : inst.objects) box.push_back(o.bbox());
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            const auto &a = box[i], &b = box[j];
            if (a[2] < b[0] - kEps || b[2] < a[0] - kEps || a[3] < b[1] - kEps || b[3] < a[1] - kEps) continue;
            if (!objects_intersect(inst.objects[i], inst.objects[j])) continue;
            g.adj[i].push_back(j);
            g.adj[j].push_back(i);
        }
    for (auto& l : g.adj) std::sort(l.begin(), l.end());
    return g;
}

ExplicitGraph induced(const ExplicitGraph& g, const std::vector<int>& nodes) {
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < int(nodes.size()); ++i) local[nodes[i]] = i;
    ExplicitGraph h;
    h.n = int(nodes.size());
    h.adj.assign(h.n, {});
    for (int i = 0; i < h.n; ++i)
        for (int w : g.adj[nodes[i]])
            if (local[w] >= 0) h.adj[i].push_back(local[w]);
    for (auto& l : h.adj) std::sort(l.begin(), l.end());
    return h;
}

std::vector<int> bfs(const ExplicitGraph& g, int src) {
    std::vector<int> dist(g.n, kInf);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (size_t q = 0; q < queue.size(); ++q) {
        int u = queue[q];
        for (int w : g.adj[u])
            if (dist[w] == kInf) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::vector<std::vector<int>> all_pairs(const ExplicitGraph& g) {
    std::vector<std::vector<int>> d;
    for (int s = 0; s < g.n; ++s) d.push_back(bfs(g, s));
    return d;
}

bool is_connected(const ExplicitGraph& g) {
    if (g.n == 0) return true;
    auto d = bfs(g, 0);
    return std::find(d.begin(), d.end(), kInf) == d.end();
}

std::vector<int> exact_eccentricities(const ExplicitGraph& g) {
    std::vector<int> ecc(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        for (int d : bfs(g, s)) {
            if (d == kInf) throw NotConnected("graph is not connected");
            ecc[s] = std::max(ecc[s], d);
        }
    }
    return ecc;
}

int exact_diameter(const ExplicitGraph& g) {
    auto ecc = exact_eccentricities(g);
    return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

Arc restrict_arc(const Arc& a, const Point& from, const Point& to) {
    Arc r = a;
    r.left = from;
    r.right = to;
    return r;
}

int inside_pieces(const std::vector<Arc>& pieces, const Point& p) {
    for (const Arc& a : pieces)
        if (a.on_arc(p, 1e-9)) return -1;
    int crossings = 0;
    for (const Arc& a : pieces)
        if (a.left.x <= p.x && p.x < a.right.x && a.y_at(p.x) > p.y) ++crossings;
    return crossings % 2;
}

namespace {

// Point on the piece above x.
Point along(const Arc& a, double x) { return {x, a.y_at(x)}; }

// Area enclosed by a closed chain of pieces, by dense sampling.
double sampled_area(const std::vector<std::pair<const Arc*, bool>>& chain) {
    double area = 0;
    for (auto [a, fwd] : chain) {
        const int k = 64;
        for (int i = 0; i < k; ++i) {
            double t0 = double(i) / k, t1 = double(i + 1) / k;
            if (!fwd) t0 = 1 - t0, t1 = 1 - t1;
            Point p = along(*a, a->left.x + t0 * (a->right.x - a->left.x));
            Point q = along(*a, a->left.x + t1 * (a->right.x - a->left.x));
            if (t0 == 0 || t0 == 1) p = t0 == 0 ? a->left : a->right;
            if (t1 == 0 || t1 == 1) q = t1 == 0 ? a->left : a->right;
            area += p.x * q.y - q.x * p.y;
        }
    }
    return 0.5 * area;
}

}  // namespace

BruteArrangement brute_arrangement(const std::vector<Arc>& arcs) {
    int m = int(arcs.size());
    std::vector<std::vector<Point>> cuts(m);
    for (int i = 0; i < m; ++i) {
        cuts[i].push_back(arcs[i].left);
        cuts[i].push_back(arcs[i].right);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (const Point& p : arc_intersections(arcs[i], arcs[j])) {
                cuts[i].push_back(p);
                cuts[j].push_back(p);
            }

    BruteArrangement out;
    auto vertex = [&](const Point& p) {
        for (int v = 0; v < int(out.vertices.size()); ++v)
            if (near(out.vertices[v], p, 1e-9)) return v;
        out.vertices.push_back(p);
        return int(out.vertices.size()) - 1;
    };
    for (int i = 0; i < m; ++i) {
        auto& c = cuts[i];
        std::sort(c.begin(), c.end());
        std::vector<int> ids;
        for (const Point& p : c) {
            int v = vertex(p);
            if (ids.empty() || ids.back() != v) ids.push_back(v);
        }
        for (size_t k = 0; k + 1 < ids.size(); ++k)
            out.edges.push_back({ids[k], ids[k + 1], restrict_arc(arcs[i], out.vertices[ids[k]], out.vertices[ids[k + 1]]), -1, -1});
    }

    int E = int(out.edges.size()), V = int(out.vertices.size());
    // half-edge 2e runs u -> v, 2e+1 runs v -> u
    std::vector<double> ang(2 * E);
    std::vector<std::vector<int>> around(V);
    for (int e = 0; e < E; ++e) {
        const auto& ed = out.edges[e];
        double len = ed.piece.right.x - ed.piece.left.x;
        double d = std::min(1e-5, len / 8);
        Point a = along(ed.piece, ed.piece.left.x + d), b = along(ed.piece, ed.piece.right.x - d);
        ang[2 * e] = std::atan2(a.y - ed.piece.left.y, a.x - ed.piece.left.x);
        ang[2 * e + 1] = std::atan2(b.y - ed.piece.right.y, b.x - ed.piece.right.x);
        around[ed.u].push_back(2 * e);
        around[ed.v].push_back(2 * e + 1);
    }
    std::vector<int> pos(2 * E);
    for (auto& l : around) {
        std::sort(l.begin(), l.end(), [&](int a, int b) { return ang[a] < ang[b]; });
        for (int i = 0; i < int(l.size()); ++i) pos[l[i]] = i;
    }
    auto head = [&](int h) { return h % 2 ? out.edges[h / 2].u : out.edges[h / 2].v; };
    std::vector<int> next(2 * E);
    for (int h = 0; h < 2 * E; ++h) {
        const auto& l = around[head(h)];
        int twin = h ^ 1;
        next[h] = l[(pos[twin] + int(l.size()) - 1) % int(l.size())];
    }

    std::vector<int> cyc(2 * E, -1);
    std::vector<std::vector<int>> cycles;
    for (int h = 0; h < 2 * E; ++h) {
        if (cyc[h] >= 0) continue;
        std::vector<int> c;
        for (int g = h; cyc[g] < 0; g = next[g]) {
            cyc[g] = int(cycles.size());
            c.push_back(g);
        }
        cycles.push_back(c);
    }
    int C = int(cycles.size());
    std::vector<double> area(C);
    std::vector<std::vector<Arc>> ring(C);
    for (int c = 0; c < C; ++c) {
        std::vector<std::pair<const Arc*, bool>> chain;
        for (int h : cycles[c]) {
            chain.push_back({&out.edges[h / 2].piece, h % 2 == 0});
            ring[c].push_back(out.edges[h / 2].piece);
        }
        area[c] = sampled_area(chain);
    }
    std::vector<int> face(C, -1);
    for (int c = 0; c < C; ++c)
        if (area[c] > 0) face[c] = out.faces++;
    for (int c = 0; c < C; ++c) {
        if (area[c] > 0) continue;
        Point p = out.vertices[head(cycles[c][0])];
        int best = -1;
        for (int d = 0; d < C; ++d)
            if (area[d] > 0 && inside_pieces(ring[d], p) == 1 && (best < 0 || area[d] < area[best])) best = d;
        face[c] = best < 0 ? 0 : face[best];
    }
    for (int e = 0; e < E; ++e) {
        out.edges[e].above = face[cyc[2 * e]];
        out.edges[e].below = face[cyc[2 * e + 1]];
    }
    return out;
}

std::vector<PurplePoint> brute_red_blue(const std::vector<Arc>& red, const std::vector<Arc>& blue) {
    std::vector<PurplePoint> out;
    for (int i = 0; i < int(red.size()); ++i)
        for (int j = 0; j < int(blue.size()); ++j) {
            if (red[i].id >= 0 && red[i].id == blue[j].id) continue;
            for (const Point& p : arc_intersections(red[i], blue[j])) {
                bool end = near(p, red[i].left) || near(p, red[i].right) || near(p, blue[j].left) || near(p, blue[j].right);
                if (!end) out.push_back({i, j, p});
            }
        }
    return out;
}

std::vector<std::vector<int>> brute_conflict_lists(const std::vector<std::vector<Arc>>& faces, const Instance& inst) {
    std::vector<std::vector<int>> K(faces.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        const auto& ring = faces[f];
        for (const GeomObject& o : inst.objects) {
            bool hit = false;
            for (const Arc& p : ring)
                if (p.object == o.id) hit = true;
            for (const Arc& a : o.boundary) {
                if (hit) break;
                std::vector<Point> cuts{a.left, a.right};
                for (const Arc& p : ring) {
                    if (p.id == a.id) continue;
                    auto pts = arc_intersections(p, a);
                    if (!pts.empty()) hit = true;
                    cuts.insert(cuts.end(), pts.begin(), pts.end());
                }
                std::sort(cuts.begin(), cuts.end());
                for (size_t k = 0; !hit && k + 1 < cuts.size(); ++k) {
                    double x = 0.5 * (cuts[k].x + cuts[k + 1].x);
                    if (inside_pieces(ring, {x, a.y_at(x)}) != 0) hit = true;
                }
            }
            if (hit) K[f].push_back(o.id);
        }
    }
    return K;
}

}  // namespace unionpath::reference
