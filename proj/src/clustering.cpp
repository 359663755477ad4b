#include "unionpath/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "unionpath/reference.hpp"

namespace unionpath {

namespace {

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool rep_ok(const Stacking& st, const GeomObject& d, const Point& p) {
    if (object_contains_point(d, p) != Containment::Interior) return false;
    Location loc = st.sub.locate(p);
    return loc.kind == Location::InFace && st.owner[loc.index] >= 0;
}

Point hidden_rep(const Stacking& st, const GeomObject& d) {
    Point c;
    double scale;
    if (d.shape == Shape::Disk) {
        c = {d.cx.value(), d.cy.value()};
        scale = d.r.value();
    } else {
        for (const auto& v : d.vertices) c.x += v[0].value(), c.y += v[1].value();
        c.x /= double(d.vertices.size());
        c.y /= double(d.vertices.size());
        auto b = d.bbox();
        scale = 0.5 * std::min(b[2] - b[0], b[3] - b[1]);
    }
    if (rep_ok(st, d, c)) return c;
    for (double rho : {0.01, 0.1, 0.3, 0.6})
        for (int k = 0; k < 16; ++k) {
            double t = 2 * M_PI * (k + 0.5) / 16;
            Point p{c.x + rho * scale * std::cos(t), c.y + rho * scale * std::sin(t)};
            if (rep_ok(st, d, p)) return p;
        }
    for (int f = 1; f < st.sub.num_faces(); ++f) {
        if (st.owner[f] < 0) continue;
        Point p = st.sub.face_sample(f);
        if (rep_ok(st, d, p)) return p;
    }
    throw DegeneracyDetected("no representative point for object " + std::to_string(d.id));
}

std::vector<int> bfs_order(const std::vector<std::vector<int>>& adj, const std::vector<char>& in, int s,
                           std::vector<int>& mark, int stamp) {
    std::vector<int> order{s};
    mark[s] = stamp;
    for (size_t i = 0; i < order.size(); ++i)
        for (int w : adj[order[i]])
            if (in[w] && mark[w] != stamp) mark[w] = stamp, order.push_back(w);
    return order;
}

}  // namespace

int AugmentedDual::face_nodes() const {
    return int(std::count_if(face_of_node.begin(), face_of_node.end(), [](int f) { return f >= 0; }));
}

AugmentedDual augment_dual(const Instance& inst, const Stacking& st) {
    AugmentedDual ad;
    std::vector<char> keep(st.sub.num_faces(), 0);
    for (int f = 1; f < st.sub.num_faces(); ++f) keep[f] = st.owner[f] >= 0;
    DualGraph g = dual_graph(st.sub, &keep);
    ad.face_of_node = g.face_of_node;
    ad.adj.resize(g.nodes());
    ad.V.resize(inst.n());
    ad.rep.resize(inst.n());
    for (int v = 0; v < g.nodes(); ++v) {
        for (auto [w, e] : g.adj[v]) ad.adj[v].push_back(w);
        int o = st.owner[g.face_of_node[v]];
        ad.object_of_node.push_back(o);
        ad.V[o].push_back(v);
    }
    for (int d = 0; d < inst.n(); ++d) {
        if (!ad.V[d].empty()) {
            ad.rep[d] = st.sub.face_sample(ad.face_of_node[ad.V[d].front()]);
            continue;
        }
        ad.rep[d] = hidden_rep(st, inst.objects[d]);
        int host = g.node_of_face[st.sub.locate(ad.rep[d]).index];
        int v = ad.nodes();
        ad.face_of_node.push_back(-1);
        ad.object_of_node.push_back(d);
        ad.adj.push_back({host});
        ad.adj[host].push_back(v);
        ad.V[d].push_back(v);
    }
    for (auto& a : ad.adj) sort_unique(a);
    return ad;
}

std::vector<int> RDivision::region_boundary(int i) const {
    std::vector<int> out;
    for (int v : regions[i])
        if (boundary[v]) out.push_back(v);
    return out;
}

int RDivision::max_boundary() const {
    int m = 0;
    for (int i = 0; i < int(regions.size()); ++i) m = std::max(m, int(region_boundary(i).size()));
    return m;
}

long RDivision::total_boundary() const {
    long t = 0;
    for (int i = 0; i < int(regions.size()); ++i) t += long(region_boundary(i).size());
    return t;
}

RDivision planar_r_division(const std::vector<std::vector<int>>& adj, int r) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    int n = int(adj.size());
    std::vector<int> mark(n, -1);
    int stamp = 0;
    std::vector<char> in(n, 0);
    std::vector<std::vector<int>> parts;

    // Split each connected piece along a BFS order from a far node until it fits.
    std::vector<std::vector<int>> work;
    std::vector<char> all(n, 1);
    for (int v = 0; v < n; ++v)
        if (mark[v] < 0) work.push_back(bfs_order(adj, all, v, mark, stamp));
    while (!work.empty()) {
        std::vector<int> P = std::move(work.back());
        work.pop_back();
        if (int(P.size()) <= r) {
            parts.push_back(std::move(P));
            continue;
        }
        for (int v : P) in[v] = 1;
        int far = bfs_order(adj, in, *std::min_element(P.begin(), P.end()), mark, ++stamp).back();
        std::vector<int> order = bfs_order(adj, in, far, mark, ++stamp);
        for (int v : P) in[v] = 0;
        size_t half = (order.size() + 1) / 2;
        for (auto [lo, hi] : {std::pair{size_t(0), half}, std::pair{half, order.size()}}) {
            for (size_t i = lo; i < hi; ++i) in[order[i]] = 1;
            ++stamp;
            for (size_t i = lo; i < hi; ++i)
                if (mark[order[i]] != stamp) work.push_back(bfs_order(adj, in, order[i], mark, stamp));
            for (size_t i = lo; i < hi; ++i) in[order[i]] = 0;
        }
    }

    // Merge adjacent parts while they fit, smallest combined size first.
    std::vector<int> part(n);
    std::vector<int> size(parts.size());
    for (int i = 0; i < int(parts.size()); ++i) {
        size[i] = int(parts[i].size());
        for (int v : parts[i]) part[v] = i;
    }
    std::vector<int> root(parts.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (;;) {
        int ba = -1, bb = -1, best = r + 1;
        for (int v = 0; v < n; ++v)
            for (int w : adj[v]) {
                int a = find(part[v]), b = find(part[w]);
                if (a == b || size[a] + size[b] >= best) continue;
                best = size[a] + size[b];
                ba = std::min(a, b), bb = std::max(a, b);
            }
        if (ba < 0) break;
        root[bb] = ba;
        size[ba] += size[bb];
    }
    std::map<int, std::vector<int>> merged;
    for (int v = 0; v < n; ++v) merged[find(part[v])].push_back(v);

    // Pack the remaining parts into regions of at most r nodes, largest first.
    std::vector<std::vector<int>> pieces;
    for (auto& [k, vs] : merged) pieces.push_back(std::move(vs));
    std::stable_sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    RDivision rd;
    for (auto& p : pieces) {
        auto it = std::find_if(rd.regions.begin(), rd.regions.end(),
                               [&](const auto& reg) { return int(reg.size() + p.size()) <= r; });
        if (it == rd.regions.end())
            rd.regions.push_back(p);
        else
            it->insert(it->end(), p.begin(), p.end());
    }
    for (auto& reg : rd.regions) std::sort(reg.begin(), reg.end());
    std::sort(rd.regions.begin(), rd.regions.end());

    std::vector<int> region(n);
    for (int i = 0; i < int(rd.regions.size()); ++i)
        for (int v : rd.regions[i]) region[v] = i;
    rd.boundary.assign(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v])
            if (region[w] != region[v]) rd.boundary[v] = 1;
    return rd;
}

std::string check_r_division(const std::vector<std::vector<int>>& adj, const RDivision& rd, int r) {
    int n = int(adj.size());
    if (int(rd.boundary.size()) != n) return "boundary flags have wrong length";
    std::vector<int> count(n, 0), region(n, -1);
    for (int i = 0; i < int(rd.regions.size()); ++i) {
        if (int(rd.regions[i].size()) > r) return "region " + std::to_string(i) + " has more than r nodes";
        for (int v : rd.regions[i]) {
            if (v < 0 || v >= n) return "region " + std::to_string(i) + " holds an unknown node";
            ++count[v];
            region[v] = i;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (count[v] == 0) return "node " + std::to_string(v) + " is in no region";
        if (rd.boundary[v]) continue;
        if (count[v] > 1) return "interior node " + std::to_string(v) + " is in several regions";
        for (int w : adj[v]) {
            const auto& reg = rd.regions[region[v]];
            if (!std::binary_search(reg.begin(), reg.end(), w))
                return "interior node " + std::to_string(v) + " has a neighbour outside its region";
        }
    }
    return "";
}

int StarClustering::max_centers() const {
    int m = 0;
    for (const Cluster& c : clusters) m = std::max(m, int(c.centers.size()));
    return m;
}

long StarClustering::total_centers() const {
    long t = 0;
    for (const Cluster& c : clusters) t += long(c.centers.size());
    return t;
}

nlohmann::json StarClustering::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const Cluster& c : clusters) cs.push_back({{"members", c.members}, {"centers", c.centers}});
    return {{"schema", 1},
            {"r", r},
            {"dual_nodes", dual_nodes},
            {"regions", regions},
            {"max_region_boundary", max_region_boundary},
            {"total_region_boundary", total_region_boundary},
            {"max_centers", max_centers()},
            {"total_centers", total_centers()},
            {"clusters", cs}};
}

StarClustering star_clustering(const Instance& inst, int r, uint64_t seed, const ClusteringOptions& opt) {
    return star_clustering(inst, build_stacking(inst, seed), r, opt);
}

StarClustering star_clustering(const Instance& inst, const Stacking& st, int r, const ClusteringOptions& opt) {
    if (r < 1) throw std::invalid_argument("r must be at least 1");
    StarClustering sc;
    sc.r = r;
    if (inst.n() == 0) return sc;
    AugmentedDual ad = augment_dual(inst, st);
    sc.dual_nodes = ad.nodes();
    {
        std::vector<int> mark(ad.nodes(), -1);
        std::vector<char> all(ad.nodes(), 1);
        if (int(bfs_order(ad.adj, all, 0, mark, 0).size()) != ad.nodes())
            throw NotConnected("intersection graph is not connected");
    }
    RDivision rd = planar_r_division(ad.adj, r);
    sc.regions = int(rd.regions.size());
    sc.max_region_boundary = rd.max_boundary();
    sc.total_region_boundary = rd.total_boundary();

    std::map<std::vector<int>, std::vector<int>> found;  // members -> centers
    for (const auto& reg : rd.regions) {
        std::vector<int> R, S;
        for (int v : reg) {
            R.push_back(ad.object_of_node[v]);
            if (rd.boundary[v]) S.push_back(ad.object_of_node[v]);
        }
        sort_unique(R);
        sort_unique(S);
        std::vector<std::vector<int>> comps;
        if (opt.split_components) {
            std::vector<int> comp(R.size(), -1);
            for (size_t i = 0; i < R.size(); ++i) {
                if (comp[i] >= 0) continue;
                comp[i] = int(comps.size());
                std::vector<size_t> stack{i};
                std::vector<int> members;
                while (!stack.empty()) {
                    size_t a = stack.back();
                    stack.pop_back();
                    members.push_back(R[a]);
                    for (size_t b = 0; b < R.size(); ++b)
                        if (comp[b] < 0 && objects_intersect(inst.objects[R[a]], inst.objects[R[b]]))
                            comp[b] = comp[i], stack.push_back(b);
                }
                std::sort(members.begin(), members.end());
                comps.push_back(std::move(members));
            }
        } else {
            comps.push_back(R);
        }
        for (auto& C : comps) {
            std::vector<int> centers;
            std::set_intersection(C.begin(), C.end(), S.begin(), S.end(), std::back_inserter(centers));
            auto& slot = found[C];
            slot.insert(slot.end(), centers.begin(), centers.end());
            sort_unique(slot);
        }
    }
    for (auto& [members, centers] : found) {
        Cluster c{members, centers};
        // only a single region has no boundary nodes
        if (c.centers.empty()) c.centers.push_back(c.members.front());
        sc.clusters.push_back(std::move(c));
    }
    return sc;
}

ClusteringReport verify_star_clustering(const Instance& inst, const StarClustering& sc, int r) {
    ClusteringReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.problems.push_back(msg);
    };
    int n = inst.n();
    reference::ExplicitGraph g = reference::explicit_graph(inst);
    std::vector<char> covered(n, 0);
    for (int ci = 0; ci < int(sc.clusters.size()); ++ci) {
        const Cluster& c = sc.clusters[ci];
        std::string name = "cluster " + std::to_string(ci);
        if (c.members.empty()) {
            fail(name + " is empty");
            continue;
        }
        if (int(c.members.size()) > r) fail(name + " has more than r objects");
        std::vector<char> in(n, 0), center(n, 0);
        for (int d : c.members) {
            if (d < 0 || d >= n) {
                fail(name + " holds an unknown object");
                return rep;
            }
            in[d] = covered[d] = 1;
        }
        if (c.centers.empty()) fail(name + " has no star center");
        for (int s : c.centers) {
            if (s < 0 || s >= n || !in[s]) {
                fail(name + " has a star center outside the cluster");
                return rep;
            }
            center[s] = 1;
        }
        auto sub = reference::induced(g, c.members);
        for (int d : reference::bfs(sub, 0))
            if (d == reference::kInf) {
                fail(name + " is not connected");
                break;
            }
        // C minus the closed neighbourhoods of the star centers
        std::vector<char> interior = in;
        for (int s : c.centers) {
            interior[s] = 0;
            for (int w : g.adj[s]) interior[w] = 0;
        }
        for (int v = 0; v < n; ++v) {
            if (in[v]) continue;
            bool touches = false, sees_center = false;
            for (int w : g.adj[v]) touches |= bool(interior[w]), sees_center |= bool(center[w]);
            if (touches && !sees_center) {
                fail(name + ": object " + std::to_string(v) + " touches the interior but no star center");
                if (rep.witness_node < 0) rep.witness_node = v, rep.witness_cluster = ci;
                break;
            }
        }
    }
    for (int d = 0; d < n; ++d)
        if (!covered[d]) {
            fail("object " + std::to_string(d) + " is in no cluster");
            break;
        }
    return rep;
}

}  // namespace unionpath
