#include "unionpath/sssp.hpp"

#include <algorithm>

#include "box_grid.hpp"

namespace unionpath {

namespace {

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool boxes_meet(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return !(a[2] < b[0] - kEps || b[2] < a[0] - kEps || a[3] < b[1] - kEps || b[3] < a[1] - kEps);
}

// Faces of s incident to a located point.
template <class F>
void faces_around(const Subdivision& s, const Location& loc, F&& visit) {
    if (loc.kind == Location::InFace) {
        visit(loc.index);
    } else if (loc.kind == Location::OnEdge) {
        visit(s.half_edges[2 * loc.index].face);
        visit(s.half_edges[2 * loc.index + 1].face);
    } else {
        for (int h : s.out_sorted[loc.index]) visit(s.half_edges[h].face);
    }
}

}  // namespace

bool LevelUnion::interior(const Point& p) const {
    if (empty) return false;
    Location loc = u.sub.locate(p);
    return loc.kind == Location::InFace && u.inside[loc.index];
}

LevelUnion level_union(const Instance& inst, const std::vector<int>& ids) {
    LevelUnion lu;
    lu.empty = ids.empty();
    if (lu.empty) return lu;
    lu.u = union_of_objects(inst, ids);
    std::vector<detail::BoxGrid::Box> boxes;
    for (const Piece& p : lu.u.sub.edges) boxes.push_back(p.bbox());
    lu.edge_grid = std::make_shared<detail::BoxGrid>(boxes);
    return lu;
}

nlohmann::json SsspResult::to_json() const {
    return {{"schema", 1}, {"source", source}, {"dist", dist}};
}

std::pair<std::vector<int>, std::vector<int>> initial_levels(const Instance& inst, int src) {
    std::vector<int> l1;
    for (const GeomObject& o : inst.objects)
        if (o.id != src && objects_intersect(o, inst.objects[src])) l1.push_back(o.id);
    return {{src}, l1};
}

std::vector<int> faces_intersecting_union(const SimplifiedStacking& ss, const LevelUnion& lu,
                                          const std::vector<int>& prev) {
    const Subdivision& s = ss.sub;
    std::vector<char> seen(s.num_faces(), 0);
    std::vector<int> stack, out;
    for (int d : prev)
        for (int f : ss.incidence[d])
            if (!seen[f]) seen[f] = 1, stack.push_back(f);
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        out.push_back(f);
        for (int h : s.boundary(f)) {
            int g = s.half_edges[s.half_edges[h].twin].face;
            if (seen[g] || ss.owner[g] < 0) continue;
            // an edge on the union boundary or outside the union is not crossed
            if (!lu.interior(s.edges[s.half_edges[h].edge].midpoint())) continue;
            seen[g] = 1;
            stack.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> candidates_in_face(const std::vector<int>& K, const std::vector<int>& dist, int j) {
    std::vector<int> out;
    for (int d : K)
        if (dist[d] == kUnreached || dist[d] >= j) out.push_back(d);
    return out;
}

std::vector<int> test_candidates(const Instance& inst, const SimplifiedStacking& ss, int f,
                                 const std::vector<int>& cand, const LevelUnion& lu,
                                 const std::vector<int>& dist, int j, bool verify, FaceTestStats* stats) {
    FaceTestStats local;
    FaceTestStats& st = stats ? *stats : local;
    if (cand.empty() && !verify) return {};
    const Subdivision& s = ss.sub;

    // A_f: the face boundary (label 1) and the level union boundary inside the closed face (label 2).
    std::vector<Piece> red;
    std::array<double, 4> fbox{1e300, 1e300, -1e300, -1e300};
    for (int h : s.boundary(f)) {
        Piece p = s.edges[s.half_edges[h].edge];
        p.label = 1;
        p.tag = -1;
        auto b = p.bbox();
        fbox = {std::min(fbox[0], b[0]), std::min(fbox[1], b[1]), std::max(fbox[2], b[2]), std::max(fbox[3], b[3])};
        red.push_back(p);
    }
    std::vector<Piece> pieces = red;
    if (!lu.empty) {
        std::vector<int> near;
        lu.edge_grid->query(fbox, near);
        for (int e : near) {
            if (!boxes_meet(lu.u.sub.edges[e].bbox(), fbox)) continue;
            Piece p = lu.u.sub.edges[e];
            p.label = 2;
            p.tag = -1;
            pieces.push_back(p);
        }
        if (pieces.size() > red.size()) {
            // split against the face boundary, then drop what lies outside the closed face
            std::vector<Piece> split = split_pieces(std::move(pieces), {true, true});
            pieces.clear();
            for (const Piece& p : split) {
                if (!(p.label & 1)) {
                    Location loc = s.locate(p.midpoint());
                    if (loc.kind != Location::InFace || loc.index != f) continue;
                }
                pieces.push_back(p);
            }
        }
    }
    Subdivision A = build_from_pieces(std::move(pieces), {false, false});
    int C = A.num_faces();
    std::vector<char> in_f(C, 0), in_u(C, 0);
    std::vector<int> regions, outside;
    for (int c = 1; c < C; ++c) {
        Point p = A.face_sample(c);
        Location loc = s.locate(p);
        if (loc.kind != Location::InFace || loc.index != f) continue;
        in_f[c] = 1;
        in_u[c] = lu.interior(p);
        regions.push_back(c);
        if (!in_u[c]) outside.push_back(c);
    }
    st.regions = int(regions.size());
    st.outside_regions = int(outside.size());
    if (regions.empty()) throw DegeneracyDetected("face has no region");

    if (outside.empty()) {
        st.full = true;
        return cand;
    }
    if (dist[ss.owner[f]] == j - 2) {
        if (verify && !cand.empty()) throw AssertionFailed("owner two levels back but candidates remain");
        return {};
    }
    if (verify)
        for (int c : outside)
            if (!A.faces[c].holes.empty()) throw AssertionFailed("outside region is not simply connected");
    if (cand.empty()) return {};

    // R_f(D): regions touching X_f(D), or the region holding p_D.
    std::vector<int> slot(inst.n(), -1);
    for (int i = 0; i < int(cand.size()); ++i) slot[cand[i]] = i;
    std::vector<std::vector<int>> R(cand.size());
    auto attach = [&](int i, const Location& loc) {
        faces_around(A, loc, [&](int c) {
            if (in_f[c]) R[i].push_back(c);
        });
    };
    std::vector<Arc> blue;
    for (int d : cand) blue.insert(blue.end(), inst.objects[d].boundary.begin(), inst.objects[d].boundary.end());
    for (const PurpleHit& hit : red_blue_intersections(red, blue)) attach(slot[blue[hit.blue].object], A.locate(hit.p));
    for (int e = 0; e < int(A.edges.size()); ++e) {
        int o = A.edges[e].arc.object;
        if (!(A.edges[e].label & 1) || slot[o] < 0) continue;
        for (int k = 0; k < 2; ++k) {
            int c = A.half_edges[2 * e + k].face;
            if (in_f[c]) R[slot[o]].push_back(c);
        }
    }
    for (int h : s.boundary(f)) {
        int v = s.half_edges[h].origin;
        for (int o : ss.vertex_objects[v])
            if (slot[o] >= 0) attach(slot[o], A.locate(s.vertices[v]));
    }

    std::vector<char> hit(cand.size(), 0);
    for (int i = 0; i < int(cand.size()); ++i) {
        if (R[i].empty()) {
            Location loc = A.locate(inst.objects[cand[i]].sample_point());
            attach(i, loc);
            if (R[i].empty()) {
                // the boundary avoids f's closure except through points we did not see
                for (const Arc& a : inst.objects[cand[i]].boundary) {
                    attach(i, A.locate({0.5 * (a.left.x + a.right.x), a.y_at(0.5 * (a.left.x + a.right.x))}));
                    if (!R[i].empty()) break;
                }
            }
            if (R[i].empty() && verify) throw AssertionFailed("candidate has no region in its face");
        }
        sort_unique(R[i]);
        for (int c : R[i])
            if (in_u[c]) hit[i] = 1;
    }

    // Outside regions: a crossing of a region edge that is not on the face boundary
    // enters the union.
    for (int c : outside) {
        std::vector<int> members;
        for (int i = 0; i < int(cand.size()); ++i)
            if (!hit[i] && std::binary_search(R[i].begin(), R[i].end(), c)) members.push_back(i);
        if (members.empty()) continue;
        std::vector<Piece> rim;
        std::vector<int> rim_edges;
        for (int h : A.cycle(A.faces[c].outer)) rim_edges.push_back(A.half_edges[h].edge);
        sort_unique(rim_edges);
        for (int e : rim_edges) rim.push_back(A.edges[e]);
        std::vector<Arc> arcs;
        for (int i : members) arcs.insert(arcs.end(), inst.objects[cand[i]].boundary.begin(), inst.objects[cand[i]].boundary.end());
        ++st.sweeps;
        red_blue_intersections(rim, arcs, [&](const PurpleHit& ph) {
            if (rim[ph.red].label & 1) return false;
            hit[slot[arcs[ph.blue].object]] = 1;
            return true;
        });
        // Uncrossed runs of union boundary lie wholly inside or outside D; test one point of each.
        std::vector<Point> runs;
        std::vector<int> cyc = A.cycle(A.faces[c].outer);
        for (size_t k = 0; k < cyc.size(); ++k) {
            const Piece& e = A.edges[A.half_edges[cyc[k]].edge];
            const Piece& before = A.edges[A.half_edges[cyc[(k + cyc.size() - 1) % cyc.size()]].edge];
            if (e.label & 1) continue;
            if (!(before.label & 1) && !runs.empty()) continue;
            runs.push_back(e.midpoint());
        }
        for (int i : members)
            for (const Point& p : runs)
                if (!hit[i] && object_contains_point(inst.objects[cand[i]], p) == Containment::Interior) hit[i] = 1;
    }

    std::vector<int> out;
    for (int i = 0; i < int(cand.size()); ++i)
        if (hit[i]) out.push_back(cand[i]);
    return out;
}

SsspResult sssp(const Instance& inst, const SimplifiedStacking& ss, int src, const SsspOptions& opt) {
    int n = inst.n();
    if (src < 0 || src >= n) throw std::out_of_range("source id out of range");
    SsspResult res;
    res.source = src;
    res.dist.assign(n, kUnreached);
    res.face_visits.assign(ss.sub.num_faces(), 0);
    auto [l0, l1] = initial_levels(inst, src);
    res.dist[src] = 0;
    for (int d : l1) res.dist[d] = 1;
    res.levels = {l0};
    if (!l1.empty()) res.levels.push_back(l1);

    for (int j = 2; res.levels.size() == size_t(j); ++j) {
        const std::vector<int>& prev = res.levels[j - 1];
        LevelUnion lu = level_union(inst, prev);
        std::vector<int> next;
        for (int f : faces_intersecting_union(ss, lu, prev)) {
            if (++res.face_visits[f] > 3 && opt.verify) throw AssertionFailed("face in more than three levels");
            res.stats.max_face_visits = std::max(res.stats.max_face_visits, res.face_visits[f]);
            FaceTestStats fs;
            std::vector<int> cand = candidates_in_face(ss.K[f], res.dist, j);
            for (int d : test_candidates(inst, ss, f, cand, lu, res.dist, j, opt.verify, &fs)) {
                if (res.dist[d] == kUnreached) {
                    res.dist[d] = j;
                    next.push_back(d);
                }
            }
            ++res.stats.face_tests;
            res.stats.full_faces += fs.full;
            res.stats.regions += fs.regions;
            res.stats.outside_regions += fs.outside_regions;
            res.stats.region_sweeps += fs.sweeps;
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        res.levels.push_back(next);
    }
    res.stats.levels = int(res.levels.size());
    return res;
}

SsspResult sssp(const Instance& inst, int src, uint64_t seed, const SsspOptions& opt) {
    if (src < 0 || src >= inst.n()) throw std::out_of_range("source id out of range");
    return sssp(inst, build_simplified(inst, seed), src, opt);
}

}  // namespace unionpath
