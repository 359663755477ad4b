#include "unionpath/stacking.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace unionpath {

namespace {

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

int Stacking::union_faces() const {
    return int(std::count_if(owner.begin(), owner.end(), [](int o) { return o >= 0; }));
}

int SimplifiedStacking::union_faces() const {
    return int(std::count_if(owner.begin(), owner.end(), [](int o) { return o >= 0; }));
}

std::vector<int> random_permutation(int n, uint64_t seed) {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(pi.begin(), pi.end(), rng);
    return pi;
}

Stacking build_stacking(const Instance& inst, uint64_t seed) {
    return build_stacking(inst, random_permutation(inst.n(), seed));
}

Stacking build_stacking(const Instance& inst, const std::vector<int>& pi) {
    Stacking st;
    st.pi = pi;
    st.rank.assign(inst.n(), -1);
    for (int i = 0; i < int(pi.size()); ++i) st.rank[pi[i]] = i;
    st.arrangement = build_arrangement(inst.arcs);
    const Subdivision& arr = st.arrangement;
    auto sets = face_depth_sets(arr);
    st.cell_top.assign(arr.num_faces(), -1);
    for (int f = 0; f < arr.num_faces(); ++f)
        for (int o : sets[f])
            if (st.cell_top[f] < 0 || st.rank[o] > st.rank[st.cell_top[f]]) st.cell_top[f] = o;

    std::vector<Piece> kept;
    for (int e = 0; e < int(arr.edges.size()); ++e) {
        if (st.cell_top[arr.half_edges[2 * e].face] == st.cell_top[arr.half_edges[2 * e + 1].face]) continue;
        Piece p = arr.edges[e];
        p.tag = e;
        kept.push_back(p);
    }
    st.sub = build_from_pieces(std::move(kept), {false, false});
    st.owner.assign(st.sub.num_faces(), -1);
    for (int h = 0; h < int(st.sub.half_edges.size()); ++h) {
        const HalfEdge& he = st.sub.half_edges[h];
        int ah = 2 * st.sub.edges[he.edge].tag + (he.forward ? 0 : 1);
        st.owner[he.face] = st.cell_top[arr.half_edges[ah].face];
    }
    return st;
}

SimplifiedStacking simplify_stacking(const Stacking& st) {
    const Subdivision& s = st.sub;
    int F = s.num_faces();
    // Faces reachable from a hole of a union face without crossing that face.
    auto enclosed = [&](int f, auto&& visit) {
        std::vector<int> queue;
        std::vector<char> seen(F, 0);
        seen[f] = 1;
        for (int h : s.faces[f].holes)
            for (int g : s.cycle(h)) {
                int nb = s.half_edges[s.half_edges[g].twin].face;
                if (!seen[nb]) seen[nb] = 1, queue.push_back(nb);
            }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int g = queue[qi];
            visit(g);
            for (int h : s.boundary(g)) {
                int nb = s.half_edges[s.half_edges[h].twin].face;
                if (!seen[nb]) seen[nb] = 1, queue.push_back(nb);
            }
        }
    };
    std::vector<char> absorbed(F, 0);
    for (int f = 1; f < F; ++f)
        if (st.owner[f] >= 0 && !s.faces[f].holes.empty()) enclosed(f, [&](int g) { absorbed[g] = 1; });
    std::vector<int> target(F);
    std::iota(target.begin(), target.end(), 0);
    for (int f = 1; f < F; ++f)
        if (st.owner[f] >= 0 && !absorbed[f] && !s.faces[f].holes.empty()) enclosed(f, [&](int g) { target[g] = f; });

    std::vector<Piece> kept;
    for (int e = 0; e < int(s.edges.size()); ++e) {
        if (target[s.half_edges[2 * e].face] == target[s.half_edges[2 * e + 1].face]) continue;
        Piece p = s.edges[e];
        p.tag = e;
        kept.push_back(p);
    }
    SimplifiedStacking ss;
    ss.sub = build_from_pieces(std::move(kept), {false, false});
    ss.owner.assign(ss.sub.num_faces(), -1);
    for (int h = 0; h < int(ss.sub.half_edges.size()); ++h) {
        const HalfEdge& he = ss.sub.half_edges[h];
        int sh = 2 * ss.sub.edges[he.edge].tag + (he.forward ? 0 : 1);
        ss.owner[he.face] = st.owner[target[s.half_edges[sh].face]];
    }
    for (int f = 1; f < ss.sub.num_faces(); ++f)
        if (ss.owner[f] >= 0 && !ss.sub.faces[f].holes.empty())
            throw DegeneracyDetected("simplified face is not simply connected");
    ss.K.assign(ss.sub.num_faces(), {});
    ss.Kstar.assign(ss.sub.num_faces(), {});
    return ss;
}

std::vector<PurpleHit> red_blue_intersections(const std::vector<Piece>& red, const std::vector<Arc>& blue,
                                              const std::function<bool(const PurpleHit&)>& on_hit) {
    int R = int(red.size());
    std::vector<Piece> pcs(red);
    std::vector<int> groups(R, -1);
    std::vector<int> objs;
    for (const Arc& a : blue) objs.push_back(a.object);
    sort_unique(objs);
    int solo = int(objs.size());
    for (const Arc& a : blue) {
        pcs.push_back(Piece::whole(a));
        groups.push_back(a.object >= 0 ? int(std::lower_bound(objs.begin(), objs.end(), a.object) - objs.begin()) : solo++);
    }
    std::vector<PurpleHit> hits;
    Sweep sweep(pcs, groups);
    sweep.run([R](int a, int b) { return (a < R) != (b < R); },
              [&](int a, int b, const Point& p) -> unsigned {
                  bool a_red = a < R;
                  PurpleHit hit{a_red ? a : b, (a_red ? b : a) - R, p};
                  hits.push_back(hit);
                  if (on_hit && on_hit(hit)) return a_red ? 2u : 1u;
                  return 0u;
              });
    std::sort(hits.begin(), hits.end(), [](const PurpleHit& u, const PurpleHit& v) {
        if (u.red != v.red) return u.red < v.red;
        if (u.blue != v.blue) return u.blue < v.blue;
        return u.p < v.p;
    });
    return hits;
}

void compute_conflict_lists(SimplifiedStacking& ss, const Stacking& st, const Instance& inst) {
    const Subdivision& s = ss.sub;
    int F = s.num_faces();
    ss.K.assign(F, {});
    ss.Kstar.assign(F, {});
    auto add = [&](int f, int o) {
        if (ss.owner[f] >= 0) ss.K[f].push_back(o);
    };

    // Edges are arrangement edges, so their endpoints are arrangement vertices.
    const Subdivision& arr = st.arrangement;
    std::vector<std::vector<int>> arr_vertex_objects(arr.vertices.size());
    for (int v = 0; v < int(arr.vertices.size()); ++v) {
        for (int h : arr.out_sorted[v]) arr_vertex_objects[v].push_back(arr.edges[arr.half_edges[h].edge].arc.object);
        sort_unique(arr_vertex_objects[v]);
    }
    ss.vertex_objects.assign(s.vertices.size(), {});
    for (int e = 0; e < int(s.edges.size()); ++e) {
        int a = st.sub.edges[s.edges[e].tag].tag;
        for (int k = 0; k < 2; ++k)
            ss.vertex_objects[s.half_edges[2 * e + k].origin] = arr_vertex_objects[arr.half_edges[2 * a + k].origin];
    }

    for (int e = 0; e < int(s.edges.size()); ++e)
        for (int k = 0; k < 2; ++k) add(s.half_edges[2 * e + k].face, s.edges[e].arc.object);
    for (int v = 0; v < int(s.vertices.size()); ++v)
        for (int h : s.out_sorted[v])
            for (int o : ss.vertex_objects[v]) add(s.half_edges[h].face, o);

    for (const PurpleHit& hit : red_blue_intersections(s.edges, inst.arcs)) {
        int o = inst.arcs[hit.blue].object;
        for (int k = 0; k < 2; ++k) {
            int f = s.half_edges[2 * hit.red + k].face;
            if (ss.owner[f] < 0) continue;
            ss.K[f].push_back(o);
            ss.Kstar[f].emplace_back(o, hit.p);
        }
    }

    for (const GeomObject& o : inst.objects) {
        Location loc = s.locate(o.sample_point());
        if (loc.kind == Location::InFace) {
            add(loc.index, o.id);
        } else if (loc.kind == Location::OnEdge) {
            add(s.half_edges[2 * loc.index].face, o.id);
            add(s.half_edges[2 * loc.index + 1].face, o.id);
        } else {
            for (int h : s.out_sorted[loc.index]) add(s.half_edges[h].face, o.id);
        }
    }

    ss.incidence.assign(inst.n(), {});
    for (int f = 0; f < F; ++f) {
        sort_unique(ss.K[f]);
        std::sort(ss.Kstar[f].begin(), ss.Kstar[f].end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second < b.second;
        });
        for (int o : ss.K[f]) ss.incidence[o].push_back(f);
    }
}

SimplifiedStacking build_simplified(const Instance& inst, uint64_t seed) {
    Stacking st = build_stacking(inst, seed);
    SimplifiedStacking ss = simplify_stacking(st);
    compute_conflict_lists(ss, st, inst);
    return ss;
}

nlohmann::json SimplifiedStacking::to_json() const {
    nlohmann::json faces = nlohmann::json::array();
    for (int f = 1; f < sub.num_faces(); ++f) {
        if (owner[f] < 0) continue;
        faces.push_back({{"face", f}, {"owner", owner[f]}, {"K", K[f]}, {"crossings", Kstar[f].size()}});
    }
    return {{"faces", faces}, {"vertices", sub.vertices.size()}, {"edges", sub.edges.size()}};
}

}  // namespace unionpath
