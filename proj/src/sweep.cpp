#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "unionpath/subdivision.hpp"

namespace unionpath {

double Piece::y_at(double x) const {
    if (x <= left.x) return left.y;
    if (x >= right.x) return right.y;
    return arc.y_at(x);
}

Point Piece::midpoint() const {
    double x = 0.5 * (left.x + right.x);
    return {x, y_at(x)};
}

std::array<double, 4> Piece::bbox() const {
    double y0 = std::min(left.y, right.y), y1 = std::max(left.y, right.y);
    if (arc.kind == ArcKind::Circular && arc.cx > left.x && arc.cx < right.x) {
        if (arc.upper)
            y1 = std::max(y1, arc.cy + arc.r);
        else
            y0 = std::min(y0, arc.cy - arc.r);
    }
    return {left.x, y0, right.x, y1};
}

int Piece::interior_side() const { return arc.interior; }

std::vector<Point> piece_crossings(const Piece& a, const Piece& b) {
    if (a.arc.id >= 0 && a.arc.id == b.arc.id) return {};
    double lo = std::max(a.left.x, b.left.x), hi = std::min(a.right.x, b.right.x);
    if (hi - lo <= kEps) return {};
    auto ba = a.bbox(), bb = b.bbox();
    if (ba[3] < bb[1] - kEps || bb[3] < ba[1] - kEps) return {};
    std::vector<Point> out;
    for (const Point& p : arc_intersections(a.arc, b.arc)) {
        if (p.x <= lo + kEps || p.x >= hi - kEps) continue;
        out.push_back(p);
    }
    return out;
}

struct Sweep::Impl {
    struct Event {
        Point p;
        int kind;  // 0 end, 1 crossing, 2 start
        int a, b, k;
    };
    struct Later {
        bool operator()(const Event& u, const Event& v) const {
            if (u.p.x != v.p.x) return u.p.x > v.p.x;
            if (u.p.y != v.p.y) return u.p.y > v.p.y;
            if (u.kind != v.kind) return u.kind > v.kind;
            if (u.a != v.a) return u.a > v.a;
            if (u.b != v.b) return u.b > v.b;
            return u.k > v.k;
        }
    };

    const std::vector<Piece>& pc;
    const std::vector<int>& groups;
    std::priority_queue<Event, std::vector<Event>, Later> queue;
    std::vector<int> status, where;
    std::vector<char> dead;
    std::unordered_map<uint64_t, char> pair_state;  // 1 pending, 2 done
    std::vector<std::vector<int>> group_members;
    Point now;

    Impl(const std::vector<Piece>& p, const std::vector<int>& g) : pc(p), groups(g) {
        int n = int(pc.size());
        where.assign(n, -1);
        dead.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            if (!(pc[i].left.x < pc[i].right.x)) continue;
            queue.push({pc[i].left, 2, i, -1, 0});
            queue.push({pc[i].right, 0, i, -1, 0});
        }
        if (!groups.empty()) {
            int m = 0;
            for (int g2 : groups) m = std::max(m, g2 + 1);
            group_members.resize(m);
            for (int i = 0; i < n; ++i)
                if (groups[i] >= 0) group_members[groups[i]].push_back(i);
        }
    }

    uint64_t key(int u, int v, int k) const { return (uint64_t(u) * pc.size() + uint64_t(v)) * 4 + uint64_t(k); }

    // s lies below n immediately to the right of the current point, where n starts.
    bool below(int s, int n) const {
        double ys = pc[s].y_at(now.x);
        double tol = kEps * (1 + std::abs(now.y));
        if (ys < now.y - tol) return true;
        if (ys > now.y + tol) return false;
        // tangents point rightward, so their angles lie in [-pi/2, pi/2]
        Point ts = pc[s].tangent_right({now.x, ys}), tn = pc[n].tangent_right(now);
        double as = std::atan2(ts.y, ts.x), an = std::atan2(tn.y, tn.x);
        if (an - as > 1e-12) return true;
        if (as - an > 1e-12) return false;
        return s < n;
    }

    void reindex(int from) {
        for (int i = from; i < int(status.size()); ++i) where[status[i]] = i;
    }

    void check(int i) {  // pair status[i], status[i+1]
        if (i < 0 || i + 1 >= int(status.size())) return;
        int u = std::min(status[i], status[i + 1]), v = std::max(status[i], status[i + 1]);
        std::vector<Point> pts = piece_crossings(pc[u], pc[v]);
        for (int k = 0; k < int(pts.size()); ++k) {
            const Point& p = pts[k];
            if (p.x < now.x - 1e-12 || (p.x <= now.x && p.y < now.y - 1e-12)) continue;
            auto [it, fresh] = pair_state.try_emplace(key(u, v, k), 1);
            if (!fresh) continue;
            queue.push({p, 1, u, v, k});
        }
    }

    void remove(const std::vector<int>& victims) {
        std::vector<int> gaps;
        for (int v : victims) {
            dead[v] = 1;
            if (where[v] >= 0) gaps.push_back(where[v]);
        }
        if (gaps.empty()) return;
        std::sort(gaps.begin(), gaps.end());
        std::vector<int> kept;
        std::vector<int> check_at;
        size_t g = 0;
        for (int i = 0; i < int(status.size()); ++i) {
            if (g < gaps.size() && gaps[g] == i) {
                where[status[i]] = -1;
                ++g;
                if (check_at.empty() || check_at.back() != int(kept.size()) - 1) check_at.push_back(int(kept.size()) - 1);
                continue;
            }
            kept.push_back(status[i]);
        }
        status.swap(kept);
        reindex(0);
        for (int i : check_at) check(i);
    }

    void run(const Report& report, const OnHit& on_hit, int& events) {
        while (!queue.empty()) {
            Event e = queue.top();
            queue.pop();
            ++events;
            now = e.p;
            if (e.kind == 2) {
                int n = e.a;
                if (dead[n]) continue;
                auto it = std::partition_point(status.begin(), status.end(), [&](int s) { return below(s, n); });
                int i = int(it - status.begin());
                status.insert(it, n);
                reindex(i);
                check(i - 1);
                check(i);
            } else if (e.kind == 0) {
                int n = e.a;
                if (dead[n] || where[n] < 0) continue;
                int i = where[n];
                status.erase(status.begin() + i);
                where[n] = -1;
                reindex(i);
                check(i - 1);
            } else {
                uint64_t k = key(e.a, e.b, e.k);
                int u = e.a, v = e.b;
                if (dead[u] || dead[v] || where[u] < 0 || where[v] < 0 || std::abs(where[u] - where[v]) != 1) {
                    pair_state.erase(k);
                    continue;
                }
                pair_state[k] = 2;
                unsigned mask = report(u, v) ? on_hit(u, v, e.p) : 0u;
                if (mask) {
                    std::vector<int> victims;
                    for (int bit = 0; bit < 2; ++bit) {
                        if (!(mask & (1u << bit))) continue;
                        int x = bit == 0 ? u : v;
                        if (!groups.empty() && groups[x] >= 0)
                            victims.insert(victims.end(), group_members[groups[x]].begin(), group_members[groups[x]].end());
                        else
                            victims.push_back(x);
                    }
                    remove(victims);
                    if (!dead[u] && !dead[v] && where[u] >= 0 && where[v] >= 0 && std::abs(where[u] - where[v]) == 1) {
                        int lo = std::min(where[u], where[v]);
                        std::swap(status[lo], status[lo + 1]);
                        reindex(lo);
                        check(lo - 1);
                        check(lo + 1);
                    }
                    continue;
                }
                int lo = std::min(where[u], where[v]);
                std::swap(status[lo], status[lo + 1]);
                reindex(lo);
                check(lo - 1);
                check(lo + 1);
            }
        }
    }
};

Sweep::Sweep(const std::vector<Piece>& pieces, std::vector<int> groups) : pieces_(pieces), groups_(std::move(groups)) {}

void Sweep::run(const Report& report, const OnHit& on_hit) {
    Impl impl(pieces_, groups_);
    impl.run(report, on_hit, events_);
}

}  // namespace unionpath
