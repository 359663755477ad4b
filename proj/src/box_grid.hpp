#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace unionpath::detail {

// Uniform bucket grid over axis-aligned boxes {x0, y0, x1, y1}.
class BoxGrid {
public:
    using Box = std::array<double, 4>;

    explicit BoxGrid(const std::vector<Box>& boxes, double cell = 0) : boxes_(boxes) {
        if (boxes_.empty()) return;
        if (cell <= 0) {
            double sum = 0;
            for (const Box& b : boxes_) sum += std::max(b[2] - b[0], b[3] - b[1]);
            cell = std::max(sum / double(boxes_.size()), 1e-6);
        }
        cell_ = cell;
        for (int i = 0; i < int(boxes_.size()); ++i) {
            auto [cx0, cy0] = cell_of(boxes_[i][0], boxes_[i][1]);
            auto [cx1, cy1] = cell_of(boxes_[i][2], boxes_[i][3]);
            for (int64_t x = cx0; x <= cx1; ++x)
                for (int64_t y = cy0; y <= cy1; ++y) cells_[key(x, y)].push_back(i);
        }
    }

    // Pairs i < j whose boxes overlap (closed, with slack).
    std::vector<std::pair<int, int>> overlapping_pairs(double slack = 0) const {
        std::vector<std::pair<int, int>> out;
        for (const auto& [k, ids] : cells_) {
            for (size_t a = 0; a < ids.size(); ++a)
                for (size_t b = a + 1; b < ids.size(); ++b) {
                    int i = std::min(ids[a], ids[b]), j = std::max(ids[a], ids[b]);
                    const Box &p = boxes_[i], &q = boxes_[j];
                    if (p[2] < q[0] - slack || q[2] < p[0] - slack || p[3] < q[1] - slack || q[3] < p[1] - slack)
                        continue;
                    // report each pair only from the cell holding the corner of the overlap
                    double rx = std::min(std::max(p[0], q[0]), std::min(p[2], q[2]));
                    double ry = std::min(std::max(p[1], q[1]), std::min(p[3], q[3]));
                    auto [cx, cy] = cell_of(rx, ry);
                    if (key(cx, cy) != k) continue;
                    out.emplace_back(i, j);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Box ids whose cells meet the query box.
    void query(const Box& q, std::vector<int>& out) const {
        out.clear();
        if (boxes_.empty()) return;
        auto [cx0, cy0] = cell_of(q[0], q[1]);
        auto [cx1, cy1] = cell_of(q[2], q[3]);
        for (int64_t x = cx0; x <= cx1; ++x)
            for (int64_t y = cy0; y <= cy1; ++y) {
                auto it = cells_.find(key(x, y));
                if (it == cells_.end()) continue;
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

private:
    std::pair<int64_t, int64_t> cell_of(double x, double y) const {
        return {int64_t(std::floor(x / cell_)), int64_t(std::floor(y / cell_))};
    }
    static int64_t key(int64_t x, int64_t y) { return (x << 32) ^ int64_t(uint32_t(int32_t(y))); }

    std::vector<Box> boxes_;
    double cell_ = 1;
    std::unordered_map<int64_t, std::vector<int>> cells_;
};

}  // namespace unionpath::detail
