#include "eiga/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eiga/errors.hpp"

namespace eiga {

PointGrid::PointGrid(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    Vec3 lo = points_[0], hi = points_[0];
    for (const Vec3& p : points_) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    origin_ = lo;
    const Vec3 span = hi - lo;
    const double diag = span.norm();
    // aim for a few points per cell
    const double target = std::cbrt(static_cast<double>(points_.size()));
    cell_size_ = std::max(diag / std::max(target, 1.0), 1e-12);
    nx_ = std::max(1, static_cast<int>(span.x() / cell_size_) + 1);
    ny_ = std::max(1, static_cast<int>(span.y() / cell_size_) + 1);
    nz_ = std::max(1, static_cast<int>(span.z() / cell_size_) + 1);
    cells_.resize(static_cast<size_t>(nx_) * ny_ * nz_);
    for (size_t i = 0; i < points_.size(); ++i) {
        const int cx = cell_of(points_[i], 0);
        const int cy = cell_of(points_[i], 1);
        const int cz = cell_of(points_[i], 2);
        cells_[(static_cast<size_t>(cz) * ny_ + cy) * nx_ + cx].push_back(static_cast<int>(i));
    }
}

int PointGrid::cell_of(const Vec3& p, int axis) const {
    const int n = axis == 0 ? nx_ : axis == 1 ? ny_ : nz_;
    const double rel = (p[axis] - origin_[axis]) / cell_size_;
    return std::clamp(static_cast<int>(rel), 0, n - 1);
}

const std::vector<int>* PointGrid::cell(int cx, int cy, int cz) const {
    if (cx < 0 || cy < 0 || cz < 0 || cx >= nx_ || cy >= ny_ || cz >= nz_) return nullptr;
    return &cells_[(static_cast<size_t>(cz) * ny_ + cy) * nx_ + cx];
}

int PointGrid::nearest(const Vec3& query) const {
    if (points_.empty()) throw DegenerateInputError("nearest-neighbor query against an empty point set");

    const int qx = cell_of(query, 0);
    const int qy = cell_of(query, 1);
    const int qz = cell_of(query, 2);

    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<int>* bucket) {
        if (!bucket) return;
        for (int idx : *bucket) {  // ascending index order preserves the tie rule
            const double d2 = (points_[idx] - query).squaredNorm();
            if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
                best_d2 = d2;
                best = idx;
            }
        }
    };

    const int max_ring = std::max({nx_, ny_, nz_});
    for (int ring = 0; ring <= max_ring; ++ring) {
        // unscanned cells hold points at distance >= (ring-1)*cell_size;
        // strict '<' keeps exact ties reachable for the index rule
        if (best >= 0) {
            const double safe = (static_cast<double>(ring) - 1.0) * cell_size_;
            if (safe > 0 && best_d2 < safe * safe) break;
        }
        for (int dz = -ring; dz <= ring; ++dz) {
            for (int dy = -ring; dy <= ring; ++dy) {
                for (int dx = -ring; dx <= ring; ++dx) {
                    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) continue;
                    consider(cell(qx + dx, qy + dy, qz + dz));
                }
            }
        }
    }
    return best;
}

}  // namespace eiga
