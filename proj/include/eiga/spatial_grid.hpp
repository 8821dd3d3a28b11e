#pragma once

#include <vector>

#include "eiga/types.hpp"

namespace eiga {

// Uniform hash grid for nearest-neighbor queries over a fixed point set.
// Ties on distance resolve to the lower point index, independent of the
// grid layout.
class PointGrid {
public:
    explicit PointGrid(std::vector<Vec3> points);

    // Index of the nearest point (lowest index on exact ties).
    int nearest(const Vec3& query) const;

    const std::vector<Vec3>& points() const { return points_; }
    bool empty() const { return points_.empty(); }

private:
    struct CellKey {
        int x, y, z;
    };
    int cell_of(const Vec3& p, int axis) const;
    const std::vector<int>* cell(int cx, int cy, int cz) const;

    std::vector<Vec3> points_;
    Vec3 origin_ = Vec3::Zero();
    double cell_size_ = 1.0;
    int nx_ = 1, ny_ = 1, nz_ = 1;
    std::vector<std::vector<int>> cells_;  // per-cell point indices, ascending
};

}  // namespace eiga
