#pragma once

#include <vector>

#include "eiga/types.hpp"

namespace eiga {

// Shared-topology triangle mesh with a per-vertex body-part label.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<int> part_of_vertex;  // one label per vertex

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    // Throws ParameterError on out-of-range indices, degenerate triangles,
    // or label/vertex count mismatch. part_count < 0 skips the label range check.
    void validate(int part_count = -1) const;

    double bbox_diagonal() const;
};

// Ordered list of the unique undirected edges of the mesh.
std::vector<std::pair<int, int>> mesh_edges(const Mesh& mesh);

}  // namespace eiga
