#include "eiga/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eiga/errors.hpp"

namespace eiga {

void Mesh::validate(int part_count) const {
    const int nv = vertex_count();
    for (const auto& v : vertices) {
        if (!v.allFinite()) throw ParameterError("mesh vertex is not finite");
    }
    for (int i = 0; i < triangle_count(); ++i) {
        const Triangle& t = triangles[i];
        for (int c = 0; c < 3; ++c) {
            if (t[c] < 0 || t[c] >= nv)
                throw ParameterError("triangle " + std::to_string(i) + " references vertex " +
                                     std::to_string(t[c]) + " outside [0," + std::to_string(nv) + ")");
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ParameterError("triangle " + std::to_string(i) + " is degenerate");
    }
    if (static_cast<int>(part_of_vertex.size()) != nv)
        throw ParameterError("part label count " + std::to_string(part_of_vertex.size()) +
                             " != vertex count " + std::to_string(nv));
    if (part_count >= 0) {
        for (int p : part_of_vertex) {
            if (p < 0 || p >= part_count)
                throw ParameterError("part label " + std::to_string(p) + " outside [0," +
                                     std::to_string(part_count) + ")");
        }
    }
}

double Mesh::bbox_diagonal() const {
    if (vertices.empty()) return 0.0;
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (const auto& v : vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return (hi - lo).norm();
}

std::vector<std::pair<int, int>> mesh_edges(const Mesh& mesh) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(mesh.triangles.size() * 3);
    for (const Triangle& t : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            int a = t[c], b = t[(c + 1) % 3];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

}  // namespace eiga
