#pragma once

// Shared helpers for unit and acceptance tests: small geometry generators and
// the independent oracles the module tests check against.

#include <cmath>
#include <map>
#include <vector>

#include "eiga/body_model.hpp"
#include "eiga/mesh.hpp"
#include "eiga/raster.hpp"
#include "eiga/rng.hpp"

namespace testutil {

using eiga::Mat3;
using eiga::Mesh;
using eiga::Triangle;
using eiga::Vec3;

// Unit icosphere by repeated edge-midpoint subdivision.
inline Mesh icosphere(int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                               {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                               {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<Triangle> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                   {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                   {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                   {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = (verts[a] + verts[b]).normalized();
            verts.push_back(m);
            int idx = static_cast<int>(verts.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(faces.size() * 4);
        for (const Triangle& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    Mesh mesh;
    mesh.vertices = std::move(verts);
    mesh.triangles = std::move(faces);
    mesh.part_of_vertex.assign(mesh.vertices.size(), 0);
    return mesh;
}

// Random convex solid: icosphere stretched by a random positive-definite
// scaling and rotated, which preserves convexity.
inline Mesh random_convex_mesh(eiga::Rng& rng, int subdivisions) {
    Mesh mesh = icosphere(subdivisions);
    Vec3 scale(rng.uniform(0.5, 1.6), rng.uniform(0.5, 1.6), rng.uniform(0.5, 1.6));
    Mat3 rot = eiga::rotation_from_axis_angle(rng.normal_vec3());
    for (auto& v : mesh.vertices) v = rot * scale.asDiagonal() * v;
    return mesh;
}

// --- coverage oracle -------------------------------------------------------
// Clean-room half-plane rasterization of one triangle: projects the vertices,
// canonicalizes the winding and tests every pixel center of the whole image
// against the documented top-left rule. Valid for triangles fully in front of
// the camera.
inline std::vector<std::pair<int, int>> coverage_oracle(const Mesh& mesh, const eiga::Camera& cam,
                                                        int tri) {
    const Triangle& t = mesh.triangles[tri];
    double sx[3], sy[3];
    for (int i = 0; i < 3; ++i) {
        Vec3 c = cam.to_camera(mesh.vertices[t[i]]);
        if (c.z() <= 0) return {};
        sx[i] = cam.fx * c.x() / c.z() + cam.cx;
        sy[i] = cam.fy * c.y() / c.z() + cam.cy;
    }
    double area2 = (sx[1] - sx[0]) * (sy[2] - sy[0]) - (sy[1] - sy[0]) * (sx[2] - sx[0]);
    int i1 = 1, i2 = 2;
    if (area2 < 0) {
        std::swap(i1, i2);
        area2 = -area2;
    }
    if (area2 == 0) return {};
    const double vx[3] = {sx[0], sx[i1], sx[i2]};
    const double vy[3] = {sy[0], sy[i1], sy[i2]};

    std::vector<std::pair<int, int>> covered;
    for (int y = 0; y < cam.height; ++y) {
        for (int x = 0; x < cam.width; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            bool inside = true;
            for (int k = 0; k < 3 && inside; ++k) {
                const double ax = vx[k], ay = vy[k];
                const double bx = vx[(k + 1) % 3], by = vy[(k + 1) % 3];
                const double e = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
                const double dx = bx - ax, dy = by - ay;
                const bool top_left = (dy == 0.0) ? (dx > 0.0) : (dy < 0.0);
                if (e < 0 || (e == 0 && !top_left)) inside = false;
            }
            if (inside) covered.emplace_back(x, y);
        }
    }
    return covered;
}

// --- ray-cast visibility oracle --------------------------------------------
// Moller-Trumbore intersection.
inline bool ray_triangle(const Vec3& orig, const Vec3& dir, const Vec3& a, const Vec3& b, const Vec3& c,
                         double& t_out) {
    const Vec3 e1 = b - a, e2 = c - a;
    const Vec3 p = dir.cross(e2);
    const double det = e1.dot(p);
    if (std::abs(det) < 1e-14) return false;
    const double inv = 1.0 / det;
    const Vec3 s = orig - a;
    const double u = s.dot(p) * inv;
    if (u < -1e-9 || u > 1 + 1e-9) return false;
    const Vec3 q = s.cross(e1);
    const double v = dir.dot(q) * inv;
    if (v < -1e-9 || u + v > 1 + 1e-9) return false;
    const double t = e2.dot(q) * inv;
    if (t <= 0) return false;
    t_out = t;
    return true;
}

// For every pixel the triangle covers (via coverage_oracle), cast the pixel
// ray against all triangles; the pixel passes iff the triangle's own plane
// depth differs from the nearest hit by < eps. Triangle visible iff covered
// and all pixels pass.
inline std::vector<char> visibility_oracle(const Mesh& mesh, const eiga::Camera& cam, double eps) {
    std::vector<char> visible(mesh.triangles.size(), 0);
    const eiga::RigidTransform cam_to_world = cam.world_to_camera.inverse();
    const Vec3 origin = cam_to_world.translation;

    for (size_t tri = 0; tri < mesh.triangles.size(); ++tri) {
        auto covered = coverage_oracle(mesh, cam, static_cast<int>(tri));
        if (covered.empty()) continue;
        bool all_ok = true;
        for (auto [x, y] : covered) {
            // pixel ray in world space, unit z in camera space
            Vec3 dir_cam((x + 0.5 - cam.cx) / cam.fx, (y + 0.5 - cam.cy) / cam.fy, 1.0);
            Vec3 dir = cam_to_world.rotation * dir_cam;

            const Triangle& t = mesh.triangles[tri];
            double own = 0;
            if (!ray_triangle(origin, dir, mesh.vertices[t[0]], mesh.vertices[t[1]],
                              mesh.vertices[t[2]], own)) {
                // covered pixel center must hit its own plane; extend barely-miss
                // cases by intersecting the unbounded plane
                const Vec3 n = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                                   .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
                const double denom = n.dot(dir);
                if (std::abs(denom) < 1e-14) {
                    all_ok = false;
                    break;
                }
                own = n.dot(mesh.vertices[t[0]] - origin) / denom;
            }
            double nearest = std::numeric_limits<double>::infinity();
            for (size_t o = 0; o < mesh.triangles.size(); ++o) {
                const Triangle& ot = mesh.triangles[o];
                double hit;
                if (ray_triangle(origin, dir, mesh.vertices[ot[0]], mesh.vertices[ot[1]],
                                 mesh.vertices[ot[2]], hit))
                    nearest = std::min(nearest, hit);
            }
            // dir has unit camera-z component, so ray parameters are camera-z depths
            if (!(std::abs(nearest - own) < eps)) {
                all_ok = false;
                break;
            }
        }
        visible[tri] = all_ok ? 1 : 0;
    }
    return visible;
}

}  // namespace testutil
