#pragma once

#include <limits>
#include <string>
#include <vector>

#include "eiga/image.hpp"
#include "eiga/mesh.hpp"
#include "eiga/rigid.hpp"
#include "eiga/types.hpp"

namespace eiga {

// Pinhole camera, no distortion. world_to_camera maps scene points into the
// camera frame (+z forward, +x right, +y down); u = fx*x/z + cx, v = fy*y/z + cy.
struct Camera {
    double fx = 0, fy = 0, cx = 0, cy = 0;
    RigidTransform world_to_camera;
    int width = 0, height = 0;

    Vec3 to_camera(const Vec3& p) const { return world_to_camera.apply(p); }
    void validate() const;

    static Camera look_at(const Vec3& eye, const Vec3& target, const Vec3& up, double focal_px, int width,
                          int height);
};

struct DepthMap {
    int width = 0, height = 0;
    std::vector<double> values;  // camera-space z, +inf for background

    DepthMap() = default;
    DepthMap(int w, int h)
        : width(w), height(h), values(static_cast<size_t>(w) * h, std::numeric_limits<double>::infinity()) {}
    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
};

struct TriangleIdMap {
    static constexpr int32_t kNone = -1;
    int width = 0, height = 0;
    std::vector<int32_t> ids;

    TriangleIdMap() = default;
    TriangleIdMap(int w, int h) : width(w), height(h), ids(static_cast<size_t>(w) * h, kNone) {}
    int32_t at(int x, int y) const { return ids[static_cast<size_t>(y) * width + x]; }
    int32_t& at(int x, int y) { return ids[static_cast<size_t>(y) * width + x]; }
};

struct RasterMaps {
    DepthMap depth;
    TriangleIdMap ids;
};

// Z-buffered perspective rasterization with the top-left fill rule. A pixel
// center on a shared edge belongs to the triangle whose edge is "top"
// (horizontal, pointing +x in canonical winding) or "left" (pointing -y);
// edge functions are evaluated in doubles at pixel centers (x+0.5, y+0.5).
// Depth ties keep the lower triangle index. Parallel over scanlines; the
// result is independent of the thread count.
RasterMaps rasterize(const Mesh& mesh, const Camera& camera);

// All-pixels-visible rule: triangle visible iff it covers >= 1 pixel and
// every covered pixel's plane depth agrees with the depth map within eps
// (strict '<', so eps = 0 marks everything invisible).
std::vector<char> triangle_visibility(const Mesh& mesh, const Camera& camera, const DepthMap& depth,
                                      const TriangleIdMap& ids, double eps);

// Per-triangle texture on the canonical right-triangle texel lattice of side
// T: texel (i,j), i+j <= T-1, has barycentric ((i+1/3)/T, (j+1/3)/T, rest)
// w.r.t. the triangle's corners (v0, v1, v2); texels are ordered i-major.
// N = T(T+1)/2 texels, 3 channels each.
struct TriangleTexture {
    int triangle = -1;
    int frame = -1;
    int side = 0;                // T
    std::vector<float> rgb;      // 3 * N, texel-major

    int texel_count() const { return side * (side + 1) / 2; }
    Vec3 texel(int n) const { return Vec3(rgb[3 * n], rgb[3 * n + 1], rgb[3 * n + 2]); }
    void set_texel(int n, const Vec3& c) {
        rgb[3 * n] = static_cast<float>(c.x());
        rgb[3 * n + 1] = static_cast<float>(c.y());
        rgb[3 * n + 2] = static_cast<float>(c.z());
    }
};

int texel_count(int side);
Vec3 texel_barycentric(int side, int i, int j);
// texel index for lattice coordinates (i-major order)
int texel_index(int side, int i, int j);

// Samples the RGB image bilinearly at the projection of every texel's
// surface point. Requires the triangle to be geometrically visible (in
// front of the camera with >= 1 covered pixel); occlusion by other
// triangles is the caller's contract, established via triangle_visibility.
TriangleTexture extract_texture(const Mesh& mesh, const Camera& camera, const Image& rgb, int triangle,
                                int side);

// Z-buffered shaded renders used for evaluation output.
Image render_vertex_colors(const Mesh& mesh, const Camera& camera, const std::vector<Vec3>& colors,
                           const Vec3& background);
Image render_textured(const Mesh& mesh, const Camera& camera, const std::vector<TriangleTexture>& textures,
                      const Vec3& background);

// Map dumps: normalized grayscale / color-keyed PPM plus a raw little-endian
// layout (u32 width, u32 height, then row-major f64 depths or i32 ids).
void save_depth_ppm(const DepthMap& depth, const std::string& path);
void save_ids_ppm(const TriangleIdMap& ids, const std::string& path);
void save_depth_raw(const DepthMap& depth, const std::string& path);
void save_ids_raw(const TriangleIdMap& ids, const std::string& path);
DepthMap load_depth_raw(const std::string& path);
TriangleIdMap load_ids_raw(const std::string& path);

}  // namespace eiga
