#include "eiga/raster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "eiga/errors.hpp"
#include "eiga/parallel.hpp"

namespace eiga {

void Camera::validate() const {
    if (fx <= 0 || fy <= 0) throw ParameterError("camera focal lengths must be positive");
    if (width <= 0 || height <= 0) throw ParameterError("camera image size must be positive");
    if (!world_to_camera.is_valid(1e-9)) throw ParameterError("camera extrinsic is not a rigid transform");
}

Camera Camera::look_at(const Vec3& eye, const Vec3& target, const Vec3& up, double focal_px, int width,
                       int height) {
    Camera cam;
    cam.fx = cam.fy = focal_px;
    cam.cx = width * 0.5;
    cam.cy = height * 0.5;
    cam.width = width;
    cam.height = height;
    Vec3 fwd = (target - eye).normalized();
    Vec3 right = fwd.cross(up).normalized();
    Vec3 down = fwd.cross(right).normalized();
    Mat3 r;
    r.row(0) = right.transpose();
    r.row(1) = down.transpose();
    r.row(2) = fwd.transpose();
    cam.world_to_camera.rotation = r;
    cam.world_to_camera.translation = -(r * eye);
    return cam;
}

namespace {

constexpr double kNearPlane = 1e-6;

struct ScreenVertex {
    double x, y;      // screen position
    double inv_z;     // 1/z
    Vec3 bary_over_z; // original-triangle barycentric / z
};

// One screen-space triangle from the near-clipped fan, ready for coverage tests.
struct Piece {
    ScreenVertex v[3];
    double area2;  // positive after canonical winding
};

struct TriSetup {
    int tri = -1;
    std::vector<Piece> pieces;
    int ymin = 0, ymax = -1;  // inclusive row range, clamped
    int xmin = 0, xmax = -1;
};

struct ClipVertex {
    Vec3 cam;
    Vec3 bary;
};

// Sutherland-Hodgman against z >= near, carrying barycentric attributes.
int clip_near(const ClipVertex in[3], ClipVertex out[4]) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const ClipVertex& a = in[i];
        const ClipVertex& b = in[(i + 1) % 3];
        const bool ain = a.cam.z() >= kNearPlane;
        const bool bin = b.cam.z() >= kNearPlane;
        if (ain) out[n++] = a;
        if (ain != bin) {
            const double t = (kNearPlane - a.cam.z()) / (b.cam.z() - a.cam.z());
            out[n].cam = a.cam + t * (b.cam - a.cam);
            out[n].bary = a.bary + t * (b.bary - a.bary);
            ++n;
        }
    }
    return n;
}

// Edge from (ax,ay) to (bx,by): on-edge pixels count iff the edge is top
// (dy == 0, dx > 0) or left (dy < 0) under canonical winding.
inline bool edge_top_left(double ax, double ay, double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    if (dy == 0.0) return dx > 0.0;
    return dy < 0.0;
}

inline double edge_function(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

TriSetup setup_triangle(const Mesh& mesh, const Camera& camera, int tri) {
    TriSetup s;
    s.tri = tri;
    const Triangle& t = mesh.triangles[tri];
    ClipVertex cv[3];
    for (int i = 0; i < 3; ++i) {
        cv[i].cam = camera.to_camera(mesh.vertices[t[i]]);
        cv[i].bary = Vec3::Unit(i);
    }
    ClipVertex poly[4];
    const int n = clip_near(cv, poly);
    if (n < 3) return s;

    ScreenVertex sv[4];
    for (int i = 0; i < n; ++i) {
        const double z = poly[i].cam.z();
        sv[i].x = camera.fx * poly[i].cam.x() / z + camera.cx;
        sv[i].y = camera.fy * poly[i].cam.y() / z + camera.cy;
        sv[i].inv_z = 1.0 / z;
        sv[i].bary_over_z = poly[i].bary / z;
    }

    double xlo = sv[0].x, xhi = sv[0].x, ylo = sv[0].y, yhi = sv[0].y;
    for (int i = 1; i < n; ++i) {
        xlo = std::min(xlo, sv[i].x);
        xhi = std::max(xhi, sv[i].x);
        ylo = std::min(ylo, sv[i].y);
        yhi = std::max(yhi, sv[i].y);
    }
    // pixel centers at (x+0.5, y+0.5): first candidate row/column per bound
    s.xmin = std::max(0, static_cast<int>(std::floor(xlo - 0.5)));
    s.xmax = std::min(camera.width - 1, static_cast<int>(std::ceil(xhi)));
    s.ymin = std::max(0, static_cast<int>(std::floor(ylo - 0.5)));
    s.ymax = std::min(camera.height - 1, static_cast<int>(std::ceil(yhi)));
    if (s.xmin > s.xmax || s.ymin > s.ymax) return s;

    for (int i = 1; i + 1 < n; ++i) {
        Piece p;
        p.v[0] = sv[0];
        p.v[1] = sv[i];
        p.v[2] = sv[i + 1];
        p.area2 = edge_function(p.v[0].x, p.v[0].y, p.v[1].x, p.v[1].y, p.v[2].x, p.v[2].y);
        if (p.area2 < 0) {
            std::swap(p.v[1], p.v[2]);
            p.area2 = -p.area2;
        }
        if (p.area2 > 0) s.pieces.push_back(p);
    }
    return s;
}

// Calls fn(x, y, z, original_barycentric) for every covered pixel of the
// setup within rows [ymin, ymax], columns in increasing x.
template <typename Fn>
void for_each_covered_pixel_rows(const TriSetup& s, int ymin, int ymax, const Fn& fn) {
    for (int y = std::max(ymin, s.ymin); y <= std::min(ymax, s.ymax); ++y) {
        const double py = y + 0.5;
        for (int x = s.xmin; x <= s.xmax; ++x) {
            const double px = x + 0.5;
            for (const Piece& p : s.pieces) {
                bool inside = true;
                double e[3];
                for (int k = 0; k < 3; ++k) {
                    const ScreenVertex& a = p.v[k];
                    const ScreenVertex& b = p.v[(k + 1) % 3];
                    e[k] = edge_function(a.x, a.y, b.x, b.y, px, py);
                    if (e[k] < 0 || (e[k] == 0 && !edge_top_left(a.x, a.y, b.x, b.y))) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) continue;
                const double b0 = e[1] / p.area2;
                const double b1 = e[2] / p.area2;
                const double b2 = e[0] / p.area2;
                const double inv_z = b0 * p.v[0].inv_z + b1 * p.v[1].inv_z + b2 * p.v[2].inv_z;
                const double z = 1.0 / inv_z;
                const Vec3 bary =
                    (b0 * p.v[0].bary_over_z + b1 * p.v[1].bary_over_z + b2 * p.v[2].bary_over_z) * z;
                fn(x, y, z, bary);
                break;  // fan pieces are disjoint under the fill rule
            }
        }
    }
}

template <typename Fn>
void for_each_covered_pixel(const TriSetup& s, const Fn& fn) {
    for_each_covered_pixel_rows(s, s.ymin, s.ymax, fn);
}

std::vector<TriSetup> setup_all(const Mesh& mesh, const Camera& camera) {
    std::vector<TriSetup> setups(mesh.triangle_count());
    parallel_for(0, mesh.triangle_count(),
                 [&](int t) { setups[t] = setup_triangle(mesh, camera, t); });
    return setups;
}

// Shared z-buffered composition: shade(x, y, tri, bary) runs for the winning
// fragment of each covered pixel. Scanline-parallel, triangle order per pixel
// is by index, depth ties keep the lower index.
template <typename Shade>
void compose(const Mesh& mesh, const Camera& camera, DepthMap& depth, const Shade& shade) {
    const std::vector<TriSetup> setups = setup_all(mesh, camera);

    std::vector<std::vector<int>> rows(camera.height);
    for (const TriSetup& s : setups) {
        if (s.pieces.empty()) continue;
        for (int y = s.ymin; y <= s.ymax; ++y) rows[y].push_back(s.tri);
    }

    parallel_for(0, camera.height, [&](int y) {
        for (int tri : rows[y]) {
            for_each_covered_pixel_rows(setups[tri], y, y, [&](int x, int py, double z, const Vec3& bary) {
                if (z < depth.at(x, py)) {
                    depth.at(x, py) = z;
                    shade(x, py, tri, bary);
                }
            });
        }
    });
}

}  // namespace

RasterMaps rasterize(const Mesh& mesh, const Camera& camera) {
    camera.validate();
    if (mesh.vertex_count() == 0 || mesh.triangle_count() == 0)
        throw ParameterError("rasterize: empty mesh");

    RasterMaps maps;
    maps.depth = DepthMap(camera.width, camera.height);
    maps.ids = TriangleIdMap(camera.width, camera.height);
    compose(mesh, camera, maps.depth,
            [&maps](int x, int y, int tri, const Vec3&) { maps.ids.at(x, y) = tri; });
    return maps;
}

std::vector<char> triangle_visibility(const Mesh& mesh, const Camera& camera, const DepthMap& depth,
                                      const TriangleIdMap& ids, double eps) {
    camera.validate();
    if (depth.width != camera.width || depth.height != camera.height || ids.width != camera.width ||
        ids.height != camera.height)
        throw ParameterError("triangle_visibility: map size does not match the camera");

    std::vector<char> visible(mesh.triangle_count(), 0);
    parallel_for(0, mesh.triangle_count(), [&](int t) {
        const TriSetup s = setup_triangle(mesh, camera, t);
        if (s.pieces.empty()) return;
        int covered = 0;
        bool all_ok = true;
        for_each_covered_pixel(s, [&](int x, int y, double z, const Vec3&) {
            ++covered;
            if (!(std::abs(depth.at(x, y) - z) < eps)) all_ok = false;
        });
        visible[t] = (covered >= 1 && all_ok) ? 1 : 0;
    });
    return visible;
}

int texel_count(int side) { return side * (side + 1) / 2; }

Vec3 texel_barycentric(int side, int i, int j) {
    const double a = (i + 1.0 / 3.0) / side;
    const double b = (j + 1.0 / 3.0) / side;
    return Vec3(a, b, 1.0 - a - b);
}

int texel_index(int side, int i, int j) {
    // i-major: all j for i=0, then i=1, ...
    return i * side - i * (i - 1) / 2 + j;
}

TriangleTexture extract_texture(const Mesh& mesh, const Camera& camera, const Image& rgb, int triangle,
                                int side) {
    camera.validate();
    if (triangle < 0 || triangle >= mesh.triangle_count())
        throw ParameterError("extract_texture: triangle index out of range");
    if (side < 1) throw ParameterError("extract_texture: texture side must be >= 1");
    if (rgb.width != camera.width || rgb.height != camera.height)
        throw ParameterError("extract_texture: image size does not match the camera");

    const TriSetup s = setup_triangle(mesh, camera, triangle);
    int covered = 0;
    for_each_covered_pixel(s, [&](int, int, double, const Vec3&) { ++covered; });
    if (covered == 0)
        throw ParameterError("extract_texture: triangle " + std::to_string(triangle) +
                             " is not visible from the camera");

    const Triangle& t = mesh.triangles[triangle];
    TriangleTexture tex;
    tex.triangle = triangle;
    tex.side = side;
    tex.rgb.resize(3 * static_cast<size_t>(texel_count(side)));
    int n = 0;
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j + i < side; ++j, ++n) {
            const Vec3 bc = texel_barycentric(side, i, j);
            const Vec3 world =
                bc[0] * mesh.vertices[t[0]] + bc[1] * mesh.vertices[t[1]] + bc[2] * mesh.vertices[t[2]];
            const Vec3 cam = camera.to_camera(world);
            const double u = camera.fx * cam.x() / cam.z() + camera.cx;
            const double v = camera.fy * cam.y() / cam.z() + camera.cy;
            tex.set_texel(n, rgb.bilinear(u, v));
        }
    }
    return tex;
}

Image render_vertex_colors(const Mesh& mesh, const Camera& camera, const std::vector<Vec3>& colors,
                           const Vec3& background) {
    camera.validate();
    if (static_cast<int>(colors.size()) != mesh.vertex_count())
        throw ParameterError("render_vertex_colors: one color per vertex required");
    Image img(camera.width, camera.height, background);
    DepthMap depth(camera.width, camera.height);
    compose(mesh, camera, depth, [&](int x, int y, int tri, const Vec3& bary) {
        const Triangle& t = mesh.triangles[tri];
        img.set_pixel(x, y, bary[0] * colors[t[0]] + bary[1] * colors[t[1]] + bary[2] * colors[t[2]]);
    });
    return img;
}

Image render_textured(const Mesh& mesh, const Camera& camera, const std::vector<TriangleTexture>& textures,
                      const Vec3& background) {
    camera.validate();
    if (static_cast<int>(textures.size()) != mesh.triangle_count())
        throw ParameterError("render_textured: one texture per triangle required");
    Image img(camera.width, camera.height, background);
    DepthMap depth(camera.width, camera.height);
    compose(mesh, camera, depth, [&](int x, int y, int tri, const Vec3& bary) {
        const TriangleTexture& tex = textures[tri];
        if (tex.side < 1) return;  // untextured triangle keeps the background
        const int side = tex.side;
        int i = static_cast<int>(std::lround(bary[0] * side - 1.0 / 3.0));
        int j = static_cast<int>(std::lround(bary[1] * side - 1.0 / 3.0));
        i = std::clamp(i, 0, side - 1);
        j = std::clamp(j, 0, side - 1 - i);
        img.set_pixel(x, y, tex.texel(texel_index(side, i, j)));
    });
    return img;
}

void save_depth_ppm(const DepthMap& depth, const std::string& path) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (double d : depth.values) {
        if (std::isfinite(d)) {
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    const double span = (hi > lo) ? hi - lo : 1.0;
    Image img(depth.width, depth.height, Vec3::Zero());
    for (int y = 0; y < depth.height; ++y) {
        for (int x = 0; x < depth.width; ++x) {
            const double d = depth.at(x, y);
            if (!std::isfinite(d)) continue;
            const double g = 1.0 - (d - lo) / span;  // near is bright
            img.set_pixel(x, y, Vec3(g, g, g));
        }
    }
    save_ppm(img, path);
}

void save_ids_ppm(const TriangleIdMap& ids, const std::string& path) {
    Image img(ids.width, ids.height, Vec3::Zero());
    for (int y = 0; y < ids.height; ++y) {
        for (int x = 0; x < ids.width; ++x) {
            const int32_t id = ids.at(x, y);
            if (id == TriangleIdMap::kNone) continue;
            // color-code the index with a fixed integer hash
            uint32_t h = static_cast<uint32_t>(id) * 2654435761u;
            img.set_pixel(x, y, Vec3(((h >> 16) & 0xff) / 255.0, ((h >> 8) & 0xff) / 255.0,
                                     (h & 0xff) / 255.0));
        }
    }
    save_ppm(img, path);
}

namespace {

template <typename T>
void write_le(std::ofstream& out, T v) {
    static_assert(std::endian::native == std::endian::little, "little-endian platform expected");
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void save_depth_raw(const DepthMap& depth, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    write_le<uint32_t>(out, static_cast<uint32_t>(depth.width));
    write_le<uint32_t>(out, static_cast<uint32_t>(depth.height));
    out.write(reinterpret_cast<const char*>(depth.values.data()),
              static_cast<std::streamsize>(depth.values.size() * sizeof(double)));
    if (!out) throw IoError("short write to " + path);
}

void save_ids_raw(const TriangleIdMap& ids, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    write_le<uint32_t>(out, static_cast<uint32_t>(ids.width));
    write_le<uint32_t>(out, static_cast<uint32_t>(ids.height));
    out.write(reinterpret_cast<const char*>(ids.ids.data()),
              static_cast<std::streamsize>(ids.ids.size() * sizeof(int32_t)));
    if (!out) throw IoError("short write to " + path);
}

DepthMap load_depth_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    const uint32_t w = read_le<uint32_t>(in);
    const uint32_t h = read_le<uint32_t>(in);
    DepthMap depth(static_cast<int>(w), static_cast<int>(h));
    in.read(reinterpret_cast<char*>(depth.values.data()),
            static_cast<std::streamsize>(depth.values.size() * sizeof(double)));
    if (!in) throw ParseError("truncated depth dump: " + path);
    return depth;
}

TriangleIdMap load_ids_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    const uint32_t w = read_le<uint32_t>(in);
    const uint32_t h = read_le<uint32_t>(in);
    TriangleIdMap ids(static_cast<int>(w), static_cast<int>(h));
    in.read(reinterpret_cast<char*>(ids.ids.data()),
            static_cast<std::streamsize>(ids.ids.size() * sizeof(int32_t)));
    if (!in) throw ParseError("truncated id dump: " + path);
    return ids;
}

}  // namespace eiga
