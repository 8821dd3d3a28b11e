#pragma once

#include <optional>
#include <string>

#include "eiga/body_model.hpp"
#include "eiga/mesh.hpp"

namespace eiga {

// Wavefront OBJ, vertices and triangular faces only. Part labels travel in a
// sidecar text file "<path>.parts" (schema: "eiga-parts 1", vertex count,
// then one label per line); meshes without labels round-trip with an absent
// sidecar. Vertices are written with 17 significant digits so a save/load
// round-trip reproduces them bit-exactly.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

// Same OBJ writer plus generated vt/f-with-uv records (one UV corner per
// face vertex, uvs laid out per triangle).
void save_mesh_with_uv(const Mesh& mesh, const std::vector<std::array<double, 6>>& triangle_uvs,
                       const std::string& texture_name, const std::string& path);

// Articulated model as a versioned structured text file ("eiga-bodymodel 1"):
// skeleton (parent + rest offset per joint), template geometry, dense
// skinning weights and blendshape offsets.
BodyModel load_body_model(const std::string& path);
void save_body_model(const BodyModel& model, const std::string& path);

// Writes content to path atomically (temp file + rename).
void atomic_write_text(const std::string& path, const std::string& content);

}  // namespace eiga
