#include "eiga/mesh_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eiga/errors.hpp"

namespace eiga {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

}  // namespace

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out) throw IoError("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    Mesh mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x() >> v.y() >> v.z()))
                throw ParseError(path + ": malformed vertex", lineno);
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            Triangle t;
            for (int c = 0; c < 3; ++c) {
                std::string item;
                if (!(ls >> item)) throw ParseError(path + ": face needs three indices", lineno);
                // accept v, v/vt, v//vn forms; only the vertex index is used
                const size_t slash = item.find('/');
                int idx;
                try {
                    idx = std::stoi(slash == std::string::npos ? item : item.substr(0, slash));
                } catch (const std::exception&) {
                    throw ParseError(path + ": malformed face index '" + item + "'", lineno);
                }
                if (idx < 1)
                    throw ParseError(path + ": face references vertex " + std::to_string(idx) +
                                         " (OBJ indices are 1-based)",
                                     lineno);
                t[c] = idx - 1;
            }
            std::string extra;
            if (ls >> extra) throw ParseError(path + ": only triangular faces are supported", lineno);
            mesh.triangles.push_back(t);
        }
        // other OBJ records are ignored
    }
    for (size_t i = 0; i < mesh.triangles.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            if (mesh.triangles[i][c] >= mesh.vertex_count())
                throw ParseError(path + ": face " + std::to_string(i) + " references vertex " +
                                 std::to_string(mesh.triangles[i][c] + 1) + " beyond vertex count " +
                                 std::to_string(mesh.vertex_count()));
        }
    }

    // optional part-label sidecar
    const std::string sidecar = path + ".parts";
    if (std::filesystem::exists(sidecar)) {
        std::ifstream ps = open_or_throw(sidecar);
        std::string magic;
        int version = 0;
        ps >> magic >> version;
        if (magic != "eiga-parts" || version != 1)
            throw ParseError(sidecar + ": expected 'eiga-parts 1' header", 1);
        int count = 0;
        ps >> count;
        if (count != mesh.vertex_count())
            throw ParseError(sidecar + ": label count " + std::to_string(count) +
                             " != vertex count " + std::to_string(mesh.vertex_count()));
        mesh.part_of_vertex.resize(count);
        for (int i = 0; i < count; ++i) {
            if (!(ps >> mesh.part_of_vertex[i]))
                throw ParseError(sidecar + ": truncated label list");
        }
    } else {
        mesh.part_of_vertex.assign(mesh.vertices.size(), 0);
    }
    return mesh;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
    std::ostringstream out;
    out << "# eiga mesh, " << mesh.vertex_count() << " vertices, " << mesh.triangle_count()
        << " triangles\n";
    for (const Vec3& v : mesh.vertices)
        out << "v " << format_double(v.x()) << " " << format_double(v.y()) << " " << format_double(v.z())
            << "\n";
    for (const Triangle& t : mesh.triangles)
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
    atomic_write_text(path, out.str());

    std::ostringstream ps;
    ps << "eiga-parts 1\n" << mesh.part_of_vertex.size() << "\n";
    for (int p : mesh.part_of_vertex) ps << p << "\n";
    atomic_write_text(path + ".parts", ps.str());
}

void save_mesh_with_uv(const Mesh& mesh, const std::vector<std::array<double, 6>>& triangle_uvs,
                       const std::string& texture_name, const std::string& path) {
    if (triangle_uvs.size() != mesh.triangles.size())
        throw ParameterError("save_mesh_with_uv: one uv triple per triangle required");
    std::ostringstream out;
    out << "# eiga textured mesh\n";
    if (!texture_name.empty()) out << "# texture: " << texture_name << "\n";
    for (const Vec3& v : mesh.vertices)
        out << "v " << format_double(v.x()) << " " << format_double(v.y()) << " " << format_double(v.z())
            << "\n";
    for (const auto& uv : triangle_uvs)
        for (int c = 0; c < 3; ++c)
            out << "vt " << format_double(uv[2 * c]) << " " << format_double(uv[2 * c + 1]) << "\n";
    for (size_t i = 0; i < mesh.triangles.size(); ++i) {
        const Triangle& t = mesh.triangles[i];
        out << "f";
        for (int c = 0; c < 3; ++c) out << " " << t[c] + 1 << "/" << 3 * i + c + 1;
        out << "\n";
    }
    atomic_write_text(path, out.str());
}

BodyModel load_body_model(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "eiga-bodymodel" || version != 1)
        throw ParseError(path + ": expected 'eiga-bodymodel 1' header", 1);

    BodyModel model;
    std::string tag;
    int joints = 0, verts = 0, tris = 0, shapes = 0;
    in >> tag >> joints;
    if (tag != "joints" || joints <= 0) throw ParseError(path + ": expected joint count");
    model.skeleton.joints.resize(joints);
    for (int j = 0; j < joints; ++j) {
        Joint& joint = model.skeleton.joints[j];
        if (!(in >> joint.parent >> joint.rest_offset.x() >> joint.rest_offset.y() >>
              joint.rest_offset.z()))
            throw ParseError(path + ": truncated joint table");
    }
    in >> tag >> verts;
    if (tag != "vertices" || verts <= 0) throw ParseError(path + ": expected vertex count");
    model.template_mesh.vertices.resize(verts);
    for (auto& v : model.template_mesh.vertices) {
        if (!(in >> v.x() >> v.y() >> v.z())) throw ParseError(path + ": truncated vertex table");
    }
    in >> tag >> tris;
    if (tag != "triangles" || tris < 0) throw ParseError(path + ": expected triangle count");
    model.template_mesh.triangles.resize(tris);
    for (auto& t : model.template_mesh.triangles) {
        if (!(in >> t[0] >> t[1] >> t[2])) throw ParseError(path + ": truncated triangle table");
    }
    in >> tag;
    if (tag != "weights") throw ParseError(path + ": expected weights table");
    model.skinning_weights.resize(verts, joints);
    for (int v = 0; v < verts; ++v)
        for (int j = 0; j < joints; ++j) {
            if (!(in >> model.skinning_weights(v, j)))
                throw ParseError(path + ": truncated weight table");
        }
    in >> tag >> shapes;
    if (tag != "shapes" || shapes < 0) throw ParseError(path + ": expected shape count");
    model.blendshapes.resize(shapes);
    for (int s = 0; s < shapes; ++s) {
        model.blendshapes[s].resize(verts, 3);
        for (int v = 0; v < verts; ++v)
            for (int c = 0; c < 3; ++c) {
                if (!(in >> model.blendshapes[s](v, c)))
                    throw ParseError(path + ": truncated blendshape table");
            }
    }
    model.assign_part_labels();
    model.validate();
    return model;
}

void save_body_model(const BodyModel& model, const std::string& path) {
    std::ostringstream out;
    out << "eiga-bodymodel 1\n";
    out << "joints " << model.joint_count() << "\n";
    for (const Joint& j : model.skeleton.joints)
        out << j.parent << " " << format_double(j.rest_offset.x()) << " "
            << format_double(j.rest_offset.y()) << " " << format_double(j.rest_offset.z()) << "\n";
    out << "vertices " << model.vertex_count() << "\n";
    for (const Vec3& v : model.template_mesh.vertices)
        out << format_double(v.x()) << " " << format_double(v.y()) << " " << format_double(v.z()) << "\n";
    out << "triangles " << model.template_mesh.triangle_count() << "\n";
    for (const Triangle& t : model.template_mesh.triangles)
        out << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "weights\n";
    for (int v = 0; v < model.vertex_count(); ++v) {
        for (int j = 0; j < model.joint_count(); ++j)
            out << (j ? " " : "") << format_double(model.skinning_weights(v, j));
        out << "\n";
    }
    out << "shapes " << model.shape_count() << "\n";
    for (const MatX& b : model.blendshapes)
        for (int v = 0; v < b.rows(); ++v)
            out << format_double(b(v, 0)) << " " << format_double(b(v, 1)) << " " << format_double(b(v, 2))
                << "\n";
    atomic_write_text(path, out.str());
}

}  // namespace eiga
