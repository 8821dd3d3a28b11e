#include "eiga/body_model.hpp"

#include <cmath>
#include <string>

#include "eiga/errors.hpp"

namespace eiga {

namespace {

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

}  // namespace

Mat3 rotation_from_axis_angle(const Vec3& aa) {
    const double angle = aa.norm();
    if (angle < 1e-12) {
        // second-order expansion, accurate to ~1e-24 here
        Mat3 k = skew(aa);
        return Mat3::Identity() + k + 0.5 * (k * k);
    }
    const Vec3 axis = aa / angle;
    Mat3 k = skew(axis);
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

Vec3 axis_angle_from_rotation(const Mat3& R) {
    // angle via atan2 of the skew part, stable near 0 and pi
    Vec3 w(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    const double s = 0.5 * w.norm();
    const double c = 0.5 * (R.trace() - 1.0);
    const double angle = std::atan2(s, c);
    if (angle < 1e-12) return 0.5 * w;  // w = 2 sin(angle) axis ~ 2 angle axis
    if (s > 1e-7) return (angle / (2.0 * s)) * w;
    // near pi: axis from the symmetric part, R = I + 2 sin^2(angle/2) (aa^T - I)
    Mat3 sym = 0.5 * (R + Mat3::Identity());
    int k = 0;
    sym.diagonal().maxCoeff(&k);
    Vec3 axis = sym.col(k) / std::sqrt(std::max(sym(k, k), 1e-30));
    // fix the sign so that it matches the skew part when it is not exactly zero
    if (axis.dot(w) < 0) axis = -axis;
    return angle * axis.normalized();
}

std::array<Mat3, 3> rotation_jacobian(const Vec3& aa) {
    std::array<Mat3, 3> jac;
    const double theta2 = aa.squaredNorm();
    const Mat3 R = rotation_from_axis_angle(aa);
    if (theta2 < 1e-16) {
        for (int i = 0; i < 3; ++i) jac[i] = skew(Vec3::Unit(i));
        return jac;
    }
    // Gallego & Yezzi: dR/dv_i = (v_i [v]x + [v x (I - R) e_i]x) / |v|^2 * R
    const Mat3 vski = skew(aa);
    const Mat3 ImR = Mat3::Identity() - R;
    for (int i = 0; i < 3; ++i) {
        Vec3 cr = aa.cross(ImR.col(i));
        jac[i] = ((aa[i] * vski + skew(cr)) / theta2) * R;
    }
    return jac;
}

double rotation_geodesic(const Mat3& a, const Mat3& b) {
    Mat3 rel = a.transpose() * b;
    Vec3 w(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0), rel(1, 0) - rel(0, 1));
    const double s = 0.5 * w.norm();
    const double c = 0.5 * (rel.trace() - 1.0);
    return std::atan2(s, c);
}

Eigen::Matrix<double, 9, 1> vectorize_rotation(const Mat3& R) {
    Eigen::Matrix<double, 9, 1> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[3 * i + j] = R(i, j);
    return r;
}

std::vector<Vec3> Skeleton::rest_positions() const {
    std::vector<Vec3> pos(joints.size());
    for (size_t j = 0; j < joints.size(); ++j) {
        pos[j] = joints[j].rest_offset;
        if (joints[j].parent >= 0) pos[j] += pos[joints[j].parent];
    }
    return pos;
}

void Skeleton::validate() const {
    for (size_t j = 0; j < joints.size(); ++j) {
        const Joint& joint = joints[j];
        if (j == 0) {
            if (joint.parent != -1) throw ParameterError("joint 0 must be the root");
        } else if (joint.parent < 0 || joint.parent >= static_cast<int>(j)) {
            throw ParameterError("joint " + std::to_string(j) + " parent must precede it");
        }
        if (!joint.rest_offset.allFinite())
            throw ParameterError("joint " + std::to_string(j) + " rest offset not finite");
    }
}

void BodyModel::validate() const {
    skeleton.validate();
    template_mesh.validate(skeleton.part_count());
    const int nv = vertex_count();
    const int nj = joint_count();
    if (skinning_weights.rows() != nv || skinning_weights.cols() != nj)
        throw ParameterError("skinning weight matrix must be V x J");
    for (int v = 0; v < nv; ++v) {
        double sum = 0;
        for (int j = 0; j < nj; ++j) {
            const double w = skinning_weights(v, j);
            if (w < 0) throw ParameterError("negative skinning weight at vertex " + std::to_string(v));
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw ParameterError("skinning weights of vertex " + std::to_string(v) + " sum to " +
                                 std::to_string(sum));
    }
    for (const MatX& b : blendshapes) {
        if (b.rows() != nv || b.cols() != 3) throw ParameterError("blendshape block must be V x 3");
    }
}

void BodyModel::assign_part_labels() {
    const int nv = vertex_count();
    const int nj = joint_count();
    template_mesh.part_of_vertex.resize(nv);
    for (int v = 0; v < nv; ++v) {
        int best = 0;
        double bw = skinning_weights(v, 0);
        for (int j = 1; j < nj; ++j) {
            if (skinning_weights(v, j) > bw) {  // ties keep the lower joint index
                bw = skinning_weights(v, j);
                best = j;
            }
        }
        template_mesh.part_of_vertex[v] = best;
    }
}

std::vector<RigidTransform> forward_kinematics(const Skeleton& skeleton, const PoseParams& pose) {
    if (pose.joint_count() != skeleton.joint_count())
        throw ParameterError("pose has " + std::to_string(pose.joint_count()) + " joints, skeleton has " +
                             std::to_string(skeleton.joint_count()));
    std::vector<RigidTransform> global(skeleton.joint_count());
    for (int j = 0; j < skeleton.joint_count(); ++j) {
        RigidTransform local;
        local.rotation = rotation_from_axis_angle(pose.rotations[j]);
        local.translation = skeleton.joints[j].rest_offset;
        const int p = skeleton.joints[j].parent;
        global[j] = (p >= 0) ? global[p] * local : local;
    }
    return global;
}

std::vector<RigidTransform> skinning_transforms(const Skeleton& skeleton, const PoseParams& pose) {
    std::vector<RigidTransform> global = forward_kinematics(skeleton, pose);
    std::vector<Vec3> rest = skeleton.rest_positions();
    for (int j = 0; j < skeleton.joint_count(); ++j) {
        // inv(G_rest) is the pure translation by -rest position
        global[j].translation -= global[j].rotation * rest[j];
    }
    return global;
}

std::vector<Vec3> shaped_vertices(const BodyModel& model, const ShapeParams& shape) {
    if (shape.count() != model.shape_count())
        throw ParameterError("shape has " + std::to_string(shape.count()) + " coeffs, model has " +
                             std::to_string(model.shape_count()));
    std::vector<Vec3> out = model.template_mesh.vertices;
    for (int s = 0; s < model.shape_count(); ++s) {
        const double c = shape.coeffs[s];
        if (c == 0.0) continue;
        const MatX& b = model.blendshapes[s];
        for (int v = 0; v < model.vertex_count(); ++v) out[v] += c * b.row(v).transpose();
    }
    return out;
}

std::vector<Vec3> linear_blend_skinning(const BodyModel& model, const std::vector<Vec3>& shaped,
                                        const std::vector<RigidTransform>& transforms) {
    if (static_cast<int>(shaped.size()) != model.vertex_count() ||
        static_cast<int>(transforms.size()) != model.joint_count())
        throw ParameterError("linear_blend_skinning: dimension mismatch");
    std::vector<Vec3> out(shaped.size());
    const int nj = model.joint_count();
    for (int v = 0; v < model.vertex_count(); ++v) {
        Vec3 p = Vec3::Zero();
        for (int j = 0; j < nj; ++j) {
            const double w = model.skinning_weights(v, j);
            if (w != 0.0) p += w * transforms[j].apply(shaped[v]);
        }
        out[v] = p;
    }
    return out;
}

Mesh pose_model(const BodyModel& model, const PoseParams& pose, const ShapeParams& shape) {
    Mesh out;
    out.triangles = model.template_mesh.triangles;
    out.part_of_vertex = model.template_mesh.part_of_vertex;
    out.vertices = linear_blend_skinning(model, shaped_vertices(model, shape),
                                         skinning_transforms(model.skeleton, pose));
    return out;
}

std::vector<RigidTransform> part_frames(const BodyModel& model, const PoseParams& pose) {
    std::vector<RigidTransform> global = forward_kinematics(model.skeleton, pose);
    for (auto& g : global) g = g.inverse();
    return global;
}

}  // namespace eiga
