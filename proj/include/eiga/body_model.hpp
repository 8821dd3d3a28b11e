#pragma once

#include <array>
#include <vector>

#include "eiga/mesh.hpp"
#include "eiga/rigid.hpp"
#include "eiga/types.hpp"

namespace eiga {

// Axis-angle <-> rotation matrix. axis_angle_from_rotation returns the
// canonical representative with magnitude in [0, pi].
Mat3 rotation_from_axis_angle(const Vec3& aa);
Vec3 axis_angle_from_rotation(const Mat3& R);

// dR/d(aa_i) for i = 0,1,2 (Gallego & Yezzi closed form, exact at aa = 0).
std::array<Mat3, 3> rotation_jacobian(const Vec3& aa);

// Geodesic angle between two rotations, in [0, pi].
double rotation_geodesic(const Mat3& a, const Mat3& b);

// Row-major vectorization of a 3x3 rotation, the regressor input layout.
Eigen::Matrix<double, 9, 1> vectorize_rotation(const Mat3& R);

struct Joint {
    int parent;        // -1 for the root; parents precede children
    Vec3 rest_offset;  // offset from the parent joint in rest pose
};

struct Skeleton {
    std::vector<Joint> joints;

    int joint_count() const { return static_cast<int>(joints.size()); }
    int part_count() const { return joint_count(); }  // one body part per joint

    // Global rest-pose joint positions (identity rotations).
    std::vector<Vec3> rest_positions() const;

    void validate() const;
};

// Per-joint rotation stored as an axis-angle triple.
struct PoseParams {
    std::vector<Vec3> rotations;

    int joint_count() const { return static_cast<int>(rotations.size()); }
    static PoseParams identity(int joints) { return PoseParams{std::vector<Vec3>(joints, Vec3::Zero())}; }
};

// Shape blendshape coefficients.
struct ShapeParams {
    VecX coeffs;

    int count() const { return static_cast<int>(coeffs.size()); }
    static ShapeParams zero(int n) { return ShapeParams{VecX::Zero(n)}; }
};

// Articulated template: rest mesh, skeleton, convex skinning weights and
// per-vertex shape blendshape offsets. Part labels on the template mesh are
// the argmax skinning weight per vertex (ties to the lower joint index).
struct BodyModel {
    Mesh template_mesh;
    Skeleton skeleton;
    MatX skinning_weights;        // V x J, rows sum to 1
    std::vector<MatX> blendshapes;  // one V x 3 offset block per shape dimension

    int vertex_count() const { return template_mesh.vertex_count(); }
    int joint_count() const { return skeleton.joint_count(); }
    int shape_count() const { return static_cast<int>(blendshapes.size()); }

    void validate() const;

    // Recomputes part_of_vertex on the template from the skinning weights.
    void assign_part_labels();
};

// Global joint transforms under the pose (forward kinematics).
std::vector<RigidTransform> forward_kinematics(const Skeleton& skeleton, const PoseParams& pose);

// Skinning transforms A_j = G_j * inv(G_j_rest).
std::vector<RigidTransform> skinning_transforms(const Skeleton& skeleton, const PoseParams& pose);

// Rest template plus blendshape offsets, before skinning.
std::vector<Vec3> shaped_vertices(const BodyModel& model, const ShapeParams& shape);

// Weighted blend of the given per-joint transforms applied to the shaped
// vertices. Because weights form an affine combination, composing every
// transform with a rigid motion g moves the result rigidly by g.
std::vector<Vec3> linear_blend_skinning(const BodyModel& model, const std::vector<Vec3>& shaped,
                                        const std::vector<RigidTransform>& transforms);

// Linear blend skinning of the shaped template under the posed skeleton.
Mesh pose_model(const BodyModel& model, const PoseParams& pose, const ShapeParams& shape);

// Per-part frames H_l: the inverse of part l's posed global bone transform,
// mapping world-frame quantities into the bone's local frame.
std::vector<RigidTransform> part_frames(const BodyModel& model, const PoseParams& pose);

}  // namespace eiga
