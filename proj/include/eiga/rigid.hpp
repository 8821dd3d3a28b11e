#pragma once

#include <cmath>

#include "eiga/types.hpp"

namespace eiga {

// Proper rigid transform p -> R*p + t.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

    RigidTransform inverse() const {
        RigidTransform inv;
        inv.rotation = rotation.transpose();
        inv.translation = -(inv.rotation * translation);
        return inv;
    }

    // Composition: (a * b)(p) == a(b(p)).
    RigidTransform operator*(const RigidTransform& o) const {
        RigidTransform r;
        r.rotation = rotation * o.rotation;
        r.translation = rotation * o.translation + translation;
        return r;
    }

    static RigidTransform translate(const Vec3& t) {
        RigidTransform r;
        r.translation = t;
        return r;
    }

    // R orthonormal and det +1 within tol.
    bool is_valid(double tol = 1e-9) const {
        Mat3 err = rotation.transpose() * rotation - Mat3::Identity();
        if (err.cwiseAbs().maxCoeff() > tol) return false;
        return std::abs(rotation.determinant() - 1.0) <= tol;
    }
};

}  // namespace eiga
