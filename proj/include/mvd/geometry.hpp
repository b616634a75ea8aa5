#pragma once

#include <Eigen/Core>

namespace mvd {

// Rigid transform. A Pose labeled A->B maps points as x_B = R * x_A + t.
struct Pose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose identity() { return Pose{}; }
};

// ||R^T R - I||_max <= tol, |det(R) - 1| <= tol, all entries finite.
bool pose_valid(const Pose& p, double tol = 1e-6);

Pose invert_pose(const Pose& p);

// a maps A->B, b maps B->C; the result maps A->C.
Pose compose_pose(const Pose& a, const Pose& b);

struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;

    Eigen::Matrix3d matrix() const;
};

bool intrinsics_valid(const Intrinsics& k);

using Homography = Eigen::Matrix3d;

// Homography induced by the fronto-parallel plane z = 1/inv_depth in the
// keyview frame: H = K_other * (R + t * n^T * inv_depth) * K_key^-1 with
// n = (0,0,1). Maps homogeneous keyview pixels to other-view pixels.
// inv_depth = 0 gives the infinite-depth limit K_other * R * K_key^-1.
Homography plane_sweep_homography(const Intrinsics& k_key, const Intrinsics& k_other,
                                  const Pose& pose_key_to_other, double inv_depth);

}  // namespace mvd
