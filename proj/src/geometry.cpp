#include "mvd/geometry.hpp"

#include <Eigen/LU>

namespace mvd {

bool pose_valid(const Pose& p, double tol) {
    if (!p.rotation.allFinite() || !p.translation.allFinite()) return false;
    const Eigen::Matrix3d err = p.rotation.transpose() * p.rotation - Eigen::Matrix3d::Identity();
    if (err.cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(p.rotation.determinant() - 1.0) <= tol;
}

Pose invert_pose(const Pose& p) {
    Pose q;
    q.rotation = p.rotation.transpose();
    q.translation = -(q.rotation * p.translation);
    return q;
}

Pose compose_pose(const Pose& a, const Pose& b) {
    Pose c;
    c.rotation = b.rotation * a.rotation;
    c.translation = b.rotation * a.translation + b.translation;
    return c;
}

Eigen::Matrix3d Intrinsics::matrix() const {
    Eigen::Matrix3d k;
    k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
    return k;
}

bool intrinsics_valid(const Intrinsics& k) {
    return std::isfinite(k.fx) && std::isfinite(k.fy) && std::isfinite(k.cx) &&
           std::isfinite(k.cy) && k.fx > 0.0 && k.fy > 0.0;
}

Homography plane_sweep_homography(const Intrinsics& k_key, const Intrinsics& k_other,
                                  const Pose& pose_key_to_other, double inv_depth) {
    // K^-1 in closed form; K is upper triangular with unit bottom-right.
    Eigen::Matrix3d k_inv;
    k_inv << 1.0 / k_key.fx, 0.0, -k_key.cx / k_key.fx,
             0.0, 1.0 / k_key.fy, -k_key.cy / k_key.fy,
             0.0, 0.0, 1.0;
    Eigen::Matrix3d m = pose_key_to_other.rotation;
    m.col(2) += pose_key_to_other.translation * inv_depth;  // + t n^T rho, n = e_z
    return k_other.matrix() * m * k_inv;
}

}  // namespace mvd
