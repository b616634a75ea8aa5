#pragma once

#include <Eigen/Geometry>
#include <atomic>
#include <filesystem>
#include <string>

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

#include "mvd/geometry.hpp"
#include "mvd/pcg32.hpp"

namespace testutil {

inline Eigen::Matrix4d to_hom(const mvd::Pose& p) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = p.rotation;
    m.topRightCorner<3, 1>() = p.translation;
    return m;
}

inline mvd::Pose random_pose(mvd::Pcg32& rng, double max_angle = 3.0, double max_t = 1.0) {
    Eigen::Vector3d axis(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                         rng.uniform(-1.0, 1.0));
    if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitZ();
    axis.normalize();
    mvd::Pose p;
    p.rotation = Eigen::AngleAxisd(rng.uniform(-max_angle, max_angle), axis).toRotationMatrix();
    p.translation = Eigen::Vector3d(rng.uniform(-max_t, max_t), rng.uniform(-max_t, max_t),
                                    rng.uniform(-max_t, max_t));
    return p;
}

inline mvd::Intrinsics random_intrinsics(mvd::Pcg32& rng) {
    return {rng.uniform(50.0, 500.0), rng.uniform(50.0, 500.0), rng.uniform(20.0, 200.0),
            rng.uniform(20.0, 200.0)};
}

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("mvd_test_" + tag + "_" + std::to_string(getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testutil
