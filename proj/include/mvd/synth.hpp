#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mvd/sample.hpp"

namespace mvd {

struct PlanePrim {
    Eigen::Vector3d point;
    Eigen::Vector3d normal;  // unit length
};

struct SpherePrim {
    Eigen::Vector3d center;
    double radius = 1.0;
};

using Primitive = std::variant<PlanePrim, SpherePrim>;

// Procedural value-noise texture. Lattice values come from the 64-bit
// murmur-style finalizer (fmix64) so renders are bit-identical across
// platforms; `scale` is lattice cells per world meter at octave 0.
struct NoiseSpec {
    int octaves = 3;
    double scale = 6.0;
    uint64_t seed = 1;
};

struct CameraSpec {
    Pose world_to_camera;  // x_cam = R x_world + t
    Intrinsics intrinsics;
    int width = 0;
    int height = 0;
};

struct SceneSpec {
    std::vector<Primitive> primitives;
    NoiseSpec noise;
    std::vector<CameraSpec> cameras;  // first camera becomes the keyview
};

void validate(const SceneSpec& spec);

// Noise value in [0,1) at a world point (trilinear across the integer
// lattice, octave amplitudes 1, 1/2, 1/4, ...).
double value_noise(const Eigen::Vector3d& p, const NoiseSpec& noise);

// Raycasts every camera. Ray t equals camera-frame z, so hit parameters
// are depths directly; nearest hit wins, ties to the earlier primitive.
// Misses give black pixels and invalid depth.
Sample render(const SceneSpec& spec);

// Ground-truth depth of a single camera; the keyview depth of render()
// equals render_depth(spec, 0).
DepthMap render_depth(const SceneSpec& spec, size_t cam_index);

// Canned scenes for tests and the synth subcommand. The keyview sits at
// the world origin looking down +z; other views are translated copies at
// multiples of `baseline` (alternating sides). `kind` is one of
// "plane", "sphere", "mixed".
SceneSpec make_scene(const std::string& kind, double depth, double baseline,
                     int width, int height, int n_other, uint64_t seed);

namespace serial {
Sample render(const SceneSpec& spec);
}

}  // namespace mvd
