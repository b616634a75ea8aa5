#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvd/sample.hpp"

namespace mvd {

// JSON manifest describing a test set. File paths are relative to the
// manifest's directory. Poses are 3x4 row-major [R|t] mapping the view
// frame into the keyview frame.
struct ManifestView {
    std::string image;
    std::array<double, 12> pose{};
    std::array<double, 4> intrinsics{};  // fx, fy, cx, cy
};

struct ManifestSample {
    std::string id;
    std::string key_image;
    std::string key_depth;
    std::array<double, 4> key_intrinsics{};
    std::optional<std::pair<double, double>> gt_range;
    std::vector<ManifestView> views;
};

struct Manifest {
    std::filesystem::path dir;
    std::vector<ManifestSample> samples;
};

Manifest load_manifest(const std::filesystem::path& path);

// Reads and validates one sample: all files must exist and parse, every
// image must match the key image's resolution, poses must be orthonormal
// within 1e-4 (then re-orthonormalized), focal lengths positive.
Sample load_sample(const Manifest& m, size_t index);

void save_manifest(const Manifest& m, const std::filesystem::path& path);

}  // namespace mvd
