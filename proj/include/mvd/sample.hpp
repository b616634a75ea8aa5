#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvd/geometry.hpp"
#include "mvd/image.hpp"

namespace mvd {

// One calibrated view. The pose maps this view's camera frame to the
// keyview frame (x_key = R * x_view + t).
struct View {
    Image image;
    Pose pose;
    Intrinsics intrinsics;
};

// Keyview plus source views plus (possibly sparse) ground-truth depth for
// the keyview. The keyview pose is the identity by construction.
struct Sample {
    std::string id;
    View keyview;
    std::vector<View> others;
    DepthMap gt_depth;
    std::optional<std::pair<double, double>> gt_range;
};

// Reciprocal on valid pixels; invalid pixels stay 0.
DepthMap depth_to_inverse(const DepthMap& d);
DepthMap inverse_to_depth(const DepthMap& inv);

// Median over valid pixels; for even counts the lower of the two middle
// values. Throws if no pixel is valid.
double median_valid_depth(const DepthMap& d);

}  // namespace mvd
