#include "mvd/sample.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvd {

DepthMap depth_to_inverse(const DepthMap& d) {
    DepthMap inv(d.width, d.height, 0.0);
    for (size_t i = 0; i < d.data.size(); ++i)
        if (depth_valid(d.data[i])) inv.data[i] = 1.0 / d.data[i];
    return inv;
}

DepthMap inverse_to_depth(const DepthMap& inv) {
    DepthMap d(inv.width, inv.height, 0.0);
    for (size_t i = 0; i < inv.data.size(); ++i)
        if (depth_valid(inv.data[i])) d.data[i] = 1.0 / inv.data[i];
    return d;
}

double median_valid_depth(const DepthMap& d) {
    std::vector<double> vals;
    vals.reserve(d.data.size());
    for (double v : d.data)
        if (depth_valid(v)) vals.push_back(v);
    if (vals.empty()) throw std::runtime_error("median_valid_depth: no valid pixels");
    const size_t mid = (vals.size() - 1) / 2;  // lower middle for even counts
    std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
    return vals[mid];
}

Grid<float> to_gray(const Image& img) {
    Grid<float> g(img.width, img.height);
    if (img.channels == 1) {
        std::copy(img.data.begin(), img.data.end(), g.data.begin());
        return g;
    }
    const float inv_c = 1.0f / static_cast<float>(img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            float s = 0.f;
            for (int c = 0; c < img.channels; ++c) s += img.at(y, x, c);
            g.at(y, x) = s * inv_c;
        }
    return g;
}

}  // namespace mvd
