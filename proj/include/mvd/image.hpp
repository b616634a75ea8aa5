#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace mvd {

// Row-major single-channel grid. Pixel centers sit at integer coordinates,
// origin at the top-left, x to the right, y down.
template <typename T>
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    T& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
    const T& at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }

    bool empty() const { return data.empty(); }
    size_t size() const { return data.size(); }

    bool same_shape(const Grid& o) const { return width == o.width && height == o.height; }
};

// Interleaved row-major image, values in [0, 1].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.f)
        : width(w), height(h), channels(c), data(static_cast<size_t>(w) * h * c, fill) {}

    float& at(int y, int x, int c) { return data[(static_cast<size_t>(y) * width + x) * channels + c]; }
    const float& at(int y, int x, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    bool empty() const { return data.empty(); }
};

// Depth maps are stored in meters; a value <= 0 or non-finite marks a pixel
// as invalid / no ground truth.
using DepthMap = Grid<double>;
using MaskGrid = Grid<uint8_t>;

inline bool depth_valid(double v) { return std::isfinite(v) && v > 0.0; }

// Channel mean; the matching costs operate on this single channel.
Grid<float> to_gray(const Image& img);

}  // namespace mvd
