#include "mvd/warp.hpp"

#include <stdexcept>

namespace mvd {

namespace {

struct SourceSample {
    double x = 0.0, y = 0.0;
    bool valid = false;
};

inline SourceSample map_pixel(const Homography& h, int u, int v, int src_w, int src_h) {
    const double du = static_cast<double>(u), dv = static_cast<double>(v);
    const double sw = h(2, 0) * du + h(2, 1) * dv + h(2, 2);
    SourceSample s;
    if (!(sw > 0.0)) return s;
    s.x = (h(0, 0) * du + h(0, 1) * dv + h(0, 2)) / sw;
    s.y = (h(1, 0) * du + h(1, 1) * dv + h(1, 2)) / sw;
    s.valid = s.x >= 0.0 && s.x <= static_cast<double>(src_w - 1) && s.y >= 0.0 &&
              s.y <= static_cast<double>(src_h - 1);
    return s;
}

// Caller guarantees in-bounds coordinates.
inline double bilinear_gray(const Grid<float>& img, double sx, double sy) {
    int x0 = static_cast<int>(sx);
    int y0 = static_cast<int>(sy);
    if (x0 > img.width - 2) x0 = img.width - 2;
    if (y0 > img.height - 2) y0 = img.height - 2;
    if (x0 < 0) x0 = 0;
    if (y0 < 0) y0 = 0;
    const double fx = sx - x0, fy = sy - y0;
    const double v00 = img.at(y0, x0), v01 = img.at(y0, x0 + 1);
    const double v10 = img.at(y0 + 1, x0), v11 = img.at(y0 + 1, x0 + 1);
    return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) + fy * ((1.0 - fx) * v10 + fx * v11);
}

inline void warp_gray_row(const Grid<float>& img, const Homography& h, Grid<float>& out,
                          MaskGrid& valid, int v) {
    for (int u = 0; u < out.width; ++u) {
        const SourceSample s = map_pixel(h, u, v, img.width, img.height);
        if (s.valid) {
            out.at(v, u) = static_cast<float>(bilinear_gray(img, s.x, s.y));
            valid.at(v, u) = 1;
        } else {
            out.at(v, u) = 0.f;
            valid.at(v, u) = 0;
        }
    }
}

inline void warp_rgb_row(const Image& img, const Homography& h, Image& out, MaskGrid& valid, int v) {
    const int c_n = img.channels;
    for (int u = 0; u < out.width; ++u) {
        const SourceSample s = map_pixel(h, u, v, img.width, img.height);
        if (!s.valid) {
            for (int c = 0; c < c_n; ++c) out.at(v, u, c) = 0.f;
            valid.at(v, u) = 0;
            continue;
        }
        int x0 = static_cast<int>(s.x);
        int y0 = static_cast<int>(s.y);
        if (x0 > img.width - 2) x0 = img.width - 2;
        if (y0 > img.height - 2) y0 = img.height - 2;
        if (x0 < 0) x0 = 0;
        if (y0 < 0) y0 = 0;
        const double fx = s.x - x0, fy = s.y - y0;
        for (int c = 0; c < c_n; ++c) {
            const double v00 = img.at(y0, x0, c), v01 = img.at(y0, x0 + 1, c);
            const double v10 = img.at(y0 + 1, x0, c), v11 = img.at(y0 + 1, x0 + 1, c);
            out.at(v, u, c) = static_cast<float>((1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) +
                                                 fy * ((1.0 - fx) * v10 + fx * v11));
        }
        valid.at(v, u) = 1;
    }
}

void check_input(int w, int h, int out_w, int out_h) {
    if (w < 2 || h < 2) throw std::invalid_argument("warp_bilinear: source image must be at least 2x2");
    if (out_w <= 0 || out_h <= 0) throw std::invalid_argument("warp_bilinear: non-positive output size");
}

}  // namespace

WarpResult warp_bilinear(const Image& img, const Homography& h, int out_w, int out_h) {
    check_input(img.width, img.height, out_w, out_h);
    WarpResult r{Image(out_w, out_h, img.channels), MaskGrid(out_w, out_h, 0)};
#pragma omp parallel for schedule(static)
    for (int v = 0; v < out_h; ++v) warp_rgb_row(img, h, r.image, r.valid, v);
    return r;
}

GrayWarpResult warp_bilinear_gray(const Grid<float>& img, const Homography& h, int out_w, int out_h) {
    check_input(img.width, img.height, out_w, out_h);
    GrayWarpResult r{Grid<float>(out_w, out_h), MaskGrid(out_w, out_h, 0)};
#pragma omp parallel for schedule(static)
    for (int v = 0; v < out_h; ++v) warp_gray_row(img, h, r.image, r.valid, v);
    return r;
}

namespace serial {

WarpResult warp_bilinear(const Image& img, const Homography& h, int out_w, int out_h) {
    check_input(img.width, img.height, out_w, out_h);
    WarpResult r{Image(out_w, out_h, img.channels), MaskGrid(out_w, out_h, 0)};
    for (int v = 0; v < out_h; ++v) warp_rgb_row(img, h, r.image, r.valid, v);
    return r;
}

GrayWarpResult warp_bilinear_gray(const Grid<float>& img, const Homography& h, int out_w, int out_h) {
    check_input(img.width, img.height, out_w, out_h);
    GrayWarpResult r{Grid<float>(out_w, out_h), MaskGrid(out_w, out_h, 0)};
    for (int v = 0; v < out_h; ++v) warp_gray_row(img, h, r.image, r.valid, v);
    return r;
}

}  // namespace serial

}  // namespace mvd
