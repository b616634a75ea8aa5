#pragma once

#include "mvd/geometry.hpp"
#include "mvd/image.hpp"

namespace mvd {

struct WarpResult {
    Image image;
    MaskGrid valid;
};

struct GrayWarpResult {
    Grid<float> image;
    MaskGrid valid;
};

// Output pixel (u,v) samples img at H*(u,v,1) with bilinear interpolation.
// Pixels whose source falls outside [0,W-1]x[0,H-1] (or behind the plane,
// i.e. non-positive homogeneous w) are invalid and set to 0.
WarpResult warp_bilinear(const Image& img, const Homography& h, int out_w, int out_h);

GrayWarpResult warp_bilinear_gray(const Grid<float>& img, const Homography& h, int out_w, int out_h);

namespace serial {
WarpResult warp_bilinear(const Image& img, const Homography& h, int out_w, int out_h);
GrayWarpResult warp_bilinear_gray(const Grid<float>& img, const Homography& h, int out_w, int out_h);
}  // namespace serial

}  // namespace mvd
