#pragma once

#include <cstdint>
#include <vector>

#include "mvd/pcg32.hpp"
#include "mvd/sample.hpp"

namespace mvd {

// Log-binned depth occupancy over [1/2.75, 1/0.009] meters, matching the
// inverse-depth mask bounds. Bin labels are geometric edge means.
struct DepthHistogram {
    std::vector<double> edges;  // B+1, strictly increasing depths
    std::vector<uint64_t> counts;

    static DepthHistogram make(int bins = 100);
    int bins() const { return static_cast<int>(counts.size()); }
    double label(int b) const;
    // Bin with edges[b] <= depth < edges[b+1]; -1 outside the domain.
    int bin_of(double depth) const;
};

// Each valid in-domain depth increments its bin.
void histogram_update(DepthHistogram& h, const DepthMap& depths);

// label(argmin-count bin) / sample median; count ties go to the lowest
// bin index.
double choose_scale(const DepthHistogram& h, double sample_median_depth);

// Translations and GT depth scaled by s; inverse depths leaving
// [0.009, 2.75] 1/m become invalid. Rotations, intrinsics, images
// untouched.
Sample apply_scale(const Sample& sample, double s);

// 1-3 mean-color rectangles per view, each side 10-40% of its dimension
// (PCG32 draws: rectangle count, then per rectangle width, height, x, y).
std::vector<View> erase_regions(const std::vector<View>& views, uint64_t rng_seed);

struct PhotoParams {
    double brightness = 0.0;  // in [-0.1, 0.1]
    double contrast = 1.0;    // in [0.8, 1.25]
    double gamma = 1.0;       // in [0.8, 1.25]
};

// Draw order: brightness, contrast, gamma.
PhotoParams draw_photo_params(Pcg32& rng);

// clamp(contrast * v^gamma + brightness) per channel.
Image apply_photometric(const Image& img, const PhotoParams& p);

// One shared parameter draw applied identically to every view.
std::vector<View> photometric_augment(const std::vector<View>& views, uint64_t rng_seed);

}  // namespace mvd
