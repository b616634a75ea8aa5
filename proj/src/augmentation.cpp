#include "mvd/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvd {

namespace {

constexpr double kInvDepthLo = 0.009;  // 1/m
constexpr double kInvDepthHi = 2.75;   // 1/m

// Integer uniform in [lo, hi].
int uniform_int(Pcg32& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.bounded(static_cast<uint32_t>(hi - lo + 1)));
}

}  // namespace

DepthHistogram DepthHistogram::make(int bins) {
    if (bins < 1) throw std::invalid_argument("DepthHistogram: need at least one bin");
    DepthHistogram h;
    h.counts.assign(static_cast<size_t>(bins), 0);
    h.edges.resize(static_cast<size_t>(bins) + 1);
    const double lo = std::log(1.0 / kInvDepthHi);
    const double hi = std::log(1.0 / kInvDepthLo);
    for (int i = 0; i <= bins; ++i)
        h.edges[static_cast<size_t>(i)] = std::exp(lo + (hi - lo) * i / bins);
    return h;
}

double DepthHistogram::label(int b) const {
    return std::sqrt(edges[static_cast<size_t>(b)] * edges[static_cast<size_t>(b) + 1]);
}

int DepthHistogram::bin_of(double depth) const {
    if (!(depth >= edges.front()) || !(depth < edges.back())) return -1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), depth);
    return static_cast<int>(it - edges.begin()) - 1;
}

void histogram_update(DepthHistogram& h, const DepthMap& depths) {
    for (double d : depths.data) {
        if (!depth_valid(d)) continue;
        const int b = h.bin_of(d);
        if (b >= 0) ++h.counts[static_cast<size_t>(b)];
    }
}

double choose_scale(const DepthHistogram& h, double sample_median_depth) {
    if (!(sample_median_depth > 0.0) || !std::isfinite(sample_median_depth))
        throw std::invalid_argument("choose_scale: median depth must be positive");
    int best = 0;
    for (int b = 1; b < h.bins(); ++b)
        if (h.counts[static_cast<size_t>(b)] < h.counts[static_cast<size_t>(best)]) best = b;
    return h.label(best) / sample_median_depth;
}

Sample apply_scale(const Sample& sample, double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("apply_scale: scale must be positive and finite");
    Sample out = sample;
    out.keyview.pose.translation *= s;
    for (View& v : out.others) v.pose.translation *= s;
    for (double& d : out.gt_depth.data) {
        if (!depth_valid(d)) {
            d = 0.0;
            continue;
        }
        d *= s;
        const double inv = 1.0 / d;
        if (inv < kInvDepthLo || inv > kInvDepthHi) d = 0.0;
    }
    if (out.gt_range) out.gt_range = {out.gt_range->first * s, out.gt_range->second * s};
    return out;
}

std::vector<View> erase_regions(const std::vector<View>& views, uint64_t rng_seed) {
    Pcg32 rng(rng_seed);
    std::vector<View> out = views;
    for (View& view : out) {
        Image& img = view.image;
        if (img.width < 3 || img.height < 3)
            throw std::invalid_argument("erase_regions: image too small");
        std::vector<float> mean(static_cast<size_t>(img.channels), 0.f);
        for (int c = 0; c < img.channels; ++c) {
            double sum = 0.0;
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x) sum += img.at(y, x, c);
            mean[static_cast<size_t>(c)] =
                static_cast<float>(sum / (static_cast<double>(img.width) * img.height));
        }
        const int n_rects = uniform_int(rng, 1, 3);
        for (int r = 0; r < n_rects; ++r) {
            const int w_lo = static_cast<int>(std::ceil(0.1 * img.width));
            const int w_hi = static_cast<int>(std::floor(0.4 * img.width));
            const int h_lo = static_cast<int>(std::ceil(0.1 * img.height));
            const int h_hi = static_cast<int>(std::floor(0.4 * img.height));
            const int rw = uniform_int(rng, w_lo, w_hi);
            const int rh = uniform_int(rng, h_lo, h_hi);
            const int x0 = uniform_int(rng, 0, img.width - rw);
            const int y0 = uniform_int(rng, 0, img.height - rh);
            for (int y = y0; y < y0 + rh; ++y)
                for (int x = x0; x < x0 + rw; ++x)
                    for (int c = 0; c < img.channels; ++c)
                        img.at(y, x, c) = mean[static_cast<size_t>(c)];
        }
    }
    return out;
}

PhotoParams draw_photo_params(Pcg32& rng) {
    PhotoParams p;
    p.brightness = rng.uniform(-0.1, 0.1);
    p.contrast = rng.uniform(0.8, 1.25);
    p.gamma = rng.uniform(0.8, 1.25);
    return p;
}

Image apply_photometric(const Image& img, const PhotoParams& p) {
    Image out = img;
    for (float& v : out.data) {
        const double base = (p.gamma == 1.0) ? v : std::pow(static_cast<double>(v), p.gamma);
        const double t = p.contrast * base + p.brightness;
        v = static_cast<float>(std::min(std::max(t, 0.0), 1.0));
    }
    return out;
}

std::vector<View> photometric_augment(const std::vector<View>& views, uint64_t rng_seed) {
    Pcg32 rng(rng_seed);
    const PhotoParams p = draw_photo_params(rng);
    std::vector<View> out = views;
    for (View& v : out) v.image = apply_photometric(v.image, p);
    return out;
}

}  // namespace mvd
