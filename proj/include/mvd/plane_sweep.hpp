#pragma once

#include <span>
#include <vector>

#include "mvd/sample.hpp"

namespace mvd {

struct SweepConfig {
    double d_min = 0.2;   // meters; absolute-setting default range
    double d_max = 100.0;
    int n_hyp = 64;
    int patch_radius = 2;       // 5x5 matching window
    double softmin_temp = 0.05; // cost-profile softmin temperature
    double weight_temp = 0.25;  // view confidence-weight temperature
};

// Throws std::invalid_argument on violated invariants.
void validate(const SweepConfig& cfg);

// Hypotheses uniform in inverse depth, ascending:
// rho_k = 1/d_max + k * (1/d_min - 1/d_max) / (n_hyp - 1).
std::vector<double> build_hypotheses(const SweepConfig& cfg);

// Per-view matching costs over inverse-depth hypotheses. Costs live in
// [0,1] with 0 a perfect match; invalid cells carry cost exactly 1.0.
struct CostVolume {
    int width = 0;
    int height = 0;
    std::vector<double> hypotheses;
    std::vector<float> costs;
    std::vector<uint8_t> valid;

    CostVolume() = default;
    CostVolume(int w, int h, std::vector<double> hyps)
        : width(w), height(h), hypotheses(std::move(hyps)),
          costs(hypotheses.size() * static_cast<size_t>(w) * h, 1.0f),
          valid(hypotheses.size() * static_cast<size_t>(w) * h, 0) {}

    int n_hyp() const { return static_cast<int>(hypotheses.size()); }
    size_t idx(int k, int y, int x) const {
        return (static_cast<size_t>(k) * height + y) * width + x;
    }
    bool same_shape(const CostVolume& o) const {
        return width == o.width && height == o.height && hypotheses == o.hypotheses;
    }
};

struct PatchScore {
    double cost = 1.0;
    bool valid = false;
};

// cost = (1 - ZNCC) / 2 for two equal-size patches; a patch with variance
// below 1e-12 yields cost 1.0, invalid.
PatchScore zncc_cost(std::span<const float> patch_a, std::span<const float> patch_b);

// Warps `other` onto the keyview at every hypothesis and scores 5x5 (or
// 2r+1) ZNCC patches. A pixel is invalid at a hypothesis if its window
// leaves the image, touches an invalid warped pixel, or is textureless.
CostVolume sweep_view(const View& key, const View& other, const SweepConfig& cfg);

namespace serial {
CostVolume sweep_view(const View& key, const View& other, const SweepConfig& cfg);
}

}  // namespace mvd
