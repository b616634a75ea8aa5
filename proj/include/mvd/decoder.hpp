#pragma once

#include "mvd/fusion.hpp"
#include "mvd/plane_sweep.hpp"
#include "mvd/sample.hpp"

namespace mvd {

// Final per-sample estimate: inverse depth (1/m), Laplace scale b (1/m),
// validity. Valid pixels keep inv_depth inside the hypothesis interval;
// invalid pixels carry zeros.
struct DepthEstimate {
    Grid<double> inv_depth;
    Grid<double> uncertainty;
    MaskGrid valid;
};

struct WtaResult {
    Grid<int> index;      // argmin hypothesis; -1 where no valid entry
    Grid<float> min_cost; // 1.0 where invalid
    MaskGrid valid;
};

// Winner-takes-all over valid entries; ties go to the smaller index.
WtaResult wta_decode(const CostVolume& vol);

// Parabolic refinement around the winner using the stored neighbor
// costs: delta = (c[k-1] - c[k+1]) / (2 (c[k-1] - 2 c[k] + c[k+1])),
// clamped to [-0.5, 0.5]; zero at boundary indices or zero curvature.
Grid<double> subpixel_refine(const CostVolume& vol, const WtaResult& wta);

// Laplace scale from the softmin distribution over valid hypotheses:
// b = sum_k p_k |rho_k - rho_hat|, p_k = softmin of costs at `temp`.
Grid<double> uncertainty_map(const CostVolume& vol, const Grid<double>& inv_depth,
                             double temp);

// Full pipeline: sweep every other view, fuse, decode, refine, attach
// uncertainty. Pixels whose fused cost profile is incomplete (some
// hypothesis unscored in every view, typically near image borders where
// large-disparity warps leave the frame) are invalid: a minimum over a
// truncated profile says nothing about the unscored range. Deterministic
// for a fixed sample and config.
DepthEstimate estimate_depth(const Sample& sample, const SweepConfig& cfg,
                             FusionMode mode);

namespace serial {
WtaResult wta_decode(const CostVolume& vol);
Grid<double> subpixel_refine(const CostVolume& vol, const WtaResult& wta);
Grid<double> uncertainty_map(const CostVolume& vol, const Grid<double>& inv_depth,
                             double temp);
DepthEstimate estimate_depth(const Sample& sample, const SweepConfig& cfg,
                             FusionMode mode);
}  // namespace serial

}  // namespace mvd
