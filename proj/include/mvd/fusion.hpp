#pragma once

#include <vector>

#include "mvd/plane_sweep.hpp"

namespace mvd {

enum class FusionMode { kAverage, kWeighted };

// Per-view fusion weight for every pixel. Each view contributes
// v_i * exp(-c_min_i / weight_temp), with v_i its fraction of valid
// hypotheses at that pixel and c_min_i its best cost there; weights are
// normalized to sum to 1 over views with any validity, and uniform when
// no view is valid.
std::vector<Grid<double>> confidence_weights(const std::vector<CostVolume>& volumes,
                                             double weight_temp);

// Mean cost over views with a valid entry; cells valid in no view get
// cost 1.0 and stay invalid. Implemented as the weighted kernel with
// uniform weights so the two modes agree bitwise in the uniform case.
CostVolume fuse_average(const std::vector<CostVolume>& volumes);

// Weighted mean, renormalized over the views that are valid at each
// cell; cells with zero total weight are invalid. Views are always
// summed in index order.
CostVolume fuse_weighted(const std::vector<CostVolume>& volumes,
                         const std::vector<Grid<double>>& weights);

CostVolume fuse(const std::vector<CostVolume>& volumes, FusionMode mode,
                double weight_temp);

namespace serial {
std::vector<Grid<double>> confidence_weights(const std::vector<CostVolume>& volumes,
                                             double weight_temp);
CostVolume fuse_average(const std::vector<CostVolume>& volumes);
CostVolume fuse_weighted(const std::vector<CostVolume>& volumes,
                         const std::vector<Grid<double>>& weights);
}  // namespace serial

}  // namespace mvd
