#include "mvd/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace mvd {

namespace {

void check_volumes(const std::vector<CostVolume>& vols) {
    if (vols.empty()) throw std::invalid_argument("fuse: need at least one volume");
    for (size_t i = 1; i < vols.size(); ++i)
        if (!vols[0].same_shape(vols[i]))
            throw std::invalid_argument("fuse: volume shape or hypothesis mismatch");
}

void weights_row(const std::vector<CostVolume>& vols, double temp, int y,
                 std::vector<Grid<double>>& out) {
    const int w = vols[0].width;
    const int n_hyp = vols[0].n_hyp();
    const size_t n_views = vols.size();
    for (int x = 0; x < w; ++x) {
        double total = 0.0;
        for (size_t i = 0; i < n_views; ++i) {
            const CostVolume& v = vols[i];
            int n_valid = 0;
            double c_min = 1.0;
            for (int k = 0; k < n_hyp; ++k) {
                const size_t idx = v.idx(k, y, x);
                if (!v.valid[idx]) continue;
                ++n_valid;
                c_min = std::min(c_min, static_cast<double>(v.costs[idx]));
            }
            const double frac = static_cast<double>(n_valid) / n_hyp;
            const double wt = frac > 0.0 ? frac * std::exp(-c_min / temp) : 0.0;
            out[i].at(y, x) = wt;
            total += wt;
        }
        if (total > 0.0) {
            for (size_t i = 0; i < n_views; ++i) out[i].at(y, x) /= total;
        } else {
            const double uniform = 1.0 / static_cast<double>(n_views);
            for (size_t i = 0; i < n_views; ++i) out[i].at(y, x) = uniform;
        }
    }
}

std::vector<Grid<double>> weights_impl(const std::vector<CostVolume>& vols,
                                       double temp, bool parallel) {
    check_volumes(vols);
    if (!(temp > 0.0))
        throw std::invalid_argument("confidence_weights: temperature must be positive");
    const int w = vols[0].width, h = vols[0].height;
    std::vector<Grid<double>> out(vols.size(), Grid<double>(w, h, 0.0));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) weights_row(vols, temp, y, out);
    } else {
        for (int y = 0; y < h; ++y) weights_row(vols, temp, y, out);
    }
    return out;
}

// One hypothesis slab of the weighted fusion; views accumulate in index
// order so parallel and serial drivers agree bitwise.
void fuse_slab(const std::vector<CostVolume>& vols,
               const std::vector<Grid<double>>& weights, int k, CostVolume& out) {
    const int w = out.width, h = out.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double num = 0.0, den = 0.0;
            for (size_t i = 0; i < vols.size(); ++i) {
                const size_t idx = vols[i].idx(k, y, x);
                if (!vols[i].valid[idx]) continue;
                const double wt = weights[i].at(y, x);
                num += wt * vols[i].costs[idx];
                den += wt;
            }
            const size_t idx = out.idx(k, y, x);
            if (den > 0.0) {
                out.costs[idx] = static_cast<float>(num / den);
                out.valid[idx] = 1;
            }  // stays cost 1.0, invalid otherwise
        }
    }
}

CostVolume fuse_weighted_impl(const std::vector<CostVolume>& vols,
                              const std::vector<Grid<double>>& weights,
                              bool parallel) {
    check_volumes(vols);
    if (weights.size() != vols.size())
        throw std::invalid_argument("fuse_weighted: one weight grid per volume required");
    for (const Grid<double>& g : weights)
        if (g.width != vols[0].width || g.height != vols[0].height)
            throw std::invalid_argument("fuse_weighted: weight grid shape mismatch");
    CostVolume out(vols[0].width, vols[0].height, vols[0].hypotheses);
    const int n_hyp = out.n_hyp();
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n_hyp; ++k) fuse_slab(vols, weights, k, out);
    } else {
        for (int k = 0; k < n_hyp; ++k) fuse_slab(vols, weights, k, out);
    }
    return out;
}

std::vector<Grid<double>> uniform_weights(const std::vector<CostVolume>& vols) {
    const double u = 1.0 / static_cast<double>(vols.size());
    return std::vector<Grid<double>>(vols.size(),
                                     Grid<double>(vols[0].width, vols[0].height, u));
}

}  // namespace

std::vector<Grid<double>> confidence_weights(const std::vector<CostVolume>& vols,
                                             double temp) {
    return weights_impl(vols, temp, true);
}

CostVolume fuse_average(const std::vector<CostVolume>& vols) {
    check_volumes(vols);
    return fuse_weighted_impl(vols, uniform_weights(vols), true);
}

CostVolume fuse_weighted(const std::vector<CostVolume>& vols,
                         const std::vector<Grid<double>>& weights) {
    return fuse_weighted_impl(vols, weights, true);
}

CostVolume fuse(const std::vector<CostVolume>& vols, FusionMode mode,
                double weight_temp) {
    if (mode == FusionMode::kAverage) return fuse_average(vols);
    return fuse_weighted(vols, confidence_weights(vols, weight_temp));
}

namespace serial {

std::vector<Grid<double>> confidence_weights(const std::vector<CostVolume>& vols,
                                             double temp) {
    return weights_impl(vols, temp, false);
}

CostVolume fuse_average(const std::vector<CostVolume>& vols) {
    check_volumes(vols);
    return fuse_weighted_impl(vols, uniform_weights(vols), false);
}

CostVolume fuse_weighted(const std::vector<CostVolume>& vols,
                         const std::vector<Grid<double>>& weights) {
    return fuse_weighted_impl(vols, weights, false);
}

}  // namespace serial

}  // namespace mvd
