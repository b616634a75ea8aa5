#include "mvd/decoder.hpp"

#include <cmath>
#include <stdexcept>

namespace mvd {

namespace {

void wta_row(const CostVolume& vol, int y, WtaResult& out) {
    const int n_hyp = vol.n_hyp();
    for (int x = 0; x < vol.width; ++x) {
        int best = -1;
        float best_cost = 1.0f;
        for (int k = 0; k < n_hyp; ++k) {
            const size_t idx = vol.idx(k, y, x);
            if (!vol.valid[idx]) continue;
            if (best < 0 || vol.costs[idx] < best_cost) {
                best = k;
                best_cost = vol.costs[idx];
            }
        }
        out.index.at(y, x) = best;
        if (best >= 0) {
            out.min_cost.at(y, x) = best_cost;
            out.valid.at(y, x) = 1;
        }
    }
}

void refine_row(const CostVolume& vol, const WtaResult& wta, int y,
                Grid<double>& out) {
    const int n_hyp = vol.n_hyp();
    const double step = vol.hypotheses[1] - vol.hypotheses[0];
    for (int x = 0; x < vol.width; ++x) {
        const int k = wta.index.at(y, x);
        if (k < 0) continue;
        double delta = 0.0;
        if (k > 0 && k < n_hyp - 1) {
            const double cm = vol.costs[vol.idx(k - 1, y, x)];
            const double c0 = vol.costs[vol.idx(k, y, x)];
            const double cp = vol.costs[vol.idx(k + 1, y, x)];
            const double curv = cm - 2.0 * c0 + cp;
            if (curv != 0.0) {
                delta = (cm - cp) / (2.0 * curv);
                delta = std::min(std::max(delta, -0.5), 0.5);
            }
        }
        out.at(y, x) = vol.hypotheses[k] + delta * step;
    }
}

void uncert_row(const CostVolume& vol, const Grid<double>& inv_depth, double temp,
                int y, Grid<double>& out) {
    const int n_hyp = vol.n_hyp();
    for (int x = 0; x < vol.width; ++x) {
        double wsum = 0.0, bsum = 0.0;
        const double rho_hat = inv_depth.at(y, x);
        for (int k = 0; k < n_hyp; ++k) {
            const size_t idx = vol.idx(k, y, x);
            if (!vol.valid[idx]) continue;
            const double p = std::exp(-static_cast<double>(vol.costs[idx]) / temp);
            wsum += p;
            bsum += p * std::abs(vol.hypotheses[k] - rho_hat);
        }
        if (wsum > 0.0) out.at(y, x) = bsum / wsum;
    }
}

WtaResult wta_impl(const CostVolume& vol, bool parallel) {
    WtaResult out;
    out.index = Grid<int>(vol.width, vol.height, -1);
    out.min_cost = Grid<float>(vol.width, vol.height, 1.0f);
    out.valid = MaskGrid(vol.width, vol.height, 0);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < vol.height; ++y) wta_row(vol, y, out);
    } else {
        for (int y = 0; y < vol.height; ++y) wta_row(vol, y, out);
    }
    return out;
}

Grid<double> refine_impl(const CostVolume& vol, const WtaResult& wta, bool parallel) {
    if (vol.n_hyp() < 2)
        throw std::invalid_argument("subpixel_refine: need at least 2 hypotheses");
    Grid<double> out(vol.width, vol.height, 0.0);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < vol.height; ++y) refine_row(vol, wta, y, out);
    } else {
        for (int y = 0; y < vol.height; ++y) refine_row(vol, wta, y, out);
    }
    return out;
}

Grid<double> uncert_impl(const CostVolume& vol, const Grid<double>& inv_depth,
                         double temp, bool parallel) {
    if (!(temp > 0.0))
        throw std::invalid_argument("uncertainty_map: temperature must be positive");
    Grid<double> out(vol.width, vol.height, 0.0);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < vol.height; ++y) uncert_row(vol, inv_depth, temp, y, out);
    } else {
        for (int y = 0; y < vol.height; ++y) uncert_row(vol, inv_depth, temp, y, out);
    }
    return out;
}

DepthEstimate estimate_impl(const Sample& sample, const SweepConfig& cfg,
                            FusionMode mode, bool parallel) {
    if (sample.others.empty())
        throw std::invalid_argument("estimate_depth: sample has no other views");
    std::vector<CostVolume> vols;
    vols.reserve(sample.others.size());
    for (const View& v : sample.others)
        vols.push_back(parallel ? sweep_view(sample.keyview, v, cfg)
                                : serial::sweep_view(sample.keyview, v, cfg));
    CostVolume fused;
    if (mode == FusionMode::kAverage) {
        fused = parallel ? fuse_average(vols) : serial::fuse_average(vols);
    } else {
        const auto weights = parallel ? confidence_weights(vols, cfg.weight_temp)
                                      : serial::confidence_weights(vols, cfg.weight_temp);
        fused = parallel ? fuse_weighted(vols, weights)
                         : serial::fuse_weighted(vols, weights);
    }
    const WtaResult wta = wta_impl(fused, parallel);
    DepthEstimate est;
    est.inv_depth = refine_impl(fused, wta, parallel);
    est.uncertainty = uncert_impl(fused, est.inv_depth, cfg.softmin_temp, parallel);
    est.valid = wta.valid;
    // A minimum found on a truncated cost profile is unreliable: when some
    // hypothesis was untestable at a pixel (its warp left every source
    // image), the true minimum may sit in the unscored part of the range.
    // Emit depth only where the whole sweep interval was scored.
    for (int y = 0; y < fused.height; ++y)
        for (int x = 0; x < fused.width; ++x) {
            if (!est.valid.at(y, x)) continue;
            bool complete = true;
            for (int k = 0; k < fused.n_hyp() && complete; ++k)
                complete = fused.valid[fused.idx(k, y, x)] != 0;
            if (!complete) {
                est.valid.at(y, x) = 0;
                est.inv_depth.at(y, x) = 0.0;
                est.uncertainty.at(y, x) = 0.0;
            }
        }
    return est;
}

}  // namespace

WtaResult wta_decode(const CostVolume& vol) { return wta_impl(vol, true); }

Grid<double> subpixel_refine(const CostVolume& vol, const WtaResult& wta) {
    return refine_impl(vol, wta, true);
}

Grid<double> uncertainty_map(const CostVolume& vol, const Grid<double>& inv_depth,
                             double temp) {
    return uncert_impl(vol, inv_depth, temp, true);
}

DepthEstimate estimate_depth(const Sample& sample, const SweepConfig& cfg,
                             FusionMode mode) {
    return estimate_impl(sample, cfg, mode, true);
}

namespace serial {

WtaResult wta_decode(const CostVolume& vol) { return wta_impl(vol, false); }

Grid<double> subpixel_refine(const CostVolume& vol, const WtaResult& wta) {
    return refine_impl(vol, wta, false);
}

Grid<double> uncertainty_map(const CostVolume& vol, const Grid<double>& inv_depth,
                             double temp) {
    return uncert_impl(vol, inv_depth, temp, false);
}

DepthEstimate estimate_depth(const Sample& sample, const SweepConfig& cfg,
                             FusionMode mode) {
    return estimate_impl(sample, cfg, mode, false);
}

}  // namespace serial

}  // namespace mvd
