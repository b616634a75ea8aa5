#include "mvd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mvd {

namespace {

// Nested-lerp bilinear sample with edge clamping; exact for constant
// grids and for integral coordinates.
double bilinear_clamped(const Grid<double>& g, double sx, double sy) {
    const int w = g.width, h = g.height;
    double cx = std::min(std::max(sx, 0.0), static_cast<double>(w - 1));
    double cy = std::min(std::max(sy, 0.0), static_cast<double>(h - 1));
    int x0 = std::min(static_cast<int>(cx), w - 2);
    int y0 = std::min(static_cast<int>(cy), h - 2);
    if (w == 1) x0 = 0;
    if (h == 1) y0 = 0;
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double tx = cx - x0, ty = cy - y0;
    const double top = g.at(y0, x0) + tx * (g.at(y0, x1) - g.at(y0, x0));
    const double bot = g.at(y1, x0) + tx * (g.at(y1, x1) - g.at(y1, x0));
    return top + ty * (bot - top);
}

size_t count_joint(const DepthMap& pred, const DepthMap& gt) {
    if (!pred.same_shape(gt))
        throw std::invalid_argument("metrics: prediction/GT shape mismatch");
    size_t m = 0;
    for (size_t i = 0; i < gt.data.size(); ++i)
        if (depth_valid(pred.data[i]) && depth_valid(gt.data[i])) ++m;
    return m;
}

double median_joint(const DepthMap& d, const DepthMap& pred, const DepthMap& gt) {
    std::vector<double> vals;
    vals.reserve(gt.data.size());
    for (size_t i = 0; i < gt.data.size(); ++i)
        if (depth_valid(pred.data[i]) && depth_valid(gt.data[i]))
            vals.push_back(d.data[i]);
    if (vals.empty())
        throw std::invalid_argument("align_median: no jointly valid pixels");
    const size_t mid = (vals.size() - 1) / 2;  // lower middle for even counts
    std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
    return vals[mid];
}

}  // namespace

void validate(const EvalSettings& s) {
    if (!(s.clip_lo < s.clip_hi) || !(s.clip_lo > 0.0))
        throw std::invalid_argument("EvalSettings: need 0 < clip_lo < clip_hi");
    if (!(s.inlier_threshold > 1.0))
        throw std::invalid_argument("EvalSettings: inlier threshold must exceed 1");
    if (s.alignment == Alignment::kExternalScalar && !(s.scalar > 0.0))
        throw std::invalid_argument("EvalSettings: external scalar must be positive");
}

DepthEstimate upsample_prediction(const DepthEstimate& pred, int full_w, int full_h) {
    if (pred.inv_depth.empty())
        throw std::invalid_argument("upsample_prediction: empty prediction");
    const int sw = pred.inv_depth.width, sh = pred.inv_depth.height;
    if (sw == full_w && sh == full_h) return pred;
    if (full_w <= 0 || full_h <= 0)
        throw std::invalid_argument("upsample_prediction: bad target size");
    DepthEstimate out;
    out.inv_depth = Grid<double>(full_w, full_h, 0.0);
    out.uncertainty = Grid<double>(full_w, full_h, 0.0);
    out.valid = MaskGrid(full_w, full_h, 0);
    const double rx = static_cast<double>(sw) / full_w;
    const double ry = static_cast<double>(sh) / full_h;
    for (int y = 0; y < full_h; ++y) {
        const double sy = y * ry;
        const int ny = std::min(static_cast<int>(std::floor(sy + 0.5)), sh - 1);
        for (int x = 0; x < full_w; ++x) {
            const double sx = x * rx;
            out.inv_depth.at(y, x) = bilinear_clamped(pred.inv_depth, sx, sy);
            out.uncertainty.at(y, x) = bilinear_clamped(pred.uncertainty, sx, sy);
            const int nx = std::min(static_cast<int>(std::floor(sx + 0.5)), sw - 1);
            out.valid.at(y, x) = pred.valid.at(ny, nx);
        }
    }
    return out;
}

DepthMap clip_depth(const DepthMap& d, const EvalSettings& settings) {
    validate(settings);
    DepthMap out = d;
    for (double& v : out.data)
        if (depth_valid(v)) v = std::min(std::max(v, settings.clip_lo), settings.clip_hi);
    return out;
}

AlignResult align_median(const DepthMap& pred, const DepthMap& gt) {
    if (count_joint(pred, gt) == 0)
        throw std::invalid_argument("align_median: no jointly valid pixels");
    const double med_pred = median_joint(pred, pred, gt);
    const double med_gt = median_joint(gt, pred, gt);
    if (!(med_pred > 0.0))
        throw std::invalid_argument("align_median: nonpositive prediction median");
    AlignResult r;
    r.scale = med_gt / med_pred;
    r.aligned = pred;
    for (double& v : r.aligned.data)
        if (depth_valid(v)) v *= r.scale;
    return r;
}

double abs_rel(const DepthMap& pred, const DepthMap& gt) {
    const size_t m = count_joint(pred, gt);
    if (m == 0) throw std::invalid_argument("abs_rel: zero valid pixels");
    double sum = 0.0;
    for (size_t i = 0; i < gt.data.size(); ++i)
        if (depth_valid(pred.data[i]) && depth_valid(gt.data[i]))
            sum += std::abs(pred.data[i] - gt.data[i]) / gt.data[i];
    return 100.0 * sum / static_cast<double>(m);
}

double inlier_ratio(const DepthMap& pred, const DepthMap& gt, double threshold) {
    const size_t m = count_joint(pred, gt);
    if (m == 0) throw std::invalid_argument("inlier_ratio: zero valid pixels");
    size_t inliers = 0;
    for (size_t i = 0; i < gt.data.size(); ++i) {
        if (!depth_valid(pred.data[i]) || !depth_valid(gt.data[i])) continue;
        const double ratio = std::max(pred.data[i] / gt.data[i], gt.data[i] / pred.data[i]);
        if (ratio < threshold) ++inliers;
    }
    return 100.0 * static_cast<double>(inliers) / static_cast<double>(m);
}

PreparedSample prepare_sample(const DepthEstimate& pred, const Sample& sample,
                              const EvalSettings& settings) {
    validate(settings);
    const DepthEstimate up =
        upsample_prediction(pred, sample.gt_depth.width, sample.gt_depth.height);
    PreparedSample out;
    out.uncertainty = up.uncertainty;
    out.pred_valid = up.valid;
    // Invert under the validity mask: interpolation can leave nonzero
    // inverse depth on pixels the mask rejects.
    DepthMap depth(up.inv_depth.width, up.inv_depth.height, 0.0);
    for (size_t i = 0; i < depth.data.size(); ++i)
        if (up.valid.data[i] && up.inv_depth.data[i] > 0.0)
            depth.data[i] = 1.0 / up.inv_depth.data[i];
    switch (settings.alignment) {
        case Alignment::kNone:
            break;
        case Alignment::kMedian: {
            AlignResult r = align_median(depth, sample.gt_depth);
            depth = std::move(r.aligned);
            out.align_scale = r.scale;
            break;
        }
        case Alignment::kExternalScalar:
            out.align_scale = settings.scalar;
            for (double& v : depth.data)
                if (depth_valid(v)) v *= settings.scalar;
            break;
    }
    out.pred_depth = clip_depth(depth, settings);
    return out;
}

SampleMetrics evaluate_sample(const DepthEstimate& pred, const Sample& sample,
                              const EvalSettings& settings) {
    const PreparedSample prep = prepare_sample(pred, sample, settings);
    SampleMetrics m;
    m.m = count_joint(prep.pred_depth, sample.gt_depth);
    m.rel = abs_rel(prep.pred_depth, sample.gt_depth);
    m.tau = inlier_ratio(prep.pred_depth, sample.gt_depth, settings.inlier_threshold);
    return m;
}

EvalResult aggregate_testset(const std::vector<SampleMetrics>& samples) {
    if (samples.empty())
        throw std::invalid_argument("aggregate_testset: no samples");
    EvalResult r;
    r.samples = samples;
    double rel = 0.0, tau = 0.0;
    for (const SampleMetrics& s : samples) {
        rel += s.rel;
        tau += s.tau;
    }
    r.mean_rel = rel / static_cast<double>(samples.size());
    r.mean_tau = tau / static_cast<double>(samples.size());
    return r;
}

SparsificationResult sparsification(const std::vector<double>& errors,
                                    const std::vector<double>& uncertainties) {
    const size_t m = errors.size();
    if (m != uncertainties.size())
        throw std::invalid_argument("sparsification: length mismatch");
    if (m < 100)
        throw std::invalid_argument("sparsification: need at least 100 pixels");
    for (double e : errors)
        if (!(e >= 0.0))
            throw std::invalid_argument("sparsification: errors must be nonnegative");

    SparsificationResult r;
    r.fractions.resize(100);
    for (int i = 0; i < 100; ++i) r.fractions[i] = i / 100.0;

    const double total = std::accumulate(errors.begin(), errors.end(), 0.0);
    const double base = total / static_cast<double>(m);
    if (base == 0.0) {  // all errors zero: normalization undefined, AUSE 0
        r.oracle.assign(100, 0.0);
        r.uncertainty.assign(100, 0.0);
        r.error.assign(100, 0.0);
        r.ause = 0.0;
        return r;
    }

    // Removal order: largest key first, ties by pixel index.
    auto removal_order = [m](const std::vector<double>& key) {
        std::vector<size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&key](size_t a, size_t b) { return key[a] > key[b]; });
        return idx;
    };
    // Normalized mean of the remaining errors after removing the r_i
    // highest-ranked pixels, r_i = floor(i/100 * m) in exact arithmetic.
    auto curve = [&](const std::vector<size_t>& order) {
        std::vector<double> c(100);
        double removed = 0.0;
        size_t next = 0;
        for (size_t i = 0; i < 100; ++i) {
            const size_t r_i = i * m / 100;
            while (next < r_i) removed += errors[order[next++]];
            c[i] = ((total - removed) / static_cast<double>(m - r_i)) / base;
        }
        return c;
    };
    r.oracle = curve(removal_order(errors));
    r.uncertainty = curve(removal_order(uncertainties));
    r.error.resize(100);
    for (int i = 0; i < 100; ++i) r.error[i] = r.uncertainty[i] - r.oracle[i];
    double ause = 0.0;
    for (int i = 0; i + 1 < 100; ++i) ause += 0.5 * (r.error[i] + r.error[i + 1]) * 0.01;
    r.ause = ause;
    return r;
}

}  // namespace mvd
