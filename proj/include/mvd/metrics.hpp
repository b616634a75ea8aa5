#pragma once

#include <vector>

#include "mvd/decoder.hpp"
#include "mvd/sample.hpp"

namespace mvd {

enum class Alignment { kNone, kMedian, kExternalScalar };

struct EvalSettings {
    Alignment alignment = Alignment::kNone;
    double scalar = 1.0;  // used by kExternalScalar
    double clip_lo = 0.1;
    double clip_hi = 100.0;
    double inlier_threshold = 1.03;
};

void validate(const EvalSettings& settings);

// Bilinear upsampling of inverse depth and uncertainty with edge
// clamping; validity upsampled by nearest neighbor. Identity when the
// size already matches.
DepthEstimate upsample_prediction(const DepthEstimate& pred, int full_w, int full_h);

// Clamps valid depths into [clip_lo, clip_hi]; validity unchanged.
DepthMap clip_depth(const DepthMap& d, const EvalSettings& settings);

struct AlignResult {
    DepthMap aligned;
    double scale = 1.0;
};

// Scales pred by median(gt)/median(pred) over jointly valid pixels.
// Median is the lower middle element for even counts.
AlignResult align_median(const DepthMap& pred, const DepthMap& gt);

// 100 * mean(|d - d*| / d*) over jointly valid pixels.
double abs_rel(const DepthMap& pred, const DepthMap& gt);

// 100 * fraction of jointly valid pixels with max(d/d*, d*/d) strictly
// below the threshold.
double inlier_ratio(const DepthMap& pred, const DepthMap& gt, double threshold = 1.03);

// Prediction after the shared pipeline prefix: upsample to GT size,
// invert to depth, align, clip. Metrics and sparsification both consume
// this.
struct PreparedSample {
    DepthMap pred_depth;
    Grid<double> uncertainty;
    MaskGrid pred_valid;
    double align_scale = 1.0;
};

PreparedSample prepare_sample(const DepthEstimate& pred, const Sample& sample,
                              const EvalSettings& settings);

struct SampleMetrics {
    double rel = 0.0;  // percent
    double tau = 0.0;  // percent
    size_t m = 0;      // jointly valid pixels
};

// upsample -> align -> clip -> rel, tau; the order is fixed on purpose
// (clipping a mis-scaled prediction before alignment would corrupt the
// median).
SampleMetrics evaluate_sample(const DepthEstimate& pred, const Sample& sample,
                              const EvalSettings& settings);

struct EvalResult {
    std::vector<SampleMetrics> samples;
    double mean_rel = 0.0;
    double mean_tau = 0.0;
};

// Unweighted means over samples, regardless of per-sample pixel counts.
EvalResult aggregate_testset(const std::vector<SampleMetrics>& samples);

// Sparsification curves at removal fractions 0.00, 0.01, ..., 0.99 and
// the area under their difference.
struct SparsificationResult {
    std::vector<double> fractions;
    std::vector<double> oracle;       // remove largest errors first
    std::vector<double> uncertainty;  // remove largest uncertainties first
    std::vector<double> error;        // uncertainty - oracle
    double ause = 0.0;
};

// errors must be nonnegative and at least 100 long; both curves are
// normalized by the full-set mean error. All-zero errors define AUSE 0.
SparsificationResult sparsification(const std::vector<double>& errors,
                                    const std::vector<double>& uncertainties);

}  // namespace mvd
