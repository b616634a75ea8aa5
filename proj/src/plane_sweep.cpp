#include "mvd/plane_sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "mvd/geometry.hpp"
#include "mvd/warp.hpp"

namespace mvd {

namespace {

constexpr double kVarEps = 1e-12;

struct KeyStats {
    Grid<float> gray;
    Grid<double> mean;
    Grid<double> ss;  // sum of squared deviations from the patch mean
    Grid<uint8_t> textured;
};

// Patch statistics for the key image, computed once and reused across
// hypotheses. Pixels whose window leaves the image keep textured = 0.
KeyStats key_patch_stats(const Image& img, int r) {
    KeyStats s;
    s.gray = to_gray(img);
    const int w = img.width, h = img.height;
    s.mean = Grid<double>(w, h, 0.0);
    s.ss = Grid<double>(w, h, 0.0);
    s.textured = Grid<uint8_t>(w, h, 0);
    const int n = (2 * r + 1) * (2 * r + 1);
    for (int y = r; y < h - r; ++y) {
        for (int x = r; x < w - r; ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    sum += s.gray.at(y + dy, x + dx);
            const double mean = sum / n;
            double ss = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double d = s.gray.at(y + dy, x + dx) - mean;
                    ss += d * d;
                }
            s.mean.at(y, x) = mean;
            s.ss.at(y, x) = ss;
            s.textured.at(y, x) = (ss / n >= kVarEps) ? 1 : 0;
        }
    }
    return s;
}

// Scores one hypothesis slab of the volume. Warping stays serial here so
// the parallel driver only splits across hypotheses.
void sweep_hypothesis(const KeyStats& key, const Grid<float>& other_gray,
                      const Intrinsics& k_key, const Intrinsics& k_other,
                      const Pose& key_to_other, int r, double rho,
                      CostVolume& vol, int k) {
    const int w = vol.width, h = vol.height;
    const Homography hom = plane_sweep_homography(k_key, k_other, key_to_other, rho);
    const GrayWarpResult warped = serial::warp_bilinear_gray(other_gray, hom, w, h);
    const int n = (2 * r + 1) * (2 * r + 1);
    for (int y = r; y < h - r; ++y) {
        for (int x = r; x < w - r; ++x) {
            if (!key.textured.at(y, x)) continue;
            bool cover = true;
            double sum_b = 0.0;
            for (int dy = -r; dy <= r && cover; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    if (!warped.valid.at(y + dy, x + dx)) { cover = false; break; }
                    sum_b += warped.image.at(y + dy, x + dx);
                }
            if (!cover) continue;
            const double mean_b = sum_b / n;
            double cov = 0.0, ss_b = 0.0;
            const double mean_a = key.mean.at(y, x);
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double da = key.gray.at(y + dy, x + dx) - mean_a;
                    const double db = warped.image.at(y + dy, x + dx) - mean_b;
                    cov += da * db;
                    ss_b += db * db;
                }
            if (ss_b / n < kVarEps) continue;
            const double zncc = cov / std::sqrt(key.ss.at(y, x) * ss_b);
            double cost = (1.0 - zncc) / 2.0;
            cost = std::min(std::max(cost, 0.0), 1.0);
            const size_t i = vol.idx(k, y, x);
            vol.costs[i] = static_cast<float>(cost);
            vol.valid[i] = 1;
        }
    }
}

CostVolume sweep_impl(const View& key, const View& other, const SweepConfig& cfg,
                      bool parallel) {
    validate(cfg);
    if (key.image.width != other.image.width || key.image.height != other.image.height)
        throw std::invalid_argument("sweep_view: view resolution mismatch");
    if (key.image.width < 2 * cfg.patch_radius + 1 ||
        key.image.height < 2 * cfg.patch_radius + 1)
        throw std::invalid_argument("sweep_view: image smaller than matching window");

    CostVolume vol(key.image.width, key.image.height, build_hypotheses(cfg));
    const KeyStats stats = key_patch_stats(key.image, cfg.patch_radius);
    const Grid<float> other_gray = to_gray(other.image);
    // View poses map view frame -> keyview frame; the sweep needs key -> other.
    const Pose key_to_other = invert_pose(other.pose);
    const int n_hyp = vol.n_hyp();
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n_hyp; ++k)
            sweep_hypothesis(stats, other_gray, key.intrinsics, other.intrinsics,
                             key_to_other, cfg.patch_radius, vol.hypotheses[k], vol, k);
    } else {
        for (int k = 0; k < n_hyp; ++k)
            sweep_hypothesis(stats, other_gray, key.intrinsics, other.intrinsics,
                             key_to_other, cfg.patch_radius, vol.hypotheses[k], vol, k);
    }
    return vol;
}

}  // namespace

void validate(const SweepConfig& cfg) {
    if (!(cfg.d_min > 0.0) || !(cfg.d_max > cfg.d_min))
        throw std::invalid_argument("SweepConfig: need 0 < d_min < d_max");
    if (cfg.n_hyp < 2)
        throw std::invalid_argument("SweepConfig: need at least 2 hypotheses");
    if (cfg.patch_radius < 1)
        throw std::invalid_argument("SweepConfig: patch_radius must be >= 1");
    if (!(cfg.softmin_temp > 0.0) || !(cfg.weight_temp > 0.0))
        throw std::invalid_argument("SweepConfig: temperatures must be positive");
}

std::vector<double> build_hypotheses(const SweepConfig& cfg) {
    validate(cfg);
    const double rho_min = 1.0 / cfg.d_max;
    const double rho_max = 1.0 / cfg.d_min;
    std::vector<double> hyps(cfg.n_hyp);
    const double step = (rho_max - rho_min) / (cfg.n_hyp - 1);
    for (int k = 0; k < cfg.n_hyp; ++k) hyps[k] = rho_min + k * step;
    return hyps;
}

PatchScore zncc_cost(std::span<const float> patch_a, std::span<const float> patch_b) {
    if (patch_a.size() != patch_b.size() || patch_a.empty())
        throw std::invalid_argument("zncc_cost: patch size mismatch");
    const size_t n = patch_a.size();
    double sum_a = 0.0, sum_b = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sum_a += patch_a[i];
        sum_b += patch_b[i];
    }
    const double mean_a = sum_a / n, mean_b = sum_b / n;
    double cov = 0.0, ss_a = 0.0, ss_b = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = patch_a[i] - mean_a;
        const double db = patch_b[i] - mean_b;
        cov += da * db;
        ss_a += da * da;
        ss_b += db * db;
    }
    if (ss_a / n < kVarEps || ss_b / n < kVarEps) return {1.0, false};
    const double zncc = cov / std::sqrt(ss_a * ss_b);
    return {std::min(std::max((1.0 - zncc) / 2.0, 0.0), 1.0), true};
}

CostVolume sweep_view(const View& key, const View& other, const SweepConfig& cfg) {
    return sweep_impl(key, other, cfg, true);
}

namespace serial {
CostVolume sweep_view(const View& key, const View& other, const SweepConfig& cfg) {
    return sweep_impl(key, other, cfg, false);
}
}  // namespace serial

}  // namespace mvd
