// Compares the OpenMP kernels against their serial reference twins:
// wall time plus a bitwise-equality check on the outputs.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvd/decoder.hpp"
#include "mvd/fusion.hpp"
#include "mvd/plane_sweep.hpp"
#include "mvd/synth.hpp"
#include "mvd/warp.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    // one warmup rep, then the best of `reps`
    fn();
    double best = 1e30;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

int failures = 0;

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-14s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   bitwise %s\n",
                name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "yes" : "NO");
    if (!identical) ++failures;
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#endif
    const mvd::SceneSpec spec = mvd::make_scene("mixed", 2.0, 0.2, 192, 192, 2, 7);
    const mvd::Sample sample = mvd::render(spec);
    mvd::SweepConfig cfg;
    cfg.d_min = 1.0;
    cfg.d_max = 4.0;
    cfg.n_hyp = 48;

    {
        mvd::Sample a, b;
        const double ts = time_ms([&] { a = mvd::serial::render(spec); }, 3);
        const double tp = time_ms([&] { b = mvd::render(spec); }, 3);
        report("render", ts, tp,
               same_bits(a.keyview.image.data, b.keyview.image.data) &&
                   same_bits(a.gt_depth.data, b.gt_depth.data));
    }
    {
        const mvd::Grid<float> gray = mvd::to_gray(sample.others[0].image);
        const mvd::Homography h = mvd::plane_sweep_homography(
            sample.keyview.intrinsics, sample.others[0].intrinsics,
            mvd::invert_pose(sample.others[0].pose), 0.5);
        mvd::GrayWarpResult a, b;
        const double ts =
            time_ms([&] { a = mvd::serial::warp_bilinear_gray(gray, h, 192, 192); }, 20);
        const double tp = time_ms([&] { b = mvd::warp_bilinear_gray(gray, h, 192, 192); }, 20);
        report("warp", ts, tp,
               same_bits(a.image.data, b.image.data) && same_bits(a.valid.data, b.valid.data));
    }
    std::vector<mvd::CostVolume> vols_a, vols_b;
    {
        mvd::CostVolume a, b;
        const double ts = time_ms(
            [&] { a = mvd::serial::sweep_view(sample.keyview, sample.others[0], cfg); }, 2);
        const double tp =
            time_ms([&] { b = mvd::sweep_view(sample.keyview, sample.others[0], cfg); }, 2);
        report("sweep_view", ts, tp, same_bits(a.costs, b.costs) && same_bits(a.valid, b.valid));
        for (const mvd::View& v : sample.others) {
            vols_a.push_back(mvd::serial::sweep_view(sample.keyview, v, cfg));
            vols_b.push_back(mvd::sweep_view(sample.keyview, v, cfg));
        }
    }
    {
        mvd::CostVolume a, b;
        const double ts = time_ms(
            [&] {
                a = mvd::serial::fuse_weighted(
                    vols_a, mvd::serial::confidence_weights(vols_a, cfg.weight_temp));
            },
            5);
        const double tp = time_ms(
            [&] {
                b = mvd::fuse_weighted(vols_b,
                                       mvd::confidence_weights(vols_b, cfg.weight_temp));
            },
            5);
        report("fuse_weighted", ts, tp,
               same_bits(a.costs, b.costs) && same_bits(a.valid, b.valid));
    }
    {
        mvd::DepthEstimate a, b;
        const double ts = time_ms(
            [&] { a = mvd::serial::estimate_depth(sample, cfg, mvd::FusionMode::kWeighted); },
            2);
        const double tp = time_ms(
            [&] { b = mvd::estimate_depth(sample, cfg, mvd::FusionMode::kWeighted); }, 2);
        report("estimate", ts, tp,
               same_bits(a.inv_depth.data, b.inv_depth.data) &&
                   same_bits(a.uncertainty.data, b.uncertainty.data) &&
                   same_bits(a.valid.data, b.valid.data));
    }
    if (failures) {
        std::printf("%d kernel(s) diverged from the serial reference\n", failures);
        return 1;
    }
    return 0;
}
