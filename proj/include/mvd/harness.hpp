#pragma once

#include <cstdint>
#include <string>

namespace mvd {

// Options shared by the CLI subcommands; each command reads the subset
// it needs. Reports and artifacts land in out_dir.
struct RunOptions {
    std::string manifest;
    std::string out_dir = ".";
    std::string preds;  // eval/sparsify: directory written by `estimate`

    std::string range = "default";  // gt | default | LO:HI   (meters)
    std::string align = "none";     // none | median | scalar=S
    std::string fusion = "average"; // average | weighted
    int hyps = 64;
    int patch = 2;
    uint64_t seed = 1;
    int threads = 0;  // 0 keeps the OpenMP default

    // synth
    std::string scene = "plane";  // plane | sphere | mixed
    double depth = 2.0;
    double baseline = 0.2;
    int width = 128;
    int height = 128;
    int views = 2;    // other views per sample
    int samples = 1;

    // augstats
    int iters = 10000;
};

// Each command returns a process exit code: 0 iff every sample was
// processed without error. Wall-clock timings go to a timings.csv
// sidecar so reports and artifacts stay byte-reproducible.
int run_estimate(const RunOptions& opts);
int run_eval(const RunOptions& opts);
int run_viewselect(const RunOptions& opts);
int run_sparsify(const RunOptions& opts);
int run_augstats(const RunOptions& opts);
int run_synth(const RunOptions& opts);

}  // namespace mvd
