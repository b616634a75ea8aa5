#include <iostream>

#include <CLI11.hpp>

#include "mvd/harness.hpp"

namespace {

// Every flag can also come from the environment as MVD_<FLAG>.
void add_common(CLI::App* cmd, mvd::RunOptions& opts, bool needs_manifest) {
    auto* manifest = cmd->add_option("--manifest", opts.manifest, "Test-set manifest JSON");
    manifest->envname("MVD_MANIFEST");
    if (needs_manifest) manifest->required();
    cmd->add_option("--out", opts.out_dir, "Output directory")->envname("MVD_OUT");
    cmd->add_option("--range", opts.range, "Sweep range: gt, default, or LO:HI meters")
        ->envname("MVD_RANGE");
    cmd->add_option("--align", opts.align, "Alignment: none, median, or scalar=S")
        ->envname("MVD_ALIGN");
    cmd->add_option("--fusion", opts.fusion, "Cost-volume fusion: average or weighted")
        ->envname("MVD_FUSION");
    cmd->add_option("--hyps", opts.hyps, "Inverse-depth hypothesis count")
        ->envname("MVD_HYPS");
    cmd->add_option("--patch", opts.patch, "Matching patch radius")->envname("MVD_PATCH");
    cmd->add_option("--seed", opts.seed, "RNG seed")->envname("MVD_SEED");
    cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = default)")
        ->envname("MVD_THREADS");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-view depth estimation, evaluation and synthesis"};
    app.require_subcommand(1);
    mvd::RunOptions opts;

    CLI::App* estimate =
        app.add_subcommand("estimate", "Estimate inverse depth and uncertainty per sample");
    add_common(estimate, opts, true);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate predictions against GT depth");
    add_common(eval, opts, true);
    eval->add_option("--preds", opts.preds, "Directory written by `estimate`")
        ->envname("MVD_PREDS")
        ->required();

    CLI::App* viewselect =
        app.add_subcommand("viewselect", "Source-view selection curves per sample");
    add_common(viewselect, opts, true);

    CLI::App* sparsify =
        app.add_subcommand("sparsify", "Sparsification curves and AUSE per sample");
    add_common(sparsify, opts, true);
    sparsify->add_option("--preds", opts.preds, "Directory written by `estimate`")
        ->envname("MVD_PREDS")
        ->required();

    CLI::App* augstats =
        app.add_subcommand("augstats", "Scale-augmentation histogram statistics");
    add_common(augstats, opts, false);
    augstats->add_option("--iters", opts.iters, "Simulation iterations")
        ->envname("MVD_ITERS");

    CLI::App* synth = app.add_subcommand("synth", "Render a synthetic test set");
    add_common(synth, opts, false);
    synth->add_option("--scene", opts.scene, "Scene kind: plane, sphere, or mixed")
        ->envname("MVD_SCENE");
    synth->add_option("--depth", opts.depth, "Scene depth scale in meters")
        ->envname("MVD_DEPTH");
    synth->add_option("--baseline", opts.baseline, "Camera baseline in meters")
        ->envname("MVD_BASELINE");
    synth->add_option("--width", opts.width, "Image width")->envname("MVD_WIDTH");
    synth->add_option("--height", opts.height, "Image height")->envname("MVD_HEIGHT");
    synth->add_option("--views", opts.views, "Other views per sample")
        ->envname("MVD_VIEWS");
    synth->add_option("--samples", opts.samples, "Sample count")->envname("MVD_SAMPLES");

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed()) return mvd::run_estimate(opts);
        if (eval->parsed()) return mvd::run_eval(opts);
        if (viewselect->parsed()) return mvd::run_viewselect(opts);
        if (sparsify->parsed()) return mvd::run_sparsify(opts);
        if (augstats->parsed()) return mvd::run_augstats(opts);
        if (synth->parsed()) return mvd::run_synth(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
