#include "mvd/harness.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvd/augmentation.hpp"
#include "mvd/decoder.hpp"
#include "mvd/manifest.hpp"
#include "mvd/metrics.hpp"
#include "mvd/pfm.hpp"
#include "mvd/ppm.hpp"
#include "mvd/synth.hpp"
#include "mvd/view_selection.hpp"

namespace mvd {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RangeSpec {
    enum class Kind { kGt, kDefault, kExplicit } kind = Kind::kDefault;
    double lo = 0.2;
    double hi = 100.0;
};

RangeSpec parse_range(const std::string& s) {
    RangeSpec r;
    if (s == "gt") {
        r.kind = RangeSpec::Kind::kGt;
    } else if (s == "default") {
        r.kind = RangeSpec::Kind::kDefault;
    } else if (const size_t colon = s.find(':'); colon != std::string::npos) {
        r.kind = RangeSpec::Kind::kExplicit;
        size_t lo_end = 0, hi_end = 0;
        try {
            r.lo = std::stod(s.substr(0, colon), &lo_end);
            r.hi = std::stod(s.substr(colon + 1), &hi_end);
        } catch (const std::exception&) {
            throw std::runtime_error("--range: cannot parse '" + s + "'");
        }
        if (lo_end != colon || hi_end != s.size() - colon - 1 || !(r.lo > 0.0) ||
            !(r.lo < r.hi))
            throw std::runtime_error("--range: need 0 < LO < HI in '" + s + "'");
    } else {
        throw std::runtime_error("--range: expected gt, default or LO:HI, got '" + s + "'");
    }
    return r;
}

EvalSettings parse_align(const std::string& s) {
    EvalSettings settings;
    if (s == "none") {
        settings.alignment = Alignment::kNone;
    } else if (s == "median") {
        settings.alignment = Alignment::kMedian;
    } else if (s.rfind("scalar=", 0) == 0) {
        settings.alignment = Alignment::kExternalScalar;
        try {
            settings.scalar = std::stod(s.substr(7));
        } catch (const std::exception&) {
            throw std::runtime_error("--align: cannot parse scalar in '" + s + "'");
        }
    } else {
        throw std::runtime_error("--align: expected none, median or scalar=S, got '" + s +
                                 "'");
    }
    validate(settings);
    return settings;
}

FusionMode parse_fusion(const std::string& s) {
    if (s == "average") return FusionMode::kAverage;
    if (s == "weighted") return FusionMode::kWeighted;
    throw std::runtime_error("--fusion: expected average or weighted, got '" + s + "'");
}

// Sweep range for one sample. A degenerate GT range (single depth) is
// padded by 10% so the hypothesis grid stays well-formed.
SweepConfig sweep_config_for(const Sample& sample, const RangeSpec& range,
                             const RunOptions& opts) {
    SweepConfig cfg;
    cfg.n_hyp = opts.hyps;
    cfg.patch_radius = opts.patch;
    switch (range.kind) {
        case RangeSpec::Kind::kDefault:
            cfg.d_min = 0.2;
            cfg.d_max = 100.0;
            break;
        case RangeSpec::Kind::kExplicit:
            cfg.d_min = range.lo;
            cfg.d_max = range.hi;
            break;
        case RangeSpec::Kind::kGt:
            if (!sample.gt_range)
                throw std::runtime_error("--range gt requires gt_range in the manifest");
            cfg.d_min = sample.gt_range->first;
            cfg.d_max = sample.gt_range->second;
            if (!(cfg.d_min < cfg.d_max)) {
                cfg.d_min *= 0.9;
                cfg.d_max *= 1.1;
            }
            break;
    }
    validate(cfg);
    return cfg;
}

void apply_threads(const RunOptions& opts) {
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
#else
    (void)opts;
#endif
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_seconds(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Settings echo shared by reports; config_hash is the FNV-1a of the
// canonical echo without the hash field.
json settings_echo(const std::string& subcommand, const RunOptions& opts) {
    json j;
    j["subcommand"] = subcommand;
    j["range"] = opts.range;
    j["align"] = opts.align;
    j["fusion"] = opts.fusion;
    j["hyps"] = opts.hyps;
    j["patch"] = opts.patch;
    j["seed"] = opts.seed;
    j["config_hash"] = hex64(fnv1a64(j.dump()));
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct ErrorList {
    std::vector<std::pair<std::string, std::string>> items;

    void add(const std::string& id, const std::string& message) {
        items.emplace_back(id, message);
        std::cerr << "error: sample '" << id << "': " << message << "\n";
    }
    json to_json() const {
        json j = json::array();
        for (const auto& [id, message] : items)
            j.push_back({{"id", id}, {"message", message}});
        return j;
    }
    bool empty() const { return items.empty(); }
};

struct Timings {
    std::string csv = "id,seconds\n";
    double total = 0.0;
    size_t n = 0;

    void add(const std::string& id, double seconds) {
        csv += id + "," + fmt_seconds(seconds) + "\n";
        total += seconds;
        ++n;
    }
    void write(const fs::path& path) const {
        std::string text = csv;
        if (n > 0) text += "mean," + fmt_seconds(total / static_cast<double>(n)) + "\n";
        write_text(path, text);
    }
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Prediction files for a sample as written by run_estimate. Uncertainty
// is optional for eval, mandatory for sparsify.
struct LoadedPrediction {
    DepthEstimate est;
    bool has_uncert = false;
};

LoadedPrediction load_prediction(const fs::path& dir, const std::string& id) {
    LoadedPrediction p;
    const fs::path inv_path = dir / (id + "_invdepth.pfm");
    if (!fs::exists(inv_path))
        throw std::runtime_error("missing prediction " + inv_path.string());
    p.est.inv_depth = read_pfm(inv_path.string());
    const int w = p.est.inv_depth.width, h = p.est.inv_depth.height;
    p.est.valid = MaskGrid(w, h, 0);
    for (size_t i = 0; i < p.est.inv_depth.data.size(); ++i)
        p.est.valid.data[i] = depth_valid(p.est.inv_depth.data[i]) ? 1 : 0;
    p.est.uncertainty = Grid<double>(w, h, 0.0);
    const fs::path unc_path = dir / (id + "_uncert.pfm");
    if (fs::exists(unc_path)) {
        Grid<double> unc = read_pfm(unc_path.string());
        if (unc.width != w || unc.height != h)
            throw std::runtime_error("uncertainty dimensions do not match " +
                                     inv_path.string());
        p.est.uncertainty = std::move(unc);
        p.has_uncert = true;
    }
    return p;
}

// Per-pixel absolute relative errors and uncertainties over jointly
// valid pixels of a prepared prediction.
void pixel_errors(const PreparedSample& prep, const DepthMap& gt,
                  std::vector<double>& e, std::vector<double>& u) {
    for (size_t i = 0; i < gt.data.size(); ++i) {
        if (!depth_valid(prep.pred_depth.data[i]) || !depth_valid(gt.data[i])) continue;
        e.push_back(std::abs(prep.pred_depth.data[i] - gt.data[i]) / gt.data[i]);
        u.push_back(prep.uncertainty.data[i]);
    }
}

}  // namespace

int run_estimate(const RunOptions& opts) {
    apply_threads(opts);
    const RangeSpec range = parse_range(opts.range);
    const FusionMode mode = parse_fusion(opts.fusion);
    const Manifest man = load_manifest(opts.manifest);
    fs::create_directories(opts.out_dir);

    json index;
    index["settings"] = settings_echo("estimate", opts);
    index["samples"] = json::array();
    ErrorList errors;
    Timings timings;

    for (size_t i = 0; i < man.samples.size(); ++i) {
        const std::string& id = man.samples[i].id;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const Sample sample = load_sample(man, i);
            const SweepConfig cfg = sweep_config_for(sample, range, opts);
            const DepthEstimate est = estimate_depth(sample, cfg, mode);
            const std::string inv_name = id + "_invdepth.pfm";
            const std::string unc_name = id + "_uncert.pfm";
            write_pfm((fs::path(opts.out_dir) / inv_name).string(), est.inv_depth);
            write_pfm((fs::path(opts.out_dir) / unc_name).string(), est.uncertainty);
            timings.add(id, elapsed_since(t0));
            index["samples"].push_back(
                {{"id", id}, {"invdepth", inv_name}, {"uncert", unc_name}});
        } catch (const std::exception& e) {
            errors.add(id, e.what());
        }
    }
    index["errors"] = errors.to_json();
    write_text(fs::path(opts.out_dir) / "index.json", index.dump(2) + "\n");
    timings.write(fs::path(opts.out_dir) / "timings.csv");
    return errors.empty() ? 0 : 1;
}

int run_eval(const RunOptions& opts) {
    apply_threads(opts);
    const EvalSettings settings = parse_align(opts.align);
    parse_range(opts.range);  // validated for the echo only
    const Manifest man = load_manifest(opts.manifest);
    if (opts.preds.empty()) throw std::runtime_error("eval: --preds is required");
    fs::create_directories(opts.out_dir);

    json report;
    report["settings"] = settings_echo("eval", opts);
    report["samples"] = json::array();
    ErrorList errors;
    Timings timings;
    std::vector<SampleMetrics> metrics;
    std::vector<double> auses;
    std::string csv = "id,rel,tau,ause,m\n";

    for (size_t i = 0; i < man.samples.size(); ++i) {
        const std::string& id = man.samples[i].id;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const Sample sample = load_sample(man, i);
            const LoadedPrediction pred = load_prediction(opts.preds, id);
            const SampleMetrics sm = evaluate_sample(pred.est, sample, settings);
            std::optional<double> ause;
            if (pred.has_uncert && sm.m >= 100) {
                const PreparedSample prep = prepare_sample(pred.est, sample, settings);
                std::vector<double> e, u;
                pixel_errors(prep, sample.gt_depth, e, u);
                ause = sparsification(e, u).ause;
            }
            timings.add(id, elapsed_since(t0));
            metrics.push_back(sm);
            if (ause) auses.push_back(*ause);
            json js{{"id", id}, {"rel", sm.rel}, {"tau", sm.tau}, {"m", sm.m}};
            js["ause"] = ause ? json(*ause) : json(nullptr);
            report["samples"].push_back(std::move(js));
            csv += id + "," + fmt(sm.rel) + "," + fmt(sm.tau) + "," +
                   (ause ? fmt(*ause) : "") + "," + std::to_string(sm.m) + "\n";
        } catch (const std::exception& e) {
            errors.add(id, e.what());
        }
    }

    json testset;
    testset["n_samples"] = metrics.size();
    if (!metrics.empty()) {
        const EvalResult agg = aggregate_testset(metrics);
        testset["mean_rel"] = agg.mean_rel;
        testset["mean_tau"] = agg.mean_tau;
    } else {
        testset["mean_rel"] = nullptr;
        testset["mean_tau"] = nullptr;
    }
    if (!auses.empty()) {
        double s = 0.0;
        for (double a : auses) s += a;
        testset["mean_ause"] = s / static_cast<double>(auses.size());
    } else {
        testset["mean_ause"] = nullptr;
    }
    report["testset"] = std::move(testset);
    report["errors"] = errors.to_json();

    write_text(fs::path(opts.out_dir) / "report.json", report.dump(2) + "\n");
    write_text(fs::path(opts.out_dir) / "samples.csv", csv);
    timings.write(fs::path(opts.out_dir) / "timings.csv");
    return errors.empty() ? 0 : 1;
}

int run_viewselect(const RunOptions& opts) {
    apply_threads(opts);
    const RangeSpec range = parse_range(opts.range);
    const EvalSettings settings = parse_align(opts.align);
    const FusionMode mode = parse_fusion(opts.fusion);
    const Manifest man = load_manifest(opts.manifest);
    fs::create_directories(opts.out_dir);

    ErrorList errors;
    Timings timings;
    std::string summary = "id,best_size,best_views\n";

    for (size_t i = 0; i < man.samples.size(); ++i) {
        const std::string& id = man.samples[i].id;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const Sample sample = load_sample(man, i);
            const Estimator estimator = [&](const Sample& sub) {
                return estimate_depth(sub, sweep_config_for(sub, range, opts), mode);
            };
            const SelectionResult r = grow_selection(sample, estimator, settings);
            std::string csv = "size,rel\n";
            for (size_t s = 0; s < r.curve.size(); ++s)
                csv += std::to_string(s + 1) + "," + fmt(r.curve[s]) + "\n";
            write_text(fs::path(opts.out_dir) / (id + "_viewselect.csv"), csv);
            std::string best;
            for (int s = 0; s < r.best_size; ++s) {
                if (s) best += ";";
                best += std::to_string(r.order[static_cast<size_t>(s)]);
            }
            summary += id + "," + std::to_string(r.best_size) + "," + best + "\n";
            timings.add(id, elapsed_since(t0));
        } catch (const std::exception& e) {
            errors.add(id, e.what());
        }
    }
    write_text(fs::path(opts.out_dir) / "viewselect_summary.csv", summary);
    timings.write(fs::path(opts.out_dir) / "timings.csv");
    return errors.empty() ? 0 : 1;
}

int run_sparsify(const RunOptions& opts) {
    apply_threads(opts);
    const EvalSettings settings = parse_align(opts.align);
    const Manifest man = load_manifest(opts.manifest);
    if (opts.preds.empty()) throw std::runtime_error("sparsify: --preds is required");
    fs::create_directories(opts.out_dir);

    ErrorList errors;
    Timings timings;
    std::string summary = "id,ause\n";

    for (size_t i = 0; i < man.samples.size(); ++i) {
        const std::string& id = man.samples[i].id;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const Sample sample = load_sample(man, i);
            const LoadedPrediction pred = load_prediction(opts.preds, id);
            if (!pred.has_uncert)
                throw std::runtime_error("sparsify requires " + id + "_uncert.pfm");
            const PreparedSample prep = prepare_sample(pred.est, sample, settings);
            std::vector<double> e, u;
            pixel_errors(prep, sample.gt_depth, e, u);
            const SparsificationResult r = sparsification(e, u);
            std::string csv = "fraction,oracle,uncertainty,error\n";
            for (size_t k = 0; k < r.fractions.size(); ++k)
                csv += fmt(r.fractions[k]) + "," + fmt(r.oracle[k]) + "," +
                       fmt(r.uncertainty[k]) + "," + fmt(r.error[k]) + "\n";
            write_text(fs::path(opts.out_dir) / (id + "_sparsification.csv"), csv);
            summary += id + "," + fmt(r.ause) + "\n";
            timings.add(id, elapsed_since(t0));
        } catch (const std::exception& e) {
            errors.add(id, e.what());
        }
    }
    write_text(fs::path(opts.out_dir) / "sparsify_summary.csv", summary);
    timings.write(fs::path(opts.out_dir) / "timings.csv");
    return errors.empty() ? 0 : 1;
}

int run_augstats(const RunOptions& opts) {
    apply_threads(opts);
    if (opts.iters < 1) throw std::runtime_error("augstats: --iters must be positive");
    fs::create_directories(opts.out_dir);
    DepthHistogram h = DepthHistogram::make(100);
    Pcg32 rng(opts.seed);
    // Greedy-fill simulation: each iteration rescales a random sample
    // median into the currently emptiest bin, then records it.
    const double lo = std::log(h.edges.front() * 1.2);
    const double hi = std::log(h.edges.back() * 0.8);
    for (int t = 0; t < opts.iters; ++t) {
        const double median = std::exp(rng.uniform(lo, hi));
        const double s = choose_scale(h, median);
        DepthMap dm(1, 1, s * median);
        histogram_update(h, dm);
    }
    std::string csv = "label,count\n";
    for (int b = 0; b < h.bins(); ++b)
        csv += fmt(h.label(b)) + "," + std::to_string(h.counts[static_cast<size_t>(b)]) + "\n";
    write_text(fs::path(opts.out_dir) / "augstats.csv", csv);
    return 0;
}

int run_synth(const RunOptions& opts) {
    apply_threads(opts);
    if (opts.samples < 1) throw std::runtime_error("synth: --samples must be positive");
    fs::create_directories(opts.out_dir);
    Manifest man;
    man.dir = opts.out_dir;

    for (int s = 0; s < opts.samples; ++s) {
        char idbuf[32];
        std::snprintf(idbuf, sizeof idbuf, "sample_%03d", s);
        const std::string id = idbuf;
        const SceneSpec spec =
            make_scene(opts.scene, opts.depth, opts.baseline, opts.width, opts.height,
                       opts.views, opts.seed + static_cast<uint64_t>(s));
        Sample sample = render(spec);

        ManifestSample ms;
        ms.id = id;
        ms.key_image = id + "_key.ppm";
        ms.key_depth = id + "_depth.pfm";
        const Intrinsics& k = sample.keyview.intrinsics;
        ms.key_intrinsics = {k.fx, k.fy, k.cx, k.cy};
        write_ppm((fs::path(opts.out_dir) / ms.key_image).string(), sample.keyview.image);
        write_pfm((fs::path(opts.out_dir) / ms.key_depth).string(), sample.gt_depth);

        double lo = 0.0, hi = 0.0;
        for (double d : sample.gt_depth.data) {
            if (!depth_valid(d)) continue;
            if (lo == 0.0 || d < lo) lo = d;
            if (d > hi) hi = d;
        }
        if (lo > 0.0) ms.gt_range = {lo, hi};

        for (size_t v = 0; v < sample.others.size(); ++v) {
            char vbuf[32];
            std::snprintf(vbuf, sizeof vbuf, "_view%02zu.ppm", v + 1);
            ManifestView mv;
            mv.image = id + vbuf;
            write_ppm((fs::path(opts.out_dir) / mv.image).string(),
                      sample.others[v].image);
            const Pose& p = sample.others[v].pose;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c)
                    mv.pose[static_cast<size_t>(r) * 4 + c] = p.rotation(r, c);
                mv.pose[static_cast<size_t>(r) * 4 + 3] = p.translation(r);
            }
            const Intrinsics& vk = sample.others[v].intrinsics;
            mv.intrinsics = {vk.fx, vk.fy, vk.cx, vk.cy};
            ms.views.push_back(std::move(mv));
        }
        man.samples.push_back(std::move(ms));
    }
    save_manifest(man, fs::path(opts.out_dir) / "manifest.json");
    return 0;
}

}  // namespace mvd
