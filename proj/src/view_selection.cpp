#include "mvd/view_selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mvd {

namespace {

Sample subset_sample(const Sample& sample, const std::vector<int>& views) {
    Sample sub;
    sub.id = sample.id;
    sub.keyview = sample.keyview;
    sub.gt_depth = sample.gt_depth;
    sub.gt_range = sample.gt_range;
    for (int v : views) sub.others.push_back(sample.others[static_cast<size_t>(v) - 1]);
    return sub;
}

std::string subset_name(const std::vector<int>& views) {
    std::string s = "{";
    for (size_t i = 0; i < views.size(); ++i) {
        if (i) s += ",";
        s += "v" + std::to_string(views[i]);
    }
    return s + "}";
}

double subset_rel(const Sample& sample, const std::vector<int>& views,
                  const Estimator& estimator, const EvalSettings& settings) {
    const Sample sub = subset_sample(sample, views);
    try {
        return evaluate_sample(estimator(sub), sub, settings).rel;
    } catch (const std::exception& e) {
        throw std::runtime_error("view subset " + subset_name(views) + ": " + e.what());
    }
}

}  // namespace

std::vector<std::pair<int, double>> pairwise_errors(const Sample& sample,
                                                    const Estimator& estimator,
                                                    const EvalSettings& settings) {
    if (sample.others.empty())
        throw std::invalid_argument("pairwise_errors: sample has no other views");
    std::vector<std::pair<int, double>> out;
    out.reserve(sample.others.size());
    for (int v = 1; v <= static_cast<int>(sample.others.size()); ++v)
        out.emplace_back(v, subset_rel(sample, {v}, estimator, settings));
    return out;
}

SelectionResult grow_selection(const Sample& sample, const Estimator& estimator,
                               const EvalSettings& settings) {
    SelectionResult r;
    r.pairwise = pairwise_errors(sample, estimator, settings);
    r.order.resize(r.pairwise.size());
    std::iota(r.order.begin(), r.order.end(), 1);
    std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
        return r.pairwise[static_cast<size_t>(a) - 1].second <
               r.pairwise[static_cast<size_t>(b) - 1].second;
    });
    std::vector<int> prefix;
    for (int v : r.order) {
        prefix.push_back(v);
        r.curve.push_back(subset_rel(sample, prefix, estimator, settings));
    }
    r.best_size = 1;
    for (int s = 2; s <= static_cast<int>(r.curve.size()); ++s)
        if (r.curve[static_cast<size_t>(s) - 1] < r.curve[static_cast<size_t>(r.best_size) - 1])
            r.best_size = s;
    return r;
}

}  // namespace mvd
