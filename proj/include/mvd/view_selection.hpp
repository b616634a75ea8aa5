#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mvd/decoder.hpp"
#include "mvd/metrics.hpp"

namespace mvd {

using Estimator = std::function<DepthEstimate(const Sample&)>;

struct SelectionResult {
    std::vector<std::pair<int, double>> pairwise;  // (view index, rel %), 1-based
    std::vector<int> order;    // view indices ascending by pairwise rel
    std::vector<double> curve; // rel at prefix sizes 1..k
    int best_size = 0;         // argmin of curve; smallest size on ties
};

// rel of each (keyview, single other view) pair, in view order.
std::vector<std::pair<int, double>> pairwise_errors(const Sample& sample,
                                                    const Estimator& estimator,
                                                    const EvalSettings& settings);

// Orders views by pairwise rel (stable, ties by view index), then
// evaluates every prefix of that order.
SelectionResult grow_selection(const Sample& sample, const Estimator& estimator,
                               const EvalSettings& settings);

}  // namespace mvd
