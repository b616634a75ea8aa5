#include <algorithm>
#include <doctest.h>
#include <numeric>

#include "helpers.hpp"
#include "mvd/fusion.hpp"

using namespace mvd;

TEST_SUITE_BEGIN("fusion");

namespace {

CostVolume make_volume(int w, int h, int n_hyp) {
    std::vector<double> hyps(n_hyp);
    for (int k = 0; k < n_hyp; ++k) hyps[k] = 0.1 + 0.05 * k;
    return CostVolume(w, h, std::move(hyps));
}

CostVolume constant_volume(int w, int h, int n_hyp, float cost) {
    CostVolume vol = make_volume(w, h, n_hyp);
    std::fill(vol.costs.begin(), vol.costs.end(), cost);
    std::fill(vol.valid.begin(), vol.valid.end(), uint8_t{1});
    return vol;
}

CostVolume random_volume(Pcg32& rng, int w, int h, int n_hyp, double p_valid = 0.8) {
    CostVolume vol = make_volume(w, h, n_hyp);
    for (size_t i = 0; i < vol.costs.size(); ++i) {
        if (rng.uniform() < p_valid) {
            vol.costs[i] = static_cast<float>(rng.uniform());
            vol.valid[i] = 1;
        }
    }
    return vol;
}

std::vector<Grid<double>> random_weights(Pcg32& rng, int w, int h, size_t n_views) {
    std::vector<Grid<double>> ws(n_views, Grid<double>(w, h, 0.0));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double total = 0.0;
            for (size_t v = 0; v < n_views; ++v) {
                const double r = rng.uniform(0.05, 1.0);
                ws[v].at(y, x) = r;
                total += r;
            }
            for (size_t v = 0; v < n_views; ++v) ws[v].at(y, x) /= total;
        }
    return ws;
}

}  // namespace

TEST_CASE("fusing a single volume is the identity") {
    Pcg32 rng(51);
    const CostVolume vol = random_volume(rng, 6, 5, 4);
    const CostVolume fused = fuse_average({vol});
    CHECK(fused.costs == vol.costs);
    CHECK(fused.valid == vol.valid);
    CHECK(fused.hypotheses == vol.hypotheses);
}

TEST_CASE("average of two uniform volumes is the midpoint") {
    const CostVolume a = constant_volume(4, 3, 3, 0.2f);
    const CostVolume b = constant_volume(4, 3, 3, 0.4f);
    const CostVolume fused = fuse_average({a, b});
    for (size_t i = 0; i < fused.costs.size(); ++i) {
        CHECK(fused.valid[i] == 1);
        CHECK(fused.costs[i] == doctest::Approx(0.3).epsilon(1e-7));
    }
}

TEST_CASE("invalid views drop out of the per-cell average") {
    const CostVolume a = constant_volume(4, 3, 3, 0.2f);
    CostVolume b = make_volume(4, 3, 3);  // fully invalid
    const CostVolume fused = fuse_average({a, b});
    for (size_t i = 0; i < fused.costs.size(); ++i) {
        CHECK(fused.valid[i] == 1);
        CHECK(fused.costs[i] == 0.2f);
    }
    CostVolume c = make_volume(4, 3, 3);  // both invalid everywhere
    const CostVolume dead = fuse_average({b, c});
    for (size_t i = 0; i < dead.costs.size(); ++i) {
        CHECK(dead.valid[i] == 0);
        CHECK(dead.costs[i] == 1.0f);
    }
}

TEST_CASE("confidence weights") {
    SUBCASE("identical volumes share weight equally") {
        const CostVolume a = constant_volume(5, 4, 3, 0.3f);
        const std::vector<Grid<double>> ws = confidence_weights({a, a, a}, 0.25);
        REQUIRE(ws.size() == 3);
        for (const auto& w : ws)
            for (double v : w.data) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("best-cost gap of 1 at temperature 0.25 gives an e^4 ratio") {
        const CostVolume good = constant_volume(3, 3, 2, 0.0f);
        const CostVolume bad = constant_volume(3, 3, 2, 1.0f);
        const std::vector<Grid<double>> ws = confidence_weights({good, bad}, 0.25);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x) {
                CHECK(ws[0].at(y, x) / ws[1].at(y, x) ==
                      doctest::Approx(std::exp(4.0)).epsilon(1e-9));
                CHECK(ws[0].at(y, x) + ws[1].at(y, x) == doctest::Approx(1.0).epsilon(1e-12));
            }
    }
    SUBCASE("valid fraction scales the weight") {
        // Same best cost, but view b is valid at only 1 of 4 hypotheses.
        const CostVolume a = constant_volume(3, 3, 4, 0.5f);
        CostVolume b = make_volume(3, 3, 4);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x) {
                b.costs[b.idx(0, y, x)] = 0.5f;
                b.valid[b.idx(0, y, x)] = 1;
            }
        const std::vector<Grid<double>> ws = confidence_weights({a, b}, 0.25);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                CHECK(ws[0].at(y, x) / ws[1].at(y, x) == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("pixels with no valid view fall back to uniform weights") {
        const CostVolume a = make_volume(2, 2, 3);
        const CostVolume b = make_volume(2, 2, 3);
        const std::vector<Grid<double>> ws = confidence_weights({a, b}, 0.25);
        for (const auto& w : ws)
            for (double v : w.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("random volumes produce normalized weights") {
        Pcg32 rng(52);
        std::vector<CostVolume> vols;
        for (int v = 0; v < 4; ++v) vols.push_back(random_volume(rng, 7, 6, 5));
        const std::vector<Grid<double>> ws = confidence_weights(vols, 0.25);
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 7; ++x) {
                double total = 0.0;
                for (const auto& w : ws) total += w.at(y, x);
                CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
            }
    }
}

TEST_CASE("uniform weights reproduce fuse_average bitwise") {
    Pcg32 rng(53);
    std::vector<CostVolume> vols;
    for (int v = 0; v < 3; ++v) vols.push_back(random_volume(rng, 9, 8, 6));
    std::vector<Grid<double>> uniform(3, Grid<double>(9, 8, 1.0 / 3.0));
    const CostVolume avg = fuse_average(vols);
    const CostVolume wtd = fuse_weighted(vols, uniform);
    CHECK(avg.costs == wtd.costs);
    CHECK(avg.valid == wtd.valid);
}

TEST_CASE("one-hot weights select a single volume") {
    Pcg32 rng(54);
    std::vector<CostVolume> vols;
    for (int v = 0; v < 3; ++v) vols.push_back(random_volume(rng, 6, 6, 4, 1.0));
    std::vector<Grid<double>> onehot(3, Grid<double>(6, 6, 0.0));
    std::fill(onehot[1].data.begin(), onehot[1].data.end(), 1.0);
    const CostVolume fused = fuse_weighted(vols, onehot);
    for (size_t i = 0; i < fused.costs.size(); ++i) {
        CHECK(fused.valid[i] == 1);
        CHECK(fused.costs[i] == doctest::Approx(vols[1].costs[i]).epsilon(1e-7));
    }
}

TEST_CASE("weighted fusion matches the direct renormalized sum") {
    Pcg32 rng(55);
    std::vector<CostVolume> vols;
    for (int v = 0; v < 4; ++v) vols.push_back(random_volume(rng, 8, 7, 5));
    const std::vector<Grid<double>> ws = random_weights(rng, 8, 7, 4);
    const CostVolume fused = fuse_weighted(vols, ws);

    for (int k = 0; k < 5; ++k)
        for (int y = 0; y < 7; ++y)
            for (int x = 0; x < 8; ++x) {
                const size_t i = fused.idx(k, y, x);
                double num = 0.0, den = 0.0;
                for (int v = 0; v < 4; ++v) {
                    if (!vols[v].valid[i]) continue;
                    num += ws[v].at(y, x) * vols[v].costs[i];
                    den += ws[v].at(y, x);
                }
                if (den > 0.0) {
                    REQUIRE(fused.valid[i] == 1);
                    CHECK(fused.costs[i] == doctest::Approx(num / den).epsilon(1e-6));
                    CHECK(fused.costs[i] >= 0.0f);
                    CHECK(fused.costs[i] <= 1.0f);
                } else {
                    REQUIRE(fused.valid[i] == 0);
                    CHECK(fused.costs[i] == 1.0f);
                }
            }
}

TEST_CASE("permuting views together with their weights is harmless") {
    Pcg32 rng(56);
    std::vector<CostVolume> vols;
    for (int v = 0; v < 3; ++v) vols.push_back(random_volume(rng, 6, 5, 6));
    const std::vector<Grid<double>> ws = random_weights(rng, 6, 5, 3);

    const CostVolume fused = fuse_weighted(vols, ws);
    const CostVolume permuted =
        fuse_weighted({vols[2], vols[0], vols[1]}, {ws[2], ws[0], ws[1]});

    // Summation order changes the rounding, not the decision: compare the
    // per-pixel argmin over valid entries.
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 6; ++x) {
            int best_a = -1, best_b = -1;
            float ca = 2.0f, cb = 2.0f;
            for (int k = 0; k < 6; ++k) {
                const size_t i = fused.idx(k, y, x);
                if (fused.valid[i] && fused.costs[i] < ca) {
                    ca = fused.costs[i];
                    best_a = k;
                }
                if (permuted.valid[i] && permuted.costs[i] < cb) {
                    cb = permuted.costs[i];
                    best_b = k;
                }
            }
            CHECK(best_a == best_b);
            if (best_a >= 0) CHECK(ca == doctest::Approx(cb).epsilon(1e-5));
        }
}

TEST_CASE("serial and parallel fusion agree bitwise") {
    Pcg32 rng(57);
    std::vector<CostVolume> vols;
    for (int v = 0; v < 3; ++v) vols.push_back(random_volume(rng, 10, 9, 7));
    const std::vector<Grid<double>> ws = confidence_weights(vols, 0.25);
    const std::vector<Grid<double>> ws_serial = serial::confidence_weights(vols, 0.25);
    for (size_t v = 0; v < ws.size(); ++v) CHECK(ws[v].data == ws_serial[v].data);

    const CostVolume a = fuse_weighted(vols, ws);
    const CostVolume b = serial::fuse_weighted(vols, ws);
    CHECK(a.costs == b.costs);
    CHECK(a.valid == b.valid);
}

TEST_CASE("shape and argument validation") {
    CHECK_THROWS_AS(fuse_average({}), std::invalid_argument);

    Pcg32 rng(58);
    const CostVolume a = random_volume(rng, 6, 5, 4);
    const CostVolume b = random_volume(rng, 5, 5, 4);
    CHECK_THROWS_AS(fuse_average({a, b}), std::invalid_argument);

    CostVolume c = random_volume(rng, 6, 5, 4);
    c.hypotheses[0] += 1e-3;
    CHECK_THROWS_AS(fuse_average({a, c}), std::invalid_argument);

    const std::vector<Grid<double>> ws(1, Grid<double>(6, 5, 1.0));
    CHECK_THROWS_AS(fuse_weighted({a, a}, ws), std::invalid_argument);
    const std::vector<Grid<double>> bad_shape(2, Grid<double>(4, 4, 0.5));
    CHECK_THROWS_AS(fuse_weighted({a, a}, bad_shape), std::invalid_argument);
}

TEST_SUITE_END();
