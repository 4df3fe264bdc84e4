#include "tempground/errors.hpp"
#include "tempground/metrics.hpp"

#include "fixtures.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace tempground;

TEST_CASE("IoU examples") {
    CHECK(interval_iou({2, 7}, {2, 7}) == 1.0);
    CHECK(interval_iou({0, 1}, {1, 2}) == 0.0);
    CHECK(interval_iou({0, 1}, {5, 6}) == 0.0);
    CHECK(interval_iou({0, 10}, {5, 15}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(interval_iou({5, 15}, {0, 10}) == interval_iou({0, 10}, {5, 15}));
    CHECK_THROWS_AS(interval_iou({3, 3}, {0, 1}), InvalidInput);
}

TEST_CASE("evaluate examples") {
    const std::vector<double> thresholds{0.3, 0.5, 0.7};

    const std::vector<EvalRecord> exact{{{0, 4}, {0, 4}}, {{1, 9}, {1, 9}}};
    const auto perfect = evaluate(exact, thresholds);
    for (const auto& [m, r] : perfect.recall) CHECK(r == 1.0);
    CHECK(perfect.mean_iou == 1.0);
    CHECK(perfect.count == 2);

    // IoU 0.4 and 0.6.
    const std::vector<EvalRecord> pair{{{0, 4}, {0, 10}}, {{0, 6}, {0, 10}}};
    const auto s = evaluate(pair, thresholds);
    CHECK(s.recall.at(0.3) == 1.0);
    CHECK(s.recall.at(0.5) == 0.5);
    CHECK(s.recall.at(0.7) == 0.0);
    CHECK(s.mean_iou == doctest::Approx(0.5).epsilon(1e-15));

    const std::vector<EvalRecord> boundary{{{0, 5}, {0, 10}}};
    CHECK(evaluate(boundary, std::vector<double>{0.5}).recall.at(0.5) == 0.0);

    CHECK_THROWS_AS(evaluate(std::vector<EvalRecord>{}, thresholds), InvalidInput);
    CHECK_THROWS_AS(evaluate(exact, std::vector<double>{1.0}), InvalidInput);
}

TEST_CASE("ten-record fixture") {
    const auto records = tgtest::metrics_fixture();
    const std::vector<double> thresholds{0.3, 0.5, 0.7};
    const auto s = evaluate(records, thresholds);
    CHECK(std::abs(s.recall.at(0.3) - tgtest::fixture_r03) <= 1e-12);
    CHECK(std::abs(s.recall.at(0.5) - tgtest::fixture_r05) <= 1e-12);
    CHECK(std::abs(s.recall.at(0.7) - tgtest::fixture_r07) <= 1e-12);
    CHECK(std::abs(s.mean_iou - tgtest::fixture_miou) <= 1e-12);
    CHECK(s.ious.size() == 10);
}

TEST_CASE("recall is non-increasing in the threshold") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    std::vector<EvalRecord> records;
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        records.push_back({{std::min(a, b), std::max(a, b) + 0.1}, {std::min(c, d), std::max(c, d) + 0.1}});
    }
    std::vector<double> thresholds;
    for (int i = 1; i < 20; ++i) thresholds.push_back(i / 20.0);
    const auto s = evaluate(records, thresholds);
    double last = 1.0;
    for (const auto& [m, r] : s.recall) {
        CHECK(r <= last);
        CHECK(r >= 0.0);
        last = r;
    }
    CHECK(s.mean_iou >= 0.0);
    CHECK(s.mean_iou <= 1.0);
}

TEST_CASE("noise prefix") {
    std::mt19937_64 rng(52);
    const auto f = tgtest::random_features(rng, 20, 8);
    const Interval gt{3, 9};

    const auto same = insert_noise_prefix(f, gt, {0.0, 1});
    CHECK(same.features.data == f.data);
    CHECK(same.ground_truth == gt);

    const auto aug = insert_noise_prefix(f, gt, {10.0, 7});
    CHECK(aug.features.num_frames() == 30);
    CHECK(aug.ground_truth == Interval{13, 19});
    for (std::size_t i = 0; i < 10; ++i) {
        double norm = 0.0;
        for (float v : aug.features.data.row(i)) norm += static_cast<double>(v) * v;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    }
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t c = 0; c < 8; ++c) CHECK(aug.features.data(10 + i, c) == f.data(i, c));
    }

    CHECK(insert_noise_prefix(f, gt, {10.0, 7}).features.data == aug.features.data);
    CHECK(!(insert_noise_prefix(f, gt, {10.0, 8}).features.data == aug.features.data));

    const FeatureSequence fast{f.data, 4.0f};
    CHECK(insert_noise_prefix(fast, gt, {2.5, 1}).features.num_frames() == 30);
    CHECK_THROWS_AS(insert_noise_prefix(fast, gt, {0.3, 1}), InvalidInput);
    CHECK_THROWS_AS(insert_noise_prefix(f, gt, {-1.0, 1}), InvalidInput);
}

TEST_CASE("clusters per ground truth") {
    CHECK(clusters_per_gt(std::vector<int>(9, 4), {0, 9}) == 1);
    CHECK(clusters_per_gt(std::vector<int>{0, 0, 1, 1, 2, 2}, {1, 5}) == 3);
    CHECK(clusters_per_gt(std::vector<int>{0, 1, 0, 1}, {2, 3}) == 1);
    // A label that recurs after a gap counts as a new run.
    CHECK(clusters_per_gt(std::vector<int>{0, 1, 0}, {0, 3}) == 3);
    CHECK_THROWS_AS(clusters_per_gt(std::vector<int>{0, 1}, {0, 3}), InvalidInput);
    CHECK_THROWS_AS(clusters_per_gt(std::vector<int>{0, 1}, {1, 1}), InvalidInput);
}

TEST_CASE("seconds to frames") {
    CHECK(interval_to_frames({2.0, 5.0}, 1.0, 10) == Proposal{2, 5});
    CHECK(interval_to_frames({2.2, 4.6}, 1.0, 10) == Proposal{2, 5});
    CHECK(interval_to_frames({1.0, 2.5}, 2.0, 10) == Proposal{2, 5});
    CHECK(interval_to_frames({0.0, 50.0}, 1.0, 10) == Proposal{0, 10});
    CHECK(interval_to_frames({0.1, 0.2}, 1.0, 10) == Proposal{0, 1});
}
