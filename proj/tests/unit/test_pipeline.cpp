#include "tempground/errors.hpp"
#include "tempground/metrics.hpp"
#include "tempground/pipeline.hpp"
#include "tempground/synthetic.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace tempground;

TEST_CASE("planted segment is recovered with default settings") {
    synthetic::PlantedOptions opts;
    opts.min_frames = 300;
    opts.max_frames = 600;
    opts.min_segments = 6;
    opts.max_segments = 10;
    opts.min_segment_frames = 30;
    opts.min_target_fraction = 0.2;
    opts.max_target_fraction = 0.35;
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto video = synthetic::planted_segment_video(seed, opts);
        const auto run = ground(video.features, video.query, PipelineConfig{});
        const Interval pred{run.result.start_seconds, run.result.end_seconds};
        const Interval gt{static_cast<double>(video.target.start), static_cast<double>(video.target.end)};
        if (interval_iou(pred, gt) >= 0.9) ++hits;
    }
    CHECK(hits >= 8);
}

TEST_CASE("run exposes every stage consistently") {
    const auto video = synthetic::planted_segment_video(3);
    const auto run = ground(video.features, video.query, PipelineConfig{}, GroundingOptions{true});
    CHECK(run.clustering.labels.size() == video.features.num_frames());
    CHECK(run.change_points.points.front() == 0);
    CHECK(run.change_points.points.back() == video.features.num_frames());
    const std::size_t m = run.change_points.interior_count();
    CHECK(run.proposals.size() == (m + 1) * (m + 2) / 2);
    CHECK(std::find(run.proposals.begin(), run.proposals.end(), run.result.interval) != run.proposals.end());
    REQUIRE(run.adjusted.size() == 1);
    CHECK(run.result.lambda == run.adjusted[0].lambda);
    REQUIRE(run.result.ranked.size() == run.proposals.size());
    CHECK(run.result.ranked.front().proposal == run.result.interval);
}

TEST_CASE("seconds follow the frame rate") {
    auto video = synthetic::planted_segment_video(4);
    video.features.frame_rate = 2.0f;
    const auto run = ground(video.features, video.query, PipelineConfig{});
    CHECK(run.result.start_seconds == static_cast<double>(run.result.interval.start) / 2.0);
    CHECK(run.result.end_seconds == static_cast<double>(run.result.interval.end) / 2.0);
}

TEST_CASE("multi-query picks the query with the stronger response") {
    const auto video = synthetic::planted_segment_video(5);
    std::mt19937_64 rng(5);
    std::normal_distribution<float> normal(0.0f, 0.01f);
    QueryEmbedding weak{std::vector<float>(video.query.values.size())};
    for (float& v : weak.values) v = normal(rng);
    const std::vector<QueryEmbedding> queries{weak, video.query};
    const auto run = ground(video.features, queries, PipelineConfig{});
    CHECK(run.adjusted.size() == 2);
    const auto alone = ground(video.features, video.query, PipelineConfig{});
    if (run.result.query_index == 1) CHECK(run.result.interval == alone.result.interval);
    CHECK(run.result.score >= alone.result.score);
}

TEST_CASE("grounding is deterministic") {
    const auto video = synthetic::planted_segment_video(6);
    const auto a = ground(video.features, video.query, PipelineConfig{});
    const auto b = ground(video.features, video.query, PipelineConfig{});
    CHECK(a.result.interval == b.result.interval);
    CHECK(a.clustering.labels == b.clustering.labels);
}

TEST_CASE("input validation") {
    const auto video = synthetic::planted_segment_video(7);
    CHECK_THROWS_AS(ground(video.features, std::span<const QueryEmbedding>{}, PipelineConfig{}), InvalidInput);
    CHECK_THROWS_AS(ground(video.features, QueryEmbedding{{1.0f}}, PipelineConfig{}), InvalidInput);
    PipelineConfig bad;
    bad.pooling_window = 2;
    CHECK_THROWS_AS(ground(video.features, video.query, bad), ConfigError);
}
