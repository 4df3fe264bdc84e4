#include "tempground/config.hpp"
#include "tempground/errors.hpp"

#include <doctest.h>

#include <random>

using namespace tempground;

TEST_CASE("empty document yields the default settings") {
    const auto config = load_config("");
    CHECK(config.pooling_window == 21);
    CHECK(config.num_clusters == 9);
    CHECK(config.coherence_window == 7);
    CHECK(config.normalization == Normalization::box_cox);
    CHECK(config.lambda_mode == LambdaMode::auto_mle);
    CHECK(config.pooling_kernel == PoolingKernel::uniform);
    CHECK(config.clustering_max_iters == 100);
    CHECK(config.clustering_seed == 0);
    CHECK(load_config("{}") == PipelineConfig{});
}

TEST_CASE("even window is rejected with the field named") {
    CHECK_THROWS_WITH_AS(load_config(R"({"w": 4})"), "w must be odd", ConfigError);
    CHECK_THROWS_WITH_AS(load_config(R"({"r": 2})"), "r must be odd", ConfigError);
}

TEST_CASE("minimal ranges are valid") {
    const auto config = load_config(R"({"k": 1, "w": 1, "r": 1})");
    CHECK(config.num_clusters == 1);
    CHECK(config.pooling_window == 1);
    CHECK(config.coherence_window == 1);
}

TEST_CASE("constraint violations and parse failures") {
    CHECK_THROWS_AS(load_config(R"({"k": 0})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"w": -3})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"r": 0})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"max_iters": 0})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"pooling_kernel": "gaussian", "sigma": 0})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"normalization": "quantile"})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"w": 2.5})"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config(R"({"window": 3})"), "unknown config field 'window'", ConfigError);
    CHECK_THROWS_AS(load_config("{\"w\": "), ConfigError);
    CHECK_THROWS_AS(load_config("[1, 2]"), ConfigError);
}

TEST_CASE("names accept both dash and underscore spellings") {
    const auto config = load_config(R"({"normalization": "yeo-johnson", "lambda": 0.5, "pooling-kernel": "gaussian", "sigma": 4})");
    CHECK(config.normalization == Normalization::yeo_johnson);
    CHECK(config.lambda_mode == LambdaMode::fixed);
    CHECK(config.fixed_lambda == 0.5);
    CHECK(config.pooling_kernel == PoolingKernel::gaussian);
    CHECK(config.gaussian_sigma == 4.0);
}

TEST_CASE("serialize then load is the identity on random valid configs") {
    std::mt19937_64 rng(7);
    auto odd = [&](int hi) { return 2 * static_cast<int>(rng() % static_cast<unsigned>(hi)) + 1; };
    for (int trial = 0; trial < 200; ++trial) {
        PipelineConfig c;
        c.pooling_window = odd(40);
        c.pooling_kernel = rng() % 2 ? PoolingKernel::gaussian : PoolingKernel::uniform;
        c.gaussian_sigma = 0.1 + static_cast<double>(rng() % 1000) / 37.0;
        c.num_clusters = 1 + static_cast<int>(rng() % 50);
        c.coherence_window = odd(10);
        c.clustering_max_iters = 1 + static_cast<int>(rng() % 500);
        c.clustering_seed = rng();
        c.normalization = static_cast<Normalization>(rng() % 3);
        if (rng() % 2) {
            c.lambda_mode = LambdaMode::fixed;
            c.fixed_lambda = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        }
        const auto text = serialize_config(c);
        CHECK(load_config(text) == c);
    }
}
