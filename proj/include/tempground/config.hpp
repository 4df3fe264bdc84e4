#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tempground {

enum class PoolingKernel { uniform, gaussian };
enum class Normalization { none, box_cox, yeo_johnson };
enum class LambdaMode { auto_mle, fixed };

/// Settings shared by every pipeline stage. Defaults are the reference
/// values (w = 21, k = 9, r = 7, Box-Cox with a fitted lambda).
struct PipelineConfig {
    int pooling_window = 21;                 // w, odd
    PoolingKernel pooling_kernel = PoolingKernel::uniform;
    double gaussian_sigma = 1.0;             // only read for the gaussian kernel
    int num_clusters = 9;                    // k
    int coherence_window = 7;                // r, odd; r = 1 is plain k-means
    int clustering_max_iters = 100;
    std::uint64_t clustering_seed = 0;
    Normalization normalization = Normalization::box_cox;
    LambdaMode lambda_mode = LambdaMode::auto_mle;
    double fixed_lambda = 1.0;               // only read when lambda_mode == fixed

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parses a JSON object. Missing keys keep their defaults; unknown keys are
/// rejected. Recognised keys: w, pooling_kernel, sigma, k, r, max_iters,
/// seed, normalization, lambda ("auto" or a number).
PipelineConfig load_config(std::string_view document);
PipelineConfig load_config_file(const std::string& path);

/// Inverse of load_config.
std::string serialize_config(const PipelineConfig& config);

PoolingKernel parse_pooling_kernel(std::string_view name);
Normalization parse_normalization(std::string_view name);
std::string_view to_string(PoolingKernel kernel);
std::string_view to_string(Normalization normalization);

} // namespace tempground
