#pragma once

#include "tempground/config.hpp"
#include "tempground/io.hpp"
#include "tempground/matrix.hpp"

#include <vector>

namespace tempground {

/// Temporally aggregated features. Same shape and frame rate as the input.
struct PooledFeatureSequence {
    Matrix data;
    float frame_rate = 1.0f;

    std::size_t num_frames() const noexcept { return data.rows(); }
    std::size_t dim() const noexcept { return data.cols(); }
};

/// Normalised kernel weights for offsets -(w-1)/2 .. (w-1)/2.
std::vector<double> pooling_weights(const PipelineConfig& config);

/// Sliding-window average over frames with stride 1. Windows that run past
/// either end reuse the first/last frame, so every output row is a convex
/// combination of real frames and the length stays N.
PooledFeatureSequence temporal_pool(const FeatureSequence& features, const PipelineConfig& config);

} // namespace tempground
