#pragma once

#include "tempground/io.hpp"
#include "tempground/proposals.hpp"

#include <cstdint>
#include <vector>

namespace tempground::synthetic {

/// Block-structured video: every segment has its own base direction and each
/// frame is that direction plus isotropic gaussian noise, renormalised.
struct Video {
    FeatureSequence features;
    QueryEmbedding query;
    std::vector<Proposal> segments;  // tiles [0, N)
    Proposal target;                 // frames aligned with the query
};

struct PlantedOptions {
    std::size_t min_frames = 150;
    std::size_t max_frames = 300;
    std::size_t dim = 64;
    std::size_t min_segments = 4;
    std::size_t max_segments = 7;
    std::size_t min_segment_frames = 20;
    double noise = 0.5;              // norm of the per-frame noise before renormalising
    double query_alignment = 0.6;    // cosine between the target base and the query
    double frame_rate = 1.0;
    // When max_target_fraction > 0 the target's length is drawn as this
    // fraction of N and the remaining frames are split among the other
    // segments; otherwise the target is one of the random segments.
    double min_target_fraction = 0.0;
    double max_target_fraction = 0.0;
    // Size of the palette of recurring background scenes; non-target segments
    // draw from it (never repeating their predecessor). 0 gives every segment
    // a fresh scene.
    std::size_t background_contexts = 0;
    // Distractors: in every non-target segment this fraction of frames is
    // pulled strongly towards the query, producing sparse, right-skewed
    // similarity spikes.
    double spike_fraction = 0.0;
    double spike_strength = 1.5;
};

/// One video whose target segment is the only one aligned with the query.
Video planted_segment_video(std::uint64_t seed, const PlantedOptions& options = {});

struct PiecewiseOptions {
    std::size_t min_frames = 90;
    std::size_t max_frames = 240;
    std::size_t dim = 32;
    std::size_t num_segments = 3;
    std::size_t min_segment_frames = 25;
    double noise = 1.0;
    double frame_rate = 1.0;
};

/// Piecewise-constant video with additive gaussian noise (no renormalising).
/// The target is the middle segment. The query is the target's base direction.
Video piecewise_constant_video(std::uint64_t seed, const PiecewiseOptions& options = {});

} // namespace tempground::synthetic
