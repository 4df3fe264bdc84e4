#pragma once

#include "tempground/io.hpp"
#include "tempground/proposals.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace tempground {

/// Half-open time interval in seconds.
struct Interval {
    double start = 0.0;
    double end = 0.0;

    double length() const noexcept { return end - start; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// |intersection| / |union|; 0 for disjoint intervals. Throws on start >= end.
double interval_iou(const Interval& pred, const Interval& gt);

struct EvalRecord {
    Interval prediction;
    Interval ground_truth;
};

struct EvalSummary {
    std::map<double, double> recall;   // m -> fraction of records with IoU > m
    double mean_iou = 0.0;
    std::size_t count = 0;
    std::vector<double> ious;
};

/// R@m counts IoU strictly greater than m.
EvalSummary evaluate(std::span<const EvalRecord> records, std::span<const double> thresholds);

struct NoiseAugmentation {
    double rho_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct AugmentedVideo {
    FeatureSequence features;
    Interval ground_truth;
};

/// Prepends rho * fps random unit-norm rows and shifts the ground truth by
/// rho seconds. rho * fps must be (within 1e-6) a whole number of frames.
AugmentedVideo insert_noise_prefix(const FeatureSequence& seq, const Interval& gt, const NoiseAugmentation& aug);

/// Number of maximal constant-label runs that overlap the frame interval.
std::size_t clusters_per_gt(std::span<const int> labels, const Proposal& gt_frames);

/// Smallest frame interval covering [start, end) seconds, clipped to [0, N).
Proposal interval_to_frames(const Interval& interval, double frame_rate, std::size_t num_frames);

} // namespace tempground
