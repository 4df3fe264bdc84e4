#pragma once

#include "tempground/config.hpp"
#include "tempground/pooling.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tempground {

/// One centroid per row, 64-bit.
using Centroids = std::vector<std::vector<double>>;

struct ClusterAssignment {
    std::vector<int> labels;            // length N, values in [0, centroids.size())
    Centroids centroids;                // empty clusters already removed
    double objective = 0.0;             // coherence objective of (labels, centroids)
    int iterations = 0;                 // assignment passes executed
    bool converged = false;             // stopped because labels repeated
    std::vector<double> objective_trace;  // objective after every update step
};

/// Called after each assignment/update round with the compacted labels and
/// the objective of the updated centroids.
using RoundObserver = std::function<void(int round, std::span<const int> labels, double objective)>;

/// Seeded k-means++ seeding on the pooled features. Returns fewer than k
/// centroids when the data has fewer than k distinct rows.
Centroids kmeanspp_init(const PooledFeatureSequence& pooled, int k, std::uint64_t seed);

/// Lloyd-style alternation on the coherence objective, starting from the
/// given centroids. Each frame is scored by the summed squared distance of
/// the r frames centred on it (indices clamped to the sequence) to a
/// centroid; r = 1 reduces to ordinary k-means.
ClusterAssignment run_coherence_clustering(const PooledFeatureSequence& pooled, Centroids initial,
                                           int coherence_window, int max_iters,
                                           const RoundObserver& observer = {});

/// k-means++ seeding followed by run_coherence_clustering, using k, r, the
/// iteration cap and the seed from the config.
ClusterAssignment temporal_coherence_cluster(const PooledFeatureSequence& pooled, const PipelineConfig& config);

/// sum_i sum_{|delta| <= (r-1)/2} || c[clamp(i + delta)] - mu[label_i] ||^2
double objective_value(const PooledFeatureSequence& pooled, std::span<const int> labels,
                       const Centroids& centroids, int coherence_window);

} // namespace tempground
