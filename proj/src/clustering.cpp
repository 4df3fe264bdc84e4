#include "tempground/clustering.hpp"

#include "tempground/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tempground {

namespace {

void check_pooled(const PooledFeatureSequence& pooled) {
    if (pooled.num_frames() == 0 || pooled.dim() == 0) throw InvalidInput("clustering needs N >= 1 and D >= 1");
    if (!pooled.data.all_finite()) throw InvalidInput("pooled features contain non-finite values");
}

void check_window(int coherence_window) {
    if (coherence_window < 1 || coherence_window % 2 == 0) throw InvalidInput("r must be a positive odd integer");
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double squared_distance(std::span<const float> a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = static_cast<double>(a[c]) - b[c];
        sum += diff * diff;
    }
    return sum;
}

// Four independent partial sums keep the FP pipeline busy.
double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) {
        s0 += a[c] * b[c];
        s1 += a[c + 1] * b[c + 1];
        s2 += a[c + 2] * b[c + 2];
        s3 += a[c + 3] * b[c + 3];
    }
    for (; c < n; ++c) s0 += a[c] * b[c];
    return (s0 + s1) + (s2 + s3);
}

// Row-major N x D matrix of clamped window sums.
std::vector<double> window_sums(const PooledFeatureSequence& pooled, int coherence_window) {
    const std::size_t n = pooled.num_frames();
    const std::size_t d = pooled.dim();
    const auto half = static_cast<std::ptrdiff_t>((coherence_window - 1) / 2);
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;

    std::vector<double> sums(n * d, 0.0);
    for (std::ptrdiff_t i = 0; i <= last; ++i) {
        double* dst = sums.data() + static_cast<std::size_t>(i) * d;
        for (std::ptrdiff_t offset = -half; offset <= half; ++offset) {
            const auto src = pooled.data.row(static_cast<std::size_t>(std::clamp(i + offset, std::ptrdiff_t{0}, last)));
            for (std::size_t c = 0; c < d; ++c) dst[c] += src[c];
        }
    }
    return sums;
}

} // namespace

Centroids kmeanspp_init(const PooledFeatureSequence& pooled, int k, std::uint64_t seed) {
    check_pooled(pooled);
    if (k < 1) throw InvalidInput("k must be positive");

    const std::size_t n = pooled.num_frames();
    std::mt19937_64 rng(seed);

    auto as_centroid = [&](std::size_t i) {
        const auto row = pooled.data.row(i);
        return std::vector<double>(row.begin(), row.end());
    };

    Centroids centroids;
    centroids.push_back(as_centroid(static_cast<std::size_t>(rng() % n)));

    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(pooled.data.row(i), centroids.back());

    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double v : nearest) total += v;
        if (!(total > 0.0)) break;  // every remaining row coincides with a centroid

        const double target = uniform01(rng) * total;
        std::size_t pick = n;
        double running = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            running += nearest[i];
            if (nearest[i] > 0.0 && running > target) {
                pick = i;
                break;
            }
        }
        if (pick == n) {
            // Rounding pushed target past the running total; take the last candidate.
            for (std::size_t i = n; i-- > 0;) {
                if (nearest[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }

        centroids.push_back(as_centroid(pick));
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(pooled.data.row(i), centroids.back()));
        }
    }
    return centroids;
}

double objective_value(const PooledFeatureSequence& pooled, std::span<const int> labels,
                       const Centroids& centroids, int coherence_window) {
    check_window(coherence_window);
    const std::size_t n = pooled.num_frames();
    if (labels.size() != n) throw InvalidInput("label count does not match frame count");
    for (const auto& mu : centroids) {
        if (mu.size() != pooled.dim()) throw InvalidInput("centroid dimension does not match features");
    }

    const auto half = static_cast<std::ptrdiff_t>((coherence_window - 1) / 2);
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    double total = 0.0;
    for (std::ptrdiff_t i = 0; i <= last; ++i) {
        const int label = labels[static_cast<std::size_t>(i)];
        if (label < 0 || static_cast<std::size_t>(label) >= centroids.size()) {
            throw InvalidInput("label " + std::to_string(label) + " out of range");
        }
        const auto& mu = centroids[static_cast<std::size_t>(label)];
        for (std::ptrdiff_t offset = -half; offset <= half; ++offset) {
            total += squared_distance(pooled.data.row(static_cast<std::size_t>(std::clamp(i + offset, std::ptrdiff_t{0}, last))), mu);
        }
    }
    return total;
}

ClusterAssignment run_coherence_clustering(const PooledFeatureSequence& pooled, Centroids initial,
                                           int coherence_window, int max_iters,
                                           const RoundObserver& observer) {
    check_pooled(pooled);
    check_window(coherence_window);
    if (max_iters < 1) throw InvalidInput("max_iters must be positive");
    if (initial.empty()) throw InvalidInput("at least one initial centroid is required");
    for (const auto& mu : initial) {
        if (mu.size() != pooled.dim()) throw InvalidInput("centroid dimension does not match features");
    }

    const std::size_t n = pooled.num_frames();
    const std::size_t d = pooled.dim();
    const double r = coherence_window;
    const std::vector<double> sums = window_sums(pooled, coherence_window);

    // Q_i: summed squared norms of the window members, so that the objective
    // can be evaluated as sum_i (Q_i - 2 mu . W_i + r |mu|^2) in O(N D).
    std::vector<double> window_sq(n, 0.0);
    {
        std::vector<double> row_sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = pooled.data.row(i);
            double acc = 0.0;
            for (float v : row) acc += static_cast<double>(v) * v;
            row_sq[i] = acc;
        }
        const auto half = static_cast<std::ptrdiff_t>((coherence_window - 1) / 2);
        const auto last = static_cast<std::ptrdiff_t>(n) - 1;
        for (std::ptrdiff_t i = 0; i <= last; ++i) {
            for (std::ptrdiff_t offset = -half; offset <= half; ++offset) {
                window_sq[static_cast<std::size_t>(i)] += row_sq[static_cast<std::size_t>(std::clamp(i + offset, std::ptrdiff_t{0}, last))];
            }
        }
    }

    ClusterAssignment result;
    result.centroids = std::move(initial);
    result.labels.assign(n, 0);
    std::vector<int> previous;
    std::vector<double> penalty;

    for (int round = 0; round < max_iters; ++round) {
        // Assignment: argmin_j  r*|mu_j|^2 - 2 mu_j . W_i  (the window's own
        // squared norms are shared by every j and drop out).
        const std::size_t k = result.centroids.size();
        penalty.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            const auto& mu = result.centroids[j];
            penalty[j] = r * dot(mu.data(), mu.data(), d);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double* w = sums.data() + i * d;
            int best = 0;
            double best_cost = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < k; ++j) {
                const double cost = penalty[j] - 2.0 * dot(result.centroids[j].data(), w, d);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = static_cast<int>(j);
                }
            }
            result.labels[i] = best;
        }
        ++result.iterations;

        if (round > 0 && result.labels == previous) {
            result.converged = true;
            break;
        }

        // Update: each centroid becomes the mean of every windowed copy owned
        // by its members. Clusters left without members are dropped.
        std::vector<std::vector<double>> accum(k, std::vector<double>(d, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(result.labels[i]);
            const double* w = sums.data() + i * d;
            auto& dst = accum[j];
            for (std::size_t c = 0; c < d; ++c) dst[c] += w[c];
            ++counts[j];
        }
        std::vector<int> remap(k, -1);
        Centroids updated;
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) continue;
            remap[j] = static_cast<int>(updated.size());
            const double denom = r * static_cast<double>(counts[j]);
            for (double& v : accum[j]) v /= denom;
            updated.push_back(std::move(accum[j]));
        }
        result.centroids = std::move(updated);
        for (int& label : result.labels) label = remap[static_cast<std::size_t>(label)];

        penalty.resize(result.centroids.size());
        for (std::size_t j = 0; j < result.centroids.size(); ++j) {
            penalty[j] = r * dot(result.centroids[j].data(), result.centroids[j].data(), d);
        }
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(result.labels[i]);
            const double cost = window_sq[i] - 2.0 * dot(result.centroids[j].data(), sums.data() + i * d, d) + penalty[j];
            objective += std::max(0.0, cost);
        }
        result.objective = objective;
        result.objective_trace.push_back(result.objective);
        if (observer) observer(round, result.labels, result.objective);
        previous = result.labels;
    }

    return result;
}

ClusterAssignment temporal_coherence_cluster(const PooledFeatureSequence& pooled, const PipelineConfig& config) {
    config.validate();
    return run_coherence_clustering(pooled, kmeanspp_init(pooled, config.num_clusters, config.clustering_seed),
                                    config.coherence_window, config.clustering_max_iters);
}

} // namespace tempground
