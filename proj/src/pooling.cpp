#include "tempground/pooling.hpp"

#include "tempground/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tempground {

std::vector<double> pooling_weights(const PipelineConfig& config) {
    config.validate();
    const int w = config.pooling_window;
    const int half = (w - 1) / 2;
    std::vector<double> weights(static_cast<std::size_t>(w));
    if (config.pooling_kernel == PoolingKernel::uniform) {
        std::fill(weights.begin(), weights.end(), 1.0 / w);
        return weights;
    }
    const double two_sigma_sq = 2.0 * config.gaussian_sigma * config.gaussian_sigma;
    double total = 0.0;
    for (int offset = -half; offset <= half; ++offset) {
        const double v = std::exp(-static_cast<double>(offset) * offset / two_sigma_sq);
        weights[static_cast<std::size_t>(offset + half)] = v;
        total += v;
    }
    for (double& v : weights) v /= total;
    return weights;
}

PooledFeatureSequence temporal_pool(const FeatureSequence& features, const PipelineConfig& config) {
    features.validate();
    config.validate();

    const std::size_t n = features.num_frames();
    const std::size_t d = features.dim();
    const auto half = static_cast<std::ptrdiff_t>((config.pooling_window - 1) / 2);
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    const bool uniform = config.pooling_kernel == PoolingKernel::uniform;
    const std::vector<double> weights = pooling_weights(config);
    const double w = static_cast<double>(config.pooling_window);

    PooledFeatureSequence out{Matrix(n, d), features.frame_rate};
    if (half == 0) {
        out.data = features.data;
        return out;
    }

    // Accumulate whole rows at a time so the inner loop runs over contiguous
    // memory. Per element the additions happen in window order, identical to
    // a scalar triple loop.
    std::vector<double> acc(d);
    for (std::ptrdiff_t i = 0; i <= last; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::ptrdiff_t offset = -half; offset <= half; ++offset) {
            const auto src = features.data.row(static_cast<std::size_t>(std::clamp(i + offset, std::ptrdiff_t{0}, last)));
            if (uniform) {
                for (std::size_t c = 0; c < d; ++c) acc[c] += src[c];
            } else {
                const double wt = weights[static_cast<std::size_t>(offset + half)];
                for (std::size_t c = 0; c < d; ++c) acc[c] += wt * src[c];
            }
        }
        auto dst = out.data.row(static_cast<std::size_t>(i));
        if (uniform) {
            for (std::size_t c = 0; c < d; ++c) dst[c] = static_cast<float>(acc[c] / w);
        } else {
            for (std::size_t c = 0; c < d; ++c) dst[c] = static_cast<float>(acc[c]);
        }
    }
    return out;
}

} // namespace tempground
