#include "tempground/synthetic.hpp"

#include "tempground/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tempground::synthetic {

namespace {

using Vec = std::vector<double>;

Vec gaussian_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(dim);
    for (double& x : v) x = normal(rng);
    return v;
}

double norm(const Vec& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

void normalise(Vec& v) {
    const double n = norm(v);
    for (double& x : v) x /= n;
}

// Unit vector orthogonal to the unit vector `q`.
Vec orthogonal_unit(std::mt19937_64& rng, const Vec& q) {
    Vec v = gaussian_vector(rng, q.size());
    const double proj = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= proj * q[c];
    normalise(v);
    return v;
}

std::vector<Proposal> random_segments(std::mt19937_64& rng, std::size_t n, std::size_t count, std::size_t min_len) {
    std::uniform_real_distribution<double> weight(1.0, 3.0);
    std::vector<double> w(count);
    for (double& x : w) x = weight(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const std::size_t spare = n - count * min_len;

    std::vector<Proposal> segments;
    std::size_t start = 0;
    for (std::size_t s = 0; s < count; ++s) {
        std::size_t len = min_len + static_cast<std::size_t>(std::floor(w[s] / total * static_cast<double>(spare)));
        if (s + 1 == count) len = n - start;
        segments.push_back({start, start + len});
        start += len;
    }
    return segments;
}

std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

QueryEmbedding to_query(const Vec& q) {
    QueryEmbedding out;
    out.values.assign(q.begin(), q.end());
    return out;
}

} // namespace

Video planted_segment_video(std::uint64_t seed, const PlantedOptions& options) {
    if (options.dim < 2 || options.min_frames > options.max_frames || options.min_segments < 2 ||
        options.min_segments > options.max_segments) {
        throw InvalidInput("inconsistent planted-video options");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::size_t n = uniform_size(rng, options.min_frames, options.max_frames);
    std::size_t count = uniform_size(rng, options.min_segments, options.max_segments);
    count = std::min(count, n / options.min_segment_frames);
    if (count < 2) throw InvalidInput("video too short for the requested segment length");

    Video video;
    std::size_t target_index = 0;
    if (options.max_target_fraction > 0.0) {
        const double fraction =
            std::uniform_real_distribution<double>(options.min_target_fraction, options.max_target_fraction)(rng);
        const auto target_len = std::max(options.min_segment_frames,
                                         static_cast<std::size_t>(std::round(fraction * static_cast<double>(n))));
        const std::size_t others = std::min(count - 1, (n - target_len) / options.min_segment_frames);
        if (others == 0 || target_len >= n) throw InvalidInput("target fraction leaves no room for other segments");
        auto rest = random_segments(rng, n - target_len, others, options.min_segment_frames);
        target_index = uniform_size(rng, 0, others);
        std::size_t cursor = 0;
        for (std::size_t s = 0; s <= others; ++s) {
            const std::size_t len = s == target_index ? target_len : rest[s < target_index ? s : s - 1].length();
            video.segments.push_back({cursor, cursor + len});
            cursor += len;
        }
        count = video.segments.size();
    } else {
        video.segments = random_segments(rng, n, count, options.min_segment_frames);
        target_index = uniform_size(rng, 0, count - 1);
    }
    video.target = video.segments[target_index];

    Vec q = gaussian_vector(rng, options.dim);
    normalise(q);
    video.query = to_query(q);

    const double alpha = options.query_alignment;
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    const double noise_scale = options.noise / std::sqrt(static_cast<double>(options.dim));

    video.features = FeatureSequence{Matrix(n, options.dim), static_cast<float>(options.frame_rate)};
    std::vector<Vec> palette;
    for (std::size_t c = 0; c < options.background_contexts; ++c) palette.push_back(orthogonal_unit(rng, q));
    std::size_t previous_context = palette.size();

    for (std::size_t s = 0; s < count; ++s) {
        const bool is_target = s == target_index;
        Vec base;
        if (is_target || palette.empty()) {
            base = orthogonal_unit(rng, q);
            previous_context = palette.size();
        } else {
            std::size_t context = uniform_size(rng, 0, palette.size() - 1);
            if (context == previous_context && palette.size() > 1) context = (context + 1) % palette.size();
            base = palette[context];
            previous_context = context;
        }
        if (is_target) {
            for (std::size_t c = 0; c < base.size(); ++c) base[c] = alpha * q[c] + beta * base[c];
        }
        for (std::size_t i = video.segments[s].start; i < video.segments[s].end; ++i) {
            Vec frame = gaussian_vector(rng, options.dim);
            const bool spike = !is_target && unit(rng) < options.spike_fraction;
            for (std::size_t c = 0; c < frame.size(); ++c) {
                frame[c] = base[c] + noise_scale * frame[c] + (spike ? options.spike_strength * q[c] : 0.0);
            }
            normalise(frame);
            auto dst = video.features.data.row(i);
            for (std::size_t c = 0; c < frame.size(); ++c) dst[c] = static_cast<float>(frame[c]);
        }
    }
    return video;
}

Video piecewise_constant_video(std::uint64_t seed, const PiecewiseOptions& options) {
    if (options.num_segments < 1 || options.min_frames > options.max_frames ||
        options.min_frames < options.num_segments * options.min_segment_frames) {
        throw InvalidInput("inconsistent piecewise-video options");
    }
    std::mt19937_64 rng(seed);
    const std::size_t n = uniform_size(rng, options.min_frames, options.max_frames);

    Video video;
    video.segments = random_segments(rng, n, options.num_segments, options.min_segment_frames);
    video.target = video.segments[options.num_segments / 2];

    std::normal_distribution<double> normal(0.0, options.noise);
    video.features = FeatureSequence{Matrix(n, options.dim), static_cast<float>(options.frame_rate)};
    for (std::size_t s = 0; s < options.num_segments; ++s) {
        Vec base = gaussian_vector(rng, options.dim);
        normalise(base);
        if (s == options.num_segments / 2) video.query = to_query(base);
        for (std::size_t i = video.segments[s].start; i < video.segments[s].end; ++i) {
            auto dst = video.features.data.row(i);
            for (std::size_t c = 0; c < options.dim; ++c) {
                dst[c] = static_cast<float>(base[c] + normal(rng) / std::sqrt(static_cast<double>(options.dim)));
            }
        }
    }
    return video;
}

} // namespace tempground::synthetic
