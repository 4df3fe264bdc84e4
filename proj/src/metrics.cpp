#include "tempground/metrics.hpp"

#include "tempground/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tempground {

double interval_iou(const Interval& pred, const Interval& gt) {
    if (!(pred.start < pred.end) || !(gt.start < gt.end)) throw InvalidInput("degenerate interval");
    const double inter = std::max(0.0, std::min(pred.end, gt.end) - std::max(pred.start, gt.start));
    if (inter == 0.0) return 0.0;
    const double uni = std::max(pred.end, gt.end) - std::min(pred.start, gt.start);
    return inter / uni;
}

EvalSummary evaluate(std::span<const EvalRecord> records, std::span<const double> thresholds) {
    if (records.empty()) throw InvalidInput("cannot evaluate an empty record list");
    for (double m : thresholds) {
        if (!(m > 0.0 && m < 1.0)) throw InvalidInput("IoU thresholds must lie in (0, 1)");
    }

    EvalSummary summary;
    summary.count = records.size();
    summary.ious.reserve(records.size());
    double total = 0.0;
    for (const auto& rec : records) {
        const double iou = interval_iou(rec.prediction, rec.ground_truth);
        summary.ious.push_back(iou);
        total += iou;
    }
    summary.mean_iou = total / static_cast<double>(records.size());

    for (double m : thresholds) {
        const auto hits = std::count_if(summary.ious.begin(), summary.ious.end(), [m](double iou) { return iou > m; });
        summary.recall[m] = static_cast<double>(hits) / static_cast<double>(records.size());
    }
    return summary;
}

AugmentedVideo insert_noise_prefix(const FeatureSequence& seq, const Interval& gt, const NoiseAugmentation& aug) {
    seq.validate();
    if (!(aug.rho_seconds >= 0.0) || !std::isfinite(aug.rho_seconds)) throw InvalidInput("rho must be >= 0");
    const double frames_exact = aug.rho_seconds * seq.frame_rate;
    const double frames_rounded = std::round(frames_exact);
    if (std::abs(frames_exact - frames_rounded) > 1e-6) {
        throw InvalidInput("rho * frame_rate must be a whole number of frames");
    }
    const auto prefix = static_cast<std::size_t>(frames_rounded);
    const std::size_t n = seq.num_frames();
    const std::size_t d = seq.dim();

    Matrix data(prefix + n, d);
    std::mt19937_64 rng(aug.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> row(d);
    for (std::size_t i = 0; i < prefix; ++i) {
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (double& v : row) {
                v = normal(rng);
                norm_sq += v * v;
            }
        } while (norm_sq == 0.0);
        const double inv = 1.0 / std::sqrt(norm_sq);
        auto dst = data.row(i);
        for (std::size_t c = 0; c < d; ++c) dst[c] = static_cast<float>(row[c] * inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(seq.data.row(i).begin(), d, data.row(prefix + i).begin());
    }

    return {FeatureSequence{std::move(data), seq.frame_rate},
            Interval{gt.start + aug.rho_seconds, gt.end + aug.rho_seconds}};
}

std::size_t clusters_per_gt(std::span<const int> labels, const Proposal& gt_frames) {
    if (gt_frames.start >= gt_frames.end) throw InvalidInput("empty ground-truth interval");
    if (gt_frames.end > labels.size()) throw InvalidInput("ground-truth interval exceeds the label sequence");
    std::size_t runs = 1;
    for (std::size_t i = gt_frames.start + 1; i < gt_frames.end; ++i) {
        if (labels[i] != labels[i - 1]) ++runs;
    }
    return runs;
}

Proposal interval_to_frames(const Interval& interval, double frame_rate, std::size_t num_frames) {
    if (!(interval.start < interval.end)) throw InvalidInput("degenerate interval");
    if (num_frames == 0) throw InvalidInput("no frames");
    auto start = static_cast<std::size_t>(std::max(0.0, std::floor(interval.start * frame_rate + 1e-9)));
    auto end = static_cast<std::size_t>(std::max(0.0, std::ceil(interval.end * frame_rate - 1e-9)));
    end = std::min(end, num_frames);
    start = std::min(start, num_frames - 1);
    if (end <= start) end = start + 1;
    return {start, end};
}

} // namespace tempground
