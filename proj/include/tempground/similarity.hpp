#pragma once

#include "tempground/config.hpp"
#include "tempground/io.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tempground {

/// Raw per-frame query similarities s_i = f_i . q.
struct SimilaritySeries {
    std::vector<double> values;
};

struct AdjustedSimilaritySeries {
    std::vector<double> values;
    Normalization method = Normalization::none;
    std::optional<double> lambda;   // unset for `none` and for the degenerate fallback
    double shift = 0.0;             // added to every raw value before the transform
    bool degenerate = false;        // lambda could not be fitted; values are the raw series
};

inline constexpr double box_cox_shift_epsilon = 1e-6;
inline constexpr double lambda_search_min = -5.0;
inline constexpr double lambda_search_max = 5.0;

/// Dot products in 64-bit accumulation; uses single-frame (unpooled) features.
SimilaritySeries raw_similarities(const FeatureSequence& features, const QueryEmbedding& query);

/// (x^lambda - 1) / lambda, or ln x at lambda = 0. Requires x > 0.
double box_cox(double x, double lambda);
double yeo_johnson(double x, double lambda);

/// Profile log-likelihoods maximised when fitting lambda:
///   -N/2 * ln(var(y)) + (lambda - 1) * sum(J(x)),
/// with J = ln x for Box-Cox and sign(x) ln(|x| + 1) for Yeo-Johnson, var the
/// population variance of the transformed values.
double box_cox_log_likelihood(std::span<const double> x, double lambda);
double yeo_johnson_log_likelihood(std::span<const double> x, double lambda);

/// Maximum-likelihood lambda on [-5, 5] (Brent search).
double fit_box_cox_lambda(std::span<const double> x);
double fit_yeo_johnson_lambda(std::span<const double> x);

/// Box-Cox adjustment. Series with a non-positive minimum are first shifted by
/// (1e-6 - min) so every value is strictly positive.
AdjustedSimilaritySeries box_cox_adjust(const SimilaritySeries& s, const PipelineConfig& config);
AdjustedSimilaritySeries yeo_johnson_adjust(const SimilaritySeries& s, const PipelineConfig& config);

/// Dispatches on config.normalization.
AdjustedSimilaritySeries adjust_similarities(const SimilaritySeries& s, const PipelineConfig& config);

/// Adjusted Fisher-Pearson sample skewness G1. Needs N >= 3 and nonzero variance.
double skewness(std::span<const double> series);

} // namespace tempground
