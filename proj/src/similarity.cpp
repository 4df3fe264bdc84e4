#include "tempground/similarity.hpp"

#include "tempground/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tempground {

namespace {

// Brent stops once lambda is known to about 2^-19 ~ 2e-6.
constexpr int lambda_search_bits = 20;

void check_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidInput("similarity series contains non-finite values");
    }
}

template <typename Transform>
double population_variance(std::span<const double> x, Transform transform) {
    double mean = 0.0;
    for (double v : x) mean += transform(v);
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) {
        const double diff = transform(v) - mean;
        var += diff * diff;
    }
    return var / static_cast<double>(x.size());
}

template <typename LogLikelihood>
double maximise_lambda(LogLikelihood log_likelihood) {
    auto negated = [&](double lambda) {
        const double ll = log_likelihood(lambda);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
    };
    return boost::math::tools::brent_find_minima(negated, lambda_search_min, lambda_search_max,
                                                 lambda_search_bits).first;
}

bool all_equal(std::span<const double> values) {
    return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

AdjustedSimilaritySeries degenerate_result(const SimilaritySeries& s, Normalization method) {
    AdjustedSimilaritySeries out;
    out.values = s.values;
    out.method = method;
    out.degenerate = true;
    return out;
}

} // namespace

SimilaritySeries raw_similarities(const FeatureSequence& features, const QueryEmbedding& query) {
    if (query.dim() != features.dim()) {
        throw InvalidInput("query dimension " + std::to_string(query.dim()) +
                           " does not match feature dimension " + std::to_string(features.dim()));
    }
    for (float v : query.values) {
        if (!std::isfinite(v)) throw InvalidInput("query embedding contains non-finite values");
    }

    SimilaritySeries s;
    s.values.resize(features.num_frames());
    for (std::size_t i = 0; i < features.num_frames(); ++i) {
        const auto row = features.data.row(i);
        double sum = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) sum += static_cast<double>(row[c]) * query.values[c];
        s.values[i] = sum;
    }
    check_finite(s.values);
    return s;
}

double box_cox(double x, double lambda) {
    if (lambda == 0.0) return std::log(x);
    return std::expm1(lambda * std::log(x)) / lambda;
}

double yeo_johnson(double x, double lambda) {
    if (x >= 0.0) {
        if (lambda == 0.0) return std::log1p(x);
        return std::expm1(lambda * std::log1p(x)) / lambda;
    }
    if (lambda == 2.0) return -std::log1p(-x);
    return -std::expm1((2.0 - lambda) * std::log1p(-x)) / (2.0 - lambda);
}

double box_cox_log_likelihood(std::span<const double> x, double lambda) {
    double log_sum = 0.0;
    for (double v : x) log_sum += std::log(v);
    const double var = population_variance(x, [lambda](double v) { return box_cox(v, lambda); });
    if (!(var > 0.0)) return -std::numeric_limits<double>::infinity();
    return -0.5 * static_cast<double>(x.size()) * std::log(var) + (lambda - 1.0) * log_sum;
}

double yeo_johnson_log_likelihood(std::span<const double> x, double lambda) {
    double log_sum = 0.0;
    for (double v : x) log_sum += std::copysign(std::log1p(std::abs(v)), v);
    const double var = population_variance(x, [lambda](double v) { return yeo_johnson(v, lambda); });
    if (!(var > 0.0)) return -std::numeric_limits<double>::infinity();
    return -0.5 * static_cast<double>(x.size()) * std::log(var) + (lambda - 1.0) * log_sum;
}

double fit_box_cox_lambda(std::span<const double> x) {
    if (x.size() < 2) throw InvalidInput("lambda fitting needs at least two values");
    for (double v : x) {
        if (!(v > 0.0)) throw InvalidInput("Box-Cox requires strictly positive values");
    }
    return maximise_lambda([x](double lambda) { return box_cox_log_likelihood(x, lambda); });
}

double fit_yeo_johnson_lambda(std::span<const double> x) {
    if (x.size() < 2) throw InvalidInput("lambda fitting needs at least two values");
    return maximise_lambda([x](double lambda) { return yeo_johnson_log_likelihood(x, lambda); });
}

AdjustedSimilaritySeries box_cox_adjust(const SimilaritySeries& s, const PipelineConfig& config) {
    if (s.values.empty()) throw InvalidInput("empty similarity series");
    check_finite(s.values);

    const bool fit = config.lambda_mode == LambdaMode::auto_mle;
    if (fit && (s.values.size() < 2 || all_equal(s.values))) {
        return degenerate_result(s, Normalization::box_cox);
    }

    AdjustedSimilaritySeries out;
    out.method = Normalization::box_cox;
    const double lowest = *std::min_element(s.values.begin(), s.values.end());
    out.shift = lowest <= 0.0 ? box_cox_shift_epsilon - lowest : 0.0;

    std::vector<double> x(s.values.size());
    std::transform(s.values.begin(), s.values.end(), x.begin(), [&](double v) { return v + out.shift; });

    const double lambda = fit ? fit_box_cox_lambda(x) : config.fixed_lambda;
    out.lambda = lambda;
    out.values.resize(x.size());
    std::transform(x.begin(), x.end(), out.values.begin(), [lambda](double v) { return box_cox(v, lambda); });
    check_finite(out.values);
    return out;
}

AdjustedSimilaritySeries yeo_johnson_adjust(const SimilaritySeries& s, const PipelineConfig& config) {
    if (s.values.empty()) throw InvalidInput("empty similarity series");
    check_finite(s.values);

    const bool fit = config.lambda_mode == LambdaMode::auto_mle;
    if (fit && (s.values.size() < 2 || all_equal(s.values))) {
        return degenerate_result(s, Normalization::yeo_johnson);
    }

    AdjustedSimilaritySeries out;
    out.method = Normalization::yeo_johnson;
    const double lambda = fit ? fit_yeo_johnson_lambda(s.values) : config.fixed_lambda;
    out.lambda = lambda;
    out.values.resize(s.values.size());
    std::transform(s.values.begin(), s.values.end(), out.values.begin(),
                   [lambda](double v) { return yeo_johnson(v, lambda); });
    check_finite(out.values);
    return out;
}

AdjustedSimilaritySeries adjust_similarities(const SimilaritySeries& s, const PipelineConfig& config) {
    switch (config.normalization) {
    case Normalization::box_cox: return box_cox_adjust(s, config);
    case Normalization::yeo_johnson: return yeo_johnson_adjust(s, config);
    case Normalization::none: break;
    }
    if (s.values.empty()) throw InvalidInput("empty similarity series");
    check_finite(s.values);
    AdjustedSimilaritySeries out;
    out.values = s.values;
    out.method = Normalization::none;
    return out;
}

double skewness(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 3) throw InvalidInput("skewness needs at least three values");
    check_finite(series);

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : series) {
        const double diff = v - mean;
        m2 += diff * diff;
        m3 += diff * diff * diff;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    if (!(m2 > 0.0)) throw InvalidInput("skewness is undefined for a constant series");

    const double g1 = m3 / std::pow(m2, 1.5);
    const auto nd = static_cast<double>(n);
    return g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
}

} // namespace tempground
