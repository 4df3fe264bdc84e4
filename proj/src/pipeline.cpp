#include "tempground/pipeline.hpp"

#include "tempground/errors.hpp"
#include "tempground/pooling.hpp"

namespace tempground {

GroundingRun ground(const FeatureSequence& features, std::span<const QueryEmbedding> queries,
                    const PipelineConfig& config, const GroundingOptions& options) {
    if (queries.empty()) throw InvalidInput("at least one query is required");
    config.validate();
    features.validate();
    for (const auto& q : queries) {
        if (q.dim() != features.dim()) {
            throw InvalidInput("query dimension " + std::to_string(q.dim()) +
                               " does not match feature dimension " + std::to_string(features.dim()));
        }
    }

    GroundingRun run;
    const PooledFeatureSequence pooled = temporal_pool(features, config);
    run.clustering = temporal_coherence_cluster(pooled, config);
    run.change_points = extract_change_points(run.clustering.labels);
    run.proposals = enumerate_proposals(run.change_points);

    std::vector<QueryProposals> per_query;
    per_query.reserve(queries.size());
    for (const auto& q : queries) {
        auto adjusted = adjust_similarities(raw_similarities(features, q), config);
        run.adjusted.push_back(adjusted);
        per_query.push_back({run.proposals, std::move(adjusted)});
    }

    run.result = select_best_multi_query(per_query, features.frame_rate);
    if (options.keep_ranking) {
        run.result.ranked = rank_proposals(
            score_proposals(run.adjusted[run.result.query_index].values, run.proposals));
    }
    return run;
}

GroundingRun ground(const FeatureSequence& features, const QueryEmbedding& query,
                    const PipelineConfig& config, const GroundingOptions& options) {
    return ground(features, std::span<const QueryEmbedding>(&query, 1), config, options);
}

} // namespace tempground
