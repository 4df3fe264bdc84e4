#pragma once

#include "tempground/clustering.hpp"
#include "tempground/config.hpp"
#include "tempground/io.hpp"
#include "tempground/proposals.hpp"
#include "tempground/selection.hpp"
#include "tempground/similarity.hpp"

#include <span>
#include <vector>

namespace tempground {

struct GroundingOptions {
    bool keep_ranking = false;   // fill GroundingResult::ranked (winning query only)
};

/// Everything produced while grounding one video; useful for debugging and
/// for the evaluation diagnostics.
struct GroundingRun {
    ClusterAssignment clustering;
    ChangePointSet change_points;
    ProposalSet proposals;
    std::vector<AdjustedSimilaritySeries> adjusted;  // one per query
    GroundingResult result;
};

/// pool -> cluster -> change points -> proposals; then per query: raw
/// similarity on the unpooled features -> adjustment -> scoring. The
/// proposal set does not depend on the query, so it is built once.
GroundingRun ground(const FeatureSequence& features, std::span<const QueryEmbedding> queries,
                    const PipelineConfig& config, const GroundingOptions& options = {});

GroundingRun ground(const FeatureSequence& features, const QueryEmbedding& query,
                    const PipelineConfig& config, const GroundingOptions& options = {});

} // namespace tempground
