#pragma once

#include "tempground/proposals.hpp"
#include "tempground/similarity.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tempground {

struct ScoredProposal {
    Proposal proposal;
    double score = 0.0;          // inside_mean - outside_mean
    double inside_mean = 0.0;
    double outside_mean = 0.0;   // 0 when the proposal spans the whole video
};

struct GroundingResult {
    Proposal interval;           // frames, half-open
    double start_seconds = 0.0;
    double end_seconds = 0.0;
    double score = 0.0;
    std::size_t query_index = 0; // which query won (multi-query selection)
    std::optional<double> lambda;
    double shift = 0.0;
    std::vector<ScoredProposal> ranked;  // filled only on request
};

/// Mean adjusted similarity inside each proposal minus the mean outside it,
/// via one prefix-sum pass.
std::vector<ScoredProposal> score_proposals(std::span<const double> adjusted, const ProposalSet& proposals);

/// Strict ordering used for selection: higher score, then longer, then earlier.
bool ranks_before(const ScoredProposal& a, const ScoredProposal& b) noexcept;

/// Copy of `scored` sorted best-first.
std::vector<ScoredProposal> rank_proposals(std::span<const ScoredProposal> scored);

/// Highest-ranked proposal. Seconds use [start / fps, end / fps).
GroundingResult select_best(std::span<const ScoredProposal> scored, double frame_rate = 1.0);

struct QueryProposals {
    ProposalSet proposals;
    AdjustedSimilaritySeries series;
};

/// Scores each query's proposals against that query's adjusted series and
/// returns the global winner. Equal candidates go to the lower query index.
GroundingResult select_best_multi_query(std::span<const QueryProposals> per_query, double frame_rate = 1.0);

} // namespace tempground
