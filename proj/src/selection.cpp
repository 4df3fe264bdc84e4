#include "tempground/selection.hpp"

#include "tempground/errors.hpp"

#include <algorithm>

namespace tempground {

std::vector<ScoredProposal> score_proposals(std::span<const double> adjusted, const ProposalSet& proposals) {
    const std::size_t n = adjusted.size();
    if (n == 0) throw InvalidInput("cannot score proposals against an empty series");

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + adjusted[i];
    const double total = prefix[n];

    std::vector<ScoredProposal> scored;
    scored.reserve(proposals.size());
    for (const auto& p : proposals) {
        if (p.start >= p.end || p.end > n) {
            throw InvalidInput("proposal [" + std::to_string(p.start) + ", " + std::to_string(p.end) +
                               ") out of range for " + std::to_string(n) + " frames");
        }
        const double inside_sum = prefix[p.end] - prefix[p.start];
        const std::size_t inside_count = p.length();
        const std::size_t outside_count = n - inside_count;

        ScoredProposal sp;
        sp.proposal = p;
        sp.inside_mean = inside_sum / static_cast<double>(inside_count);
        sp.outside_mean = outside_count == 0 ? 0.0 : (total - inside_sum) / static_cast<double>(outside_count);
        sp.score = sp.inside_mean - sp.outside_mean;
        scored.push_back(sp);
    }
    return scored;
}

bool ranks_before(const ScoredProposal& a, const ScoredProposal& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    if (a.proposal.length() != b.proposal.length()) return a.proposal.length() > b.proposal.length();
    return a.proposal.start < b.proposal.start;
}

std::vector<ScoredProposal> rank_proposals(std::span<const ScoredProposal> scored) {
    std::vector<ScoredProposal> ranked(scored.begin(), scored.end());
    std::stable_sort(ranked.begin(), ranked.end(), ranks_before);
    return ranked;
}

GroundingResult select_best(std::span<const ScoredProposal> scored, double frame_rate) {
    if (scored.empty()) throw InvalidInput("no proposals to select from");
    if (!(frame_rate > 0.0)) throw InvalidInput("invalid frame rate");

    const ScoredProposal* best = &scored.front();
    for (const auto& sp : scored) {
        if (ranks_before(sp, *best)) best = &sp;
    }

    GroundingResult result;
    result.interval = best->proposal;
    result.score = best->score;
    result.start_seconds = static_cast<double>(best->proposal.start) / frame_rate;
    result.end_seconds = static_cast<double>(best->proposal.end) / frame_rate;
    return result;
}

GroundingResult select_best_multi_query(std::span<const QueryProposals> per_query, double frame_rate) {
    if (per_query.empty()) throw InvalidInput("multi-query selection needs at least one query");
    const std::size_t n = per_query.front().series.values.size();
    for (const auto& q : per_query) {
        if (q.series.values.size() != n) throw InvalidInput("all queries must cover the same number of frames");
    }

    std::optional<GroundingResult> best;
    ScoredProposal best_scored;
    for (std::size_t qi = 0; qi < per_query.size(); ++qi) {
        const auto scored = score_proposals(per_query[qi].series.values, per_query[qi].proposals);
        GroundingResult candidate = select_best(scored, frame_rate);
        const ScoredProposal candidate_scored{candidate.interval, candidate.score, 0.0, 0.0};
        if (!best || ranks_before(candidate_scored, best_scored)) {
            candidate.query_index = qi;
            candidate.lambda = per_query[qi].series.lambda;
            candidate.shift = per_query[qi].series.shift;
            best = std::move(candidate);
            best_scored = candidate_scored;
        }
    }
    return *best;
}

} // namespace tempground
