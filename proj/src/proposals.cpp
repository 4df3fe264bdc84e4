#include "tempground/proposals.hpp"

#include "tempground/errors.hpp"

namespace tempground {

ChangePointSet extract_change_points(std::span<const int> labels) {
    if (labels.empty()) throw InvalidInput("cannot extract change points from an empty label sequence");
    ChangePointSet set;
    set.points.push_back(0);
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (labels[i] != labels[i - 1]) set.points.push_back(i);
    }
    set.points.push_back(labels.size());
    return set;
}

ProposalSet enumerate_proposals(const ChangePointSet& change_points) {
    const auto& t = change_points.points;
    if (t.size() < 2 || t.front() != 0) throw InvalidInput("change point set must start at 0 and contain N");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= t[i - 1]) throw InvalidInput("change points must be strictly increasing");
    }

    ProposalSet proposals;
    proposals.reserve(t.size() * (t.size() - 1) / 2);
    for (std::size_t a = 0; a + 1 < t.size(); ++a) {
        for (std::size_t b = a + 1; b < t.size(); ++b) proposals.push_back({t[a], t[b]});
    }
    return proposals;
}

} // namespace tempground
