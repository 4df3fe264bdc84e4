#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tempground {

/// Boundary frame indices {0, t_1, ..., t_M, N}, strictly increasing.
struct ChangePointSet {
    std::vector<std::size_t> points;

    std::size_t interior_count() const noexcept { return points.size() < 2 ? 0 : points.size() - 2; }
    std::size_t num_frames() const noexcept { return points.empty() ? 0 : points.back(); }
};

/// Half-open frame interval [start, end).
struct Proposal {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    friend bool operator==(const Proposal&, const Proposal&) = default;
};

using ProposalSet = std::vector<Proposal>;

/// A boundary is placed at i whenever labels[i - 1] != labels[i]; 0 and N
/// are always included.
ChangePointSet extract_change_points(std::span<const int> labels);

/// Every pair (t_a, t_b) with a < b, ordered by a then b. Yields
/// (M + 1)(M + 2) / 2 proposals.
ProposalSet enumerate_proposals(const ChangePointSet& change_points);

} // namespace tempground
