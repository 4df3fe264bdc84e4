#include "tempground/errors.hpp"
#include "tempground/proposals.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace tempground;

namespace {

ChangePointSet from_labels(std::vector<int> labels) { return extract_change_points(labels); }

} // namespace

TEST_CASE("change points at label transitions") {
    CHECK(from_labels({0, 0, 1, 1}).points == std::vector<std::size_t>{0, 2, 4});
    CHECK(from_labels({0, 0, 1, 1}).interior_count() == 1);
    CHECK(from_labels({0, 1, 0, 1}).points == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(from_labels({0, 1, 0, 1}).interior_count() == 3);
    for (std::size_t n : {1u, 2u, 17u}) {
        const auto t = extract_change_points(std::vector<int>(n, 5));
        CHECK(t.points == std::vector<std::size_t>{0, n});
        CHECK(t.interior_count() == 0);
    }
    CHECK_THROWS_AS(extract_change_points(std::vector<int>{}), InvalidInput);
}

TEST_CASE("relabelling clusters leaves change points unchanged") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> labels(1 + rng() % 60);
        for (int& l : labels) l = static_cast<int>(rng() % 4);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> relabelled = labels;
        for (int& l : relabelled) l = perm[static_cast<std::size_t>(l)];
        CHECK(extract_change_points(labels).points == extract_change_points(relabelled).points);
    }
}

TEST_CASE("proposal enumeration examples") {
    const auto single = enumerate_proposals(ChangePointSet{{0, 9}});
    REQUIRE(single.size() == 1);
    CHECK(single[0] == Proposal{0, 9});

    const auto three = enumerate_proposals(ChangePointSet{{0, 2, 4}});
    CHECK(three == ProposalSet{{0, 2}, {0, 4}, {2, 4}});

    CHECK(enumerate_proposals(ChangePointSet{{0, 1, 2, 3, 4}}).size() == 10);
}

TEST_CASE("count and content match exhaustive pair generation") {
    std::mt19937_64 rng(10);
    for (std::size_t m = 0; m <= 20; ++m) {
        std::vector<std::size_t> t{0};
        for (std::size_t i = 0; i < m; ++i) t.push_back(t.back() + 1 + rng() % 5);
        t.push_back(t.back() + 1 + rng() % 5);
        const auto proposals = enumerate_proposals(ChangePointSet{t});
        CHECK(proposals.size() == (m + 1) * (m + 2) / 2);
        std::set<std::pair<std::size_t, std::size_t>> got;
        for (const auto& p : proposals) got.insert({p.start, p.end});
        CHECK(got == tgtest::oracle::exhaustive_pairs(t));
    }
}

TEST_CASE("consecutive proposals tile the video") {
    const ChangePointSet t{{0, 3, 4, 10, 12}};
    const auto proposals = enumerate_proposals(t);
    std::vector<int> cover(12, 0);
    for (const auto& p : proposals) {
        const auto it = std::find(t.points.begin(), t.points.end(), p.start);
        if (*(it + 1) != p.end) continue;
        for (std::size_t i = p.start; i < p.end; ++i) ++cover[i];
    }
    CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
}

TEST_CASE("malformed change point sets are rejected") {
    CHECK_THROWS_AS(enumerate_proposals(ChangePointSet{{}}), InvalidInput);
    CHECK_THROWS_AS(enumerate_proposals(ChangePointSet{{0}}), InvalidInput);
    CHECK_THROWS_AS(enumerate_proposals(ChangePointSet{{1, 4}}), InvalidInput);
    CHECK_THROWS_AS(enumerate_proposals(ChangePointSet{{0, 3, 3, 5}}), InvalidInput);
}
