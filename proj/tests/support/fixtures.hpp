#pragma once

#include "tempground/metrics.hpp"

#include <vector>

namespace tgtest {

// Ten hand-checked (prediction, ground truth) pairs. IoUs in order:
//   1, 0.5, 0.3, 0.7, 1/3, 0, 0.6, 0.6, 0.8, 0.8
// Three of them sit exactly on a threshold (0.5, 0.3, 0.7) and must count as
// misses there.
inline std::vector<tempground::EvalRecord> metrics_fixture() {
    using tempground::Interval;
    return {
        {Interval{0, 10}, Interval{0, 10}},
        {Interval{0, 5}, Interval{0, 10}},
        {Interval{0, 3}, Interval{0, 10}},
        {Interval{0, 7}, Interval{0, 10}},
        {Interval{0, 10}, Interval{5, 15}},
        {Interval{20, 30}, Interval{0, 10}},
        {Interval{2, 8}, Interval{0, 10}},
        {Interval{0, 8}, Interval{2, 10}},
        {Interval{1, 9}, Interval{0, 10}},
        {Interval{0, 4}, Interval{0, 5}},
    };
}

// Hand counts with strict IoU > m.
//   > 0.3: 1, .5, .7, 1/3, .6, .6, .8, .8        -> 8/10
//   > 0.5: 1, .7, .6, .6, .8, .8                  -> 6/10
//   > 0.7: 1, .8, .8                              -> 3/10
//   mean: (1 + .5 + .3 + .7 + 1/3 + 0 + .6 + .6 + .8 + .8) / 10 = 16.9 / 30
inline constexpr double fixture_r03 = 0.8;
inline constexpr double fixture_r05 = 0.6;
inline constexpr double fixture_r07 = 0.3;
inline constexpr double fixture_miou = 16.9 / 30.0;

} // namespace tgtest
