#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tradenet/network.hpp"
#include "tradenet/types.hpp"

namespace tradenet {

/// Removal schedule for one attack experiment. Deliberate strategies carry a
/// full ordering of candidates scored once on the intact network; the random
/// strategy leaves the order empty and is driven by a seed instead.
struct AttackPlan {
    Kind kind = Kind::node;
    Strategy strategy = Strategy::criticality;
    Mode mode = Mode::unweighted;  // efficiency used for R (and criticality scores)
    std::vector<std::string> node_order;
    std::vector<std::pair<std::string, std::string>> edge_order;
    std::vector<double> p_grid;
};

struct RobustnessSample {
    double p = 0.0;
    std::size_t removed = 0;  // actual candidate count deleted at this p
    double robustness = 0.0;
    std::optional<double> standard_error;  // present only for sampled estimates
};

struct RobustnessCurve {
    Kind kind = Kind::node;
    Strategy strategy = Strategy::random;
    Mode mode = Mode::unweighted;
    int year = 0;
    std::vector<RobustnessSample> samples;
};

/// p from 0 to 0.5 in steps of 0.02.
std::vector<double> default_p_grid();

/// Number of removals for a fraction: round(p * candidates), half away from zero.
std::size_t removal_count(double p, std::size_t candidates);

/// Builds the removal ordering for a deliberate strategy. `in`/`out` apply to
/// node attacks, `value` to edge attacks; `criticality` and `random` to both.
AttackPlan attack_order(const Network& net, Kind kind, Strategy strategy, Mode mode,
                        std::vector<double> p_grid = default_p_grid(), unsigned threads = 1);

/// Efficiency ratio E(attacked)/E(intact) after cumulatively removing the
/// ordered prefix at each p. Node attacks take incident edges with them.
RobustnessCurve robustness_curve(const Network& net, const AttackPlan& plan, unsigned threads = 1);

enum class SamplingPolicy {
    enumerate_when_feasible,  // exact mean over all subsets when their count fits the budget
    always_sample,
};

/// Random-attack robustness: mean R over uniform removal subsets per p.
/// Exhaustive enumeration reports no standard error; sampling reports the
/// standard error of the mean. Identical (seed, budget) give identical
/// curves at any thread count.
RobustnessCurve random_robustness(const Network& net, Kind kind, Mode mode,
                                  std::vector<double> p_grid, std::size_t sample_budget,
                                  std::uint64_t seed, unsigned threads = 1,
                                  SamplingPolicy policy = SamplingPolicy::enumerate_when_feasible);

}  // namespace tradenet
