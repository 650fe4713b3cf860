#include "tradenet/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "tradenet/criticality.hpp"
#include "tradenet/efficiency.hpp"
#include "tradenet/parallel.hpp"

namespace tradenet {
namespace {

// splitmix64; one independent stream per (seed, p index, sample index) so
// that worker scheduling cannot influence which subsets are drawn.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased bounded draw (rejection on the top band).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t value = next();
        while (value >= limit) {
            value = next();
        }
        return value % bound;
    }
};

std::uint64_t mix_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix64 rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b + 0x632be59bd9b4e019ULL));
    return rng.next();
}

void validate_p_grid(const std::vector<double>& grid) {
    if (grid.empty()) {
        throw UsageError("p grid must contain at least one value");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
            throw UsageError("p grid values must lie in [0, 1]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw UsageError("p grid values must be strictly ascending");
        }
    }
}

void validate_mode(Mode mode) {
    if (mode == Mode::normalized) {
        throw UsageError("robustness is defined for unweighted and weighted modes only");
    }
}

double baseline_or_throw(const Network& net, Mode mode) {
    const double baseline = efficiency(net, mode);
    if (!(baseline > 0.0)) {
        throw DegenerateBaselineError("baseline efficiency is zero; robustness undefined");
    }
    return baseline;
}

// C(n, k), clamped to cap+1 as soon as it exceeds the cap.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > cap) {
            return cap + 1;
        }
    }
    return static_cast<std::size_t>(result);
}

// Robert Floyd's uniform m-subset sampler; emits a sorted index list.
std::vector<std::uint32_t> sample_subset(SplitMix64& rng, std::size_t n, std::size_t m,
                                         std::vector<char>& member) {
    std::vector<std::uint32_t> subset;
    subset.reserve(m);
    std::fill(member.begin(), member.end(), 0);
    for (std::size_t i = n - m; i < n; ++i) {
        const auto t = static_cast<std::uint32_t>(rng.below(i + 1));
        if (member[t]) {
            member[i] = 1;
            subset.push_back(static_cast<std::uint32_t>(i));
        } else {
            member[t] = 1;
            subset.push_back(t);
        }
    }
    std::sort(subset.begin(), subset.end());
    return subset;
}

}  // namespace

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    grid.reserve(26);
    for (int i = 0; i <= 25; ++i) {
        grid.push_back(static_cast<double>(i) / 50.0);
    }
    return grid;
}

std::size_t removal_count(double p, std::size_t candidates) {
    return static_cast<std::size_t>(std::llround(p * static_cast<double>(candidates)));
}

AttackPlan attack_order(const Network& net, Kind kind, Strategy strategy, Mode mode,
                        std::vector<double> p_grid, unsigned threads) {
    validate_p_grid(p_grid);
    validate_mode(mode);
    if (kind == Kind::node && strategy == Strategy::value) {
        throw IncompatibleStrategyError("'value' orders edges, not economies");
    }
    if (kind == Kind::edge &&
        (strategy == Strategy::in_volume || strategy == Strategy::out_volume)) {
        throw IncompatibleStrategyError("'in'/'out' order economies, not edges");
    }

    AttackPlan plan;
    plan.kind = kind;
    plan.strategy = strategy;
    plan.mode = mode;
    plan.p_grid = std::move(p_grid);
    if (strategy == Strategy::random) {
        return plan;
    }

    std::vector<CriticalityEntry> scored;
    if (strategy == Strategy::criticality) {
        const CriticalityTable table = kind == Kind::node ? node_criticality(net, mode, threads)
                                                          : edge_criticality(net, mode, threads);
        scored = table.ranked;
    } else if (kind == Kind::node) {
        scored.resize(net.node_count());
        for (std::uint32_t i = 0; i < net.node_count(); ++i) {
            CriticalityEntry& entry = scored[i];
            entry.source = net.code(i);
            entry.criticality = strategy == Strategy::in_volume ? net.import_volume(i)
                                                                : net.export_volume(i);
            entry.tiebreak_volume = net.import_volume(i) + net.export_volume(i);
        }
        std::sort(scored.begin(), scored.end(), ranks_before);
    } else {  // Strategy::value
        scored.resize(net.edge_count());
        for (std::size_t k = 0; k < net.edge_count(); ++k) {
            const Edge edge = net.edge_at(k);
            CriticalityEntry& entry = scored[k];
            entry.source = net.code(edge.source);
            entry.target = net.code(edge.target);
            entry.criticality = edge.volume;
            entry.tiebreak_volume = edge.volume;
        }
        std::sort(scored.begin(), scored.end(), ranks_before);
    }

    for (CriticalityEntry& entry : scored) {
        if (kind == Kind::node) {
            plan.node_order.push_back(std::move(entry.source));
        } else {
            plan.edge_order.emplace_back(std::move(entry.source), std::move(entry.target));
        }
    }
    return plan;
}

RobustnessCurve robustness_curve(const Network& net, const AttackPlan& plan, unsigned threads) {
    validate_p_grid(plan.p_grid);
    validate_mode(plan.mode);
    if (plan.strategy == Strategy::random) {
        throw IncompatibleStrategyError(
            "random attacks have no fixed order; use random_robustness");
    }
    if (plan.kind == Kind::node && plan.strategy == Strategy::value) {
        throw IncompatibleStrategyError("'value' orders edges, not economies");
    }
    if (plan.kind == Kind::edge &&
        (plan.strategy == Strategy::in_volume || plan.strategy == Strategy::out_volume)) {
        throw IncompatibleStrategyError("'in'/'out' order economies, not edges");
    }

    // Resolve the ordering to indices and require a permutation of all
    // candidates, so every p maps to a well-defined prefix.
    std::vector<std::uint32_t> node_order;
    std::vector<std::size_t> edge_order;
    std::size_t candidates = 0;
    if (plan.kind == Kind::node) {
        candidates = net.node_count();
        if (plan.node_order.size() != candidates) {
            throw UsageError("attack order must list every economy exactly once");
        }
        std::vector<bool> seen(candidates, false);
        for (const std::string& code : plan.node_order) {
            const std::uint32_t i = net.require(code);
            if (seen[i]) {
                throw UsageError("attack order repeats economy " + code);
            }
            seen[i] = true;
            node_order.push_back(i);
        }
    } else {
        candidates = net.edge_count();
        if (plan.edge_order.size() != candidates) {
            throw UsageError("attack order must list every relationship exactly once");
        }
        std::vector<bool> seen(candidates, false);
        for (const auto& [source, target] : plan.edge_order) {
            const std::size_t k = net.require_edge(source, target);
            if (seen[k]) {
                throw UsageError("attack order repeats relationship " + source + "->" + target);
            }
            seen[k] = true;
            edge_order.push_back(k);
        }
    }

    const double baseline = baseline_or_throw(net, plan.mode);

    RobustnessCurve curve;
    curve.kind = plan.kind;
    curve.strategy = plan.strategy;
    curve.mode = plan.mode;
    curve.year = net.year();
    curve.samples.resize(plan.p_grid.size());

    parallel_blocks(plan.p_grid.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t g = begin; g < end; ++g) {
            const double p = plan.p_grid[g];
            const std::size_t removed = removal_count(p, candidates);
            RobustnessSample& sample = curve.samples[g];
            sample.p = p;
            sample.removed = removed;
            if (removed == 0) {
                sample.robustness = 1.0;
                continue;
            }
            std::vector<bool> drop(candidates, false);
            if (plan.kind == Kind::node) {
                for (std::size_t i = 0; i < removed; ++i) {
                    drop[node_order[i]] = true;
                }
                sample.robustness = efficiency(net.without_nodes(drop), plan.mode) / baseline;
            } else {
                for (std::size_t i = 0; i < removed; ++i) {
                    drop[edge_order[i]] = true;
                }
                sample.robustness = efficiency(net.without_edges(drop), plan.mode) / baseline;
            }
        }
    });
    return curve;
}

RobustnessCurve random_robustness(const Network& net, Kind kind, Mode mode,
                                  std::vector<double> p_grid, std::size_t sample_budget,
                                  std::uint64_t seed, unsigned threads, SamplingPolicy policy) {
    validate_p_grid(p_grid);
    validate_mode(mode);
    if (sample_budget < 1) {
        throw UsageError("sample budget must be at least 1");
    }
    const std::size_t candidates = kind == Kind::node ? net.node_count() : net.edge_count();
    const double baseline = baseline_or_throw(net, mode);

    auto evaluate_subset = [&](const std::vector<std::uint32_t>& subset) {
        std::vector<bool> drop(candidates, false);
        for (const std::uint32_t i : subset) {
            drop[i] = true;
        }
        const Network reduced =
            kind == Kind::node ? net.without_nodes(drop) : net.without_edges(drop);
        return efficiency(reduced, mode) / baseline;
    };

    RobustnessCurve curve;
    curve.kind = kind;
    curve.strategy = Strategy::random;
    curve.mode = mode;
    curve.year = net.year();
    curve.samples.reserve(p_grid.size());

    for (std::size_t g = 0; g < p_grid.size(); ++g) {
        const double p = p_grid[g];
        const std::size_t m = removal_count(p, candidates);

        RobustnessSample sample;
        sample.p = p;
        sample.removed = m;

        const std::size_t combinations = binomial_capped(candidates, m, sample_budget);
        const bool enumerate =
            policy == SamplingPolicy::enumerate_when_feasible && combinations <= sample_budget;

        std::vector<std::vector<std::uint32_t>> subsets;
        if (enumerate) {
            // All m-subsets in lexicographic order.
            subsets.reserve(combinations);
            std::vector<std::uint32_t> current(m);
            for (std::size_t i = 0; i < m; ++i) {
                current[i] = static_cast<std::uint32_t>(i);
            }
            while (true) {
                subsets.push_back(current);
                std::size_t i = m;
                while (i > 0 && current[i - 1] == candidates - m + i - 1) {
                    --i;
                }
                if (i == 0) {
                    break;
                }
                ++current[i - 1];
                for (std::size_t j = i; j < m; ++j) {
                    current[j] = current[j - 1] + 1;
                }
            }
        } else {
            subsets.resize(sample_budget);
            parallel_blocks(sample_budget, threads, [&](std::size_t begin, std::size_t end) {
                std::vector<char> member(candidates, 0);
                for (std::size_t k = begin; k < end; ++k) {
                    SplitMix64 rng(mix_stream(seed, g, k));
                    subsets[k] = sample_subset(rng, candidates, m, member);
                }
            });
        }

        std::vector<double> values(subsets.size());
        parallel_blocks(subsets.size(), threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                values[k] = evaluate_subset(subsets[k]);
            }
        });

        double total = 0.0;
        for (const double value : values) {
            total += value;
        }
        const double mean = total / static_cast<double>(values.size());
        sample.robustness = mean;
        if (!enumerate) {
            double squares = 0.0;
            for (const double value : values) {
                squares += (value - mean) * (value - mean);
            }
            const auto b = static_cast<double>(values.size());
            sample.standard_error = values.size() > 1 ? std::sqrt(squares / (b * (b - 1))) : 0.0;
        }
        curve.samples.push_back(std::move(sample));
    }
    return curve;
}

}  // namespace tradenet
