#include "tradenet/criticality.hpp"

#include <algorithm>
#include <tuple>

#include "tradenet/efficiency.hpp"
#include "tradenet/parallel.hpp"

namespace tradenet {

bool ranks_before(const CriticalityEntry& a, const CriticalityEntry& b) {
    if (a.criticality != b.criticality) {
        return a.criticality > b.criticality;
    }
    if (a.tiebreak_volume != b.tiebreak_volume) {
        return a.tiebreak_volume > b.tiebreak_volume;
    }
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
}

CriticalityTable node_criticality(const Network& net, Mode mode, unsigned threads) {
    const std::size_t n = net.node_count();
    if (n < 3) {
        throw DegenerateBaselineError(
            "node criticality needs at least 3 economies, got " + std::to_string(n));
    }
    const double baseline = efficiency(net, mode);
    if (!(baseline > 0.0)) {
        throw DegenerateBaselineError("baseline efficiency is zero; criticality undefined");
    }

    std::vector<CriticalityEntry> entries(n);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Network reduced = net.remove_node(static_cast<std::uint32_t>(i));
            CriticalityEntry& entry = entries[i];
            entry.source = net.code(static_cast<std::uint32_t>(i));
            entry.criticality = 1.0 - efficiency(reduced, mode) / baseline;
            entry.tiebreak_volume = net.export_volume(static_cast<std::uint32_t>(i)) +
                                    net.import_volume(static_cast<std::uint32_t>(i));
        }
    });
    std::sort(entries.begin(), entries.end(), ranks_before);

    CriticalityTable table;
    table.mode = mode;
    table.kind = Kind::node;
    table.year = net.year();
    table.baseline_efficiency = baseline;
    table.ranked = std::move(entries);
    table.node_codes = net.codes();
    return table;
}

CriticalityTable edge_criticality(const Network& net, Mode mode, unsigned threads) {
    const std::size_t n = net.node_count();
    const std::size_t m = net.edge_count();
    if (n < 2 || m < 1) {
        throw DegenerateBaselineError("edge criticality needs at least 2 economies and 1 edge");
    }

    const bool weighted_lengths = mode != Mode::unweighted;

    // All baseline shortest-path rows are kept so that removing one edge only
    // re-runs the rows whose shortest paths could actually use it: the rows
    // where the edge is tight, i.e. dist[source] + length == dist[target].
    std::vector<std::vector<double>> rows(n);
    std::vector<double> row_sums(n, 0.0);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
        detail::SsspWorkspace ws;
        for (std::size_t s = begin; s < end; ++s) {
            const auto source = static_cast<std::uint32_t>(s);
            if (weighted_lengths) {
                ws.inverse_volume(net, source, rows[s]);
            } else {
                ws.hops(net, source, rows[s]);
            }
            row_sums[s] = detail::row_efficiency_sum(rows[s], source);
        }
    });

    const double pair_count = static_cast<double>(n) * static_cast<double>(n - 1);
    double core_total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        core_total += row_sums[s];
    }
    const double core_baseline = core_total / pair_count;
    const double baseline =
        mode == Mode::normalized ? core_baseline / net.mean_edge_volume() : core_baseline;
    if (!(baseline > 0.0)) {
        throw DegenerateBaselineError("baseline efficiency is zero; criticality undefined");
    }

    std::vector<CriticalityEntry> entries(m);
    parallel_blocks(m, threads, [&](std::size_t begin, std::size_t end) {
        detail::SsspWorkspace ws;
        std::vector<double> dist;
        for (std::size_t k = begin; k < end; ++k) {
            const Edge edge = net.edge_at(k);
            const double length = weighted_lengths ? 1.0 / edge.volume : 1.0;
            double reduced_total = 0.0;
            for (std::uint32_t s = 0; s < n; ++s) {
                const double to_source = rows[s][edge.source];
                if (to_source < kUnreachable && to_source + length == rows[s][edge.target]) {
                    if (weighted_lengths) {
                        ws.inverse_volume(net, s, dist, k);
                    } else {
                        ws.hops(net, s, dist, k);
                    }
                    reduced_total += detail::row_efficiency_sum(dist, s);
                } else {
                    reduced_total += row_sums[s];
                }
            }
            double reduced = reduced_total / pair_count;
            if (mode == Mode::normalized) {
                if (m == 1) {
                    reduced = 0.0;
                } else {
                    const double reduced_mean =
                        (net.total_volume() - edge.volume) / static_cast<double>(m - 1);
                    reduced = reduced / reduced_mean;
                }
            }
            CriticalityEntry& entry = entries[k];
            entry.source = net.code(edge.source);
            entry.target = net.code(edge.target);
            entry.criticality = 1.0 - reduced / baseline;
            entry.tiebreak_volume = edge.volume;
        }
    });
    std::sort(entries.begin(), entries.end(), ranks_before);

    CriticalityTable table;
    table.mode = mode;
    table.kind = Kind::edge;
    table.year = net.year();
    table.baseline_efficiency = baseline;
    table.ranked = std::move(entries);
    table.node_codes = net.codes();
    return table;
}

std::vector<CriticalityEntry> rank_top(const CriticalityTable& table, std::size_t k) {
    const std::size_t count = std::min(k, table.ranked.size());
    return {table.ranked.begin(), table.ranked.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::map<std::string, double> group_criticality(const CriticalityTable& table,
                                                const GroupMap& groups) {
    if (table.kind != Kind::node) {
        throw UsageError("group criticality is defined for node tables only");
    }
    std::map<std::string, double> sums;
    for (const CriticalityEntry& entry : table.ranked) {
        const std::string* label = groups.find(entry.source);
        sums[label != nullptr ? *label : "unmapped"] += entry.criticality;
    }
    return sums;
}

std::vector<CriticalityEntry> economy_top_relationships(const CriticalityTable& table,
                                                        std::string_view economy, std::size_t k) {
    if (table.kind != Kind::edge) {
        throw UsageError("top relationships are defined for edge tables only");
    }
    if (!std::binary_search(table.node_codes.begin(), table.node_codes.end(), economy)) {
        throw UnknownNodeError(std::string(economy));
    }
    std::vector<CriticalityEntry> result;
    if (k == 0) {
        return result;
    }
    for (const CriticalityEntry& entry : table.ranked) {
        if (entry.source == economy || entry.target == economy) {
            result.push_back(entry);
            if (result.size() == k) {
                break;
            }
        }
    }
    return result;
}

}  // namespace tradenet
