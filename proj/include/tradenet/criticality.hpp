#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tradenet/network.hpp"
#include "tradenet/types.hpp"

namespace tradenet {

/// One scored removal candidate. `target` is empty for node entries.
struct CriticalityEntry {
    std::string source;
    std::string target;
    double criticality = 0.0;
    double tiebreak_volume = 0.0;

    bool is_edge() const { return !target.empty(); }
    std::string key() const { return is_edge() ? source + "->" + target : source; }
};

/// Relative efficiency loss per removed node or edge, already in rank order:
/// descending criticality, then descending volume (import+export for nodes,
/// edge volume for edges), then lexicographic code. Node criticality can be
/// negative because removal shrinks the normalizing pair count; edge
/// criticality stays in [0, 1] for unweighted and weighted modes.
struct CriticalityTable {
    Mode mode = Mode::unweighted;
    Kind kind = Kind::node;
    int year = 0;
    double baseline_efficiency = 0.0;
    std::vector<CriticalityEntry> ranked;
    std::vector<std::string> node_codes;  // node set of the analyzed network
};

/// Sort order shared by rankings and deliberate attack orderings.
bool ranks_before(const CriticalityEntry& a, const CriticalityEntry& b);

CriticalityTable node_criticality(const Network& net, Mode mode, unsigned threads = 1);
CriticalityTable edge_criticality(const Network& net, Mode mode, unsigned threads = 1);

/// First min(k, size) entries of the table's rank order.
std::vector<CriticalityEntry> rank_top(const CriticalityTable& table, std::size_t k);

/// Sums node criticality per group label; nodes without a mapping are
/// accumulated under "unmapped".
std::map<std::string, double> group_criticality(const CriticalityTable& table,
                                                const GroupMap& groups);

/// Highest-criticality edges touching `economy` (either direction), in rank
/// order. Throws UnknownNodeError when the economy is not in the network.
std::vector<CriticalityEntry> economy_top_relationships(const CriticalityTable& table,
                                                        std::string_view economy, std::size_t k);

}  // namespace tradenet
