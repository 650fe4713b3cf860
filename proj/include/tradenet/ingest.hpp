#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tradenet/network.hpp"
#include "tradenet/types.hpp"

namespace tradenet {

struct ParseIssue {
    std::size_t line;
    std::string message;
};

struct ParseResult {
    std::vector<TradeRecord> records;
    std::vector<ParseIssue> skipped;  // populated only in lenient mode
};

/// Reads trade CSV (`year,exporter,importer,volume`, header optional).
/// Strict mode throws MalformedRowError on the first bad row; lenient mode
/// collects bad rows in `skipped` and keeps going.
ParseResult parse_trade_records(std::istream& in, bool lenient = false);

struct BuildReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged = 0;
};

/// Groups records by year into one Network each. Duplicate directed pairs
/// are summed, self-loops dropped (and counted in `report`). Throws
/// EmptyInputError when nothing survives cleaning.
std::map<int, Network> build_yearly_networks(std::span<const TradeRecord> records,
                                             BuildReport* report = nullptr);

/// Reads group CSV (`economy,group`, header optional).
GroupMap load_group_map(std::istream& in);

}  // namespace tradenet
