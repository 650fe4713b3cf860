#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tradenet/criticality.hpp"
#include "tradenet/network.hpp"
#include "tradenet/robustness.hpp"
#include "tradenet/stats.hpp"

namespace tradenet {

using ordered_json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Canonical edge-list serialization: the ingest trade CSV with one row per
/// edge in (exporter, importer) order. Re-ingesting reproduces the network
/// bit for bit.
void write_network_csv(std::ostream& out, const Network& net);

struct EfficiencyRow {
    int year = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double volume = 0.0;
    double unweighted = 0.0;
    double weighted = 0.0;
    double normalized = 0.0;
};

void efficiency_csv(std::ostream& out, std::span<const EfficiencyRow> rows);
ordered_json efficiency_json(std::span<const EfficiencyRow> rows);

/// Full table dump in `key,criticality,rank` layout.
void criticality_table_csv(std::ostream& out, const CriticalityTable& table);
ordered_json criticality_table_json(const CriticalityTable& table);

/// Top-k rank table in `rank,key,criticality` layout.
void rank_table_csv(std::ostream& out, std::span<const CriticalityEntry> entries);
ordered_json rank_table_json(std::span<const CriticalityEntry> entries);

/// Rank-by-year pivot: one column per year, cells hold the ranked keys.
void rank_pivot_csv(std::ostream& out, const std::vector<int>& years,
                    const std::map<int, std::vector<CriticalityEntry>>& per_year,
                    std::size_t top_k);
ordered_json rank_pivot_json(const std::vector<int>& years,
                             const std::map<int, std::vector<CriticalityEntry>>& per_year,
                             std::size_t top_k);

/// Group sums ordered by descending criticality, then name.
void group_sums_csv(std::ostream& out, const std::map<std::string, double>& sums);
ordered_json group_sums_json(const std::map<std::string, double>& sums);

void robustness_csv(std::ostream& out, const RobustnessCurve& curve);
ordered_json robustness_json(const RobustnessCurve& curve);

struct CorrelationOutputRow {
    int year = 0;
    std::string mode;
    std::string direction;
    std::size_t n = 0;
    std::optional<double> pearson_r;
    std::optional<double> pearson_p;
    std::optional<double> spearman_r;
    std::optional<double> spearman_p;
    std::string note;  // e.g. "zero-variance" when coefficients are undefined
};

CorrelationOutputRow to_output_row(const CorrelationReport& report);
void correlation_csv(std::ostream& out, std::span<const CorrelationOutputRow> rows);
ordered_json correlation_json(std::span<const CorrelationOutputRow> rows);

void volumes_csv(std::ostream& out, const VolumeTimeSeries& series);
ordered_json volumes_json(const VolumeTimeSeries& series);

}  // namespace tradenet
