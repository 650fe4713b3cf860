#include "tradenet/serialize.hpp"

#include <algorithm>
#include <charconv>

namespace tradenet {

std::string format_double(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_network_csv(std::ostream& out, const Network& net) {
    out << "year,exporter,importer,volume\n";
    for (std::size_t k = 0; k < net.edge_count(); ++k) {
        const Edge e = net.edge_at(k);
        out << net.year() << ',' << net.code(e.source) << ',' << net.code(e.target) << ','
            << format_double(e.volume) << '\n';
    }
}

void efficiency_csv(std::ostream& out, std::span<const EfficiencyRow> rows) {
    out << "year,N,N_e,V,E_A,E_W,E_Wbar\n";
    for (const EfficiencyRow& row : rows) {
        out << row.year << ',' << row.nodes << ',' << row.edges << ',' << format_double(row.volume)
            << ',' << format_double(row.unweighted) << ',' << format_double(row.weighted) << ','
            << format_double(row.normalized) << '\n';
    }
}

ordered_json efficiency_json(std::span<const EfficiencyRow> rows) {
    ordered_json result = ordered_json::array();
    for (const EfficiencyRow& row : rows) {
        result.push_back({{"year", row.year},
                          {"N", row.nodes},
                          {"N_e", row.edges},
                          {"V", row.volume},
                          {"E_A", row.unweighted},
                          {"E_W", row.weighted},
                          {"E_Wbar", row.normalized}});
    }
    return result;
}

void criticality_table_csv(std::ostream& out, const CriticalityTable& table) {
    out << "key,criticality,rank\n";
    std::size_t rank = 1;
    for (const CriticalityEntry& entry : table.ranked) {
        out << entry.key() << ',' << format_double(entry.criticality) << ',' << rank++ << '\n';
    }
}

ordered_json criticality_table_json(const CriticalityTable& table) {
    ordered_json result = ordered_json::array();
    std::size_t rank = 1;
    for (const CriticalityEntry& entry : table.ranked) {
        result.push_back(
            {{"key", entry.key()}, {"criticality", entry.criticality}, {"rank", rank++}});
    }
    return result;
}

void rank_table_csv(std::ostream& out, std::span<const CriticalityEntry> entries) {
    out << "rank,key,criticality\n";
    std::size_t rank = 1;
    for (const CriticalityEntry& entry : entries) {
        out << rank++ << ',' << entry.key() << ',' << format_double(entry.criticality) << '\n';
    }
}

ordered_json rank_table_json(std::span<const CriticalityEntry> entries) {
    ordered_json result = ordered_json::array();
    std::size_t rank = 1;
    for (const CriticalityEntry& entry : entries) {
        result.push_back(
            {{"rank", rank++}, {"key", entry.key()}, {"criticality", entry.criticality}});
    }
    return result;
}

void rank_pivot_csv(std::ostream& out, const std::vector<int>& years,
                    const std::map<int, std::vector<CriticalityEntry>>& per_year,
                    std::size_t top_k) {
    out << "rank";
    for (const int year : years) {
        out << ',' << year;
    }
    out << '\n';
    for (std::size_t rank = 0; rank < top_k; ++rank) {
        out << rank + 1;
        for (const int year : years) {
            out << ',';
            const auto it = per_year.find(year);
            if (it != per_year.end() && rank < it->second.size()) {
                out << it->second[rank].key();
            }
        }
        out << '\n';
    }
}

ordered_json rank_pivot_json(const std::vector<int>& years,
                             const std::map<int, std::vector<CriticalityEntry>>& per_year,
                             std::size_t top_k) {
    ordered_json result = ordered_json::array();
    for (std::size_t rank = 0; rank < top_k; ++rank) {
        ordered_json row;
        row["rank"] = rank + 1;
        for (const int year : years) {
            const auto it = per_year.find(year);
            if (it != per_year.end() && rank < it->second.size()) {
                row[std::to_string(year)] = it->second[rank].key();
            } else {
                row[std::to_string(year)] = nullptr;
            }
        }
        result.push_back(std::move(row));
    }
    return result;
}

namespace {

std::vector<std::pair<std::string, double>> ordered_groups(
    const std::map<std::string, double>& sums) {
    std::vector<std::pair<std::string, double>> ordered(sums.begin(), sums.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    return ordered;
}

}  // namespace

void group_sums_csv(std::ostream& out, const std::map<std::string, double>& sums) {
    out << "group,criticality\n";
    for (const auto& [group, value] : ordered_groups(sums)) {
        out << group << ',' << format_double(value) << '\n';
    }
}

ordered_json group_sums_json(const std::map<std::string, double>& sums) {
    ordered_json result = ordered_json::array();
    for (const auto& [group, value] : ordered_groups(sums)) {
        result.push_back({{"group", group}, {"criticality", value}});
    }
    return result;
}

void robustness_csv(std::ostream& out, const RobustnessCurve& curve) {
    out << "p,n_removed,R,stderr\n";
    for (const RobustnessSample& sample : curve.samples) {
        out << format_double(sample.p) << ',' << sample.removed << ','
            << format_double(sample.robustness) << ',';
        if (sample.standard_error) {
            out << format_double(*sample.standard_error);
        }
        out << '\n';
    }
}

ordered_json robustness_json(const RobustnessCurve& curve) {
    ordered_json result = ordered_json::array();
    for (const RobustnessSample& sample : curve.samples) {
        ordered_json row = {{"p", sample.p},
                            {"n_removed", sample.removed},
                            {"R", sample.robustness},
                            {"stderr", nullptr}};
        if (sample.standard_error) {
            row["stderr"] = *sample.standard_error;
        }
        result.push_back(std::move(row));
    }
    return result;
}

CorrelationOutputRow to_output_row(const CorrelationReport& report) {
    CorrelationOutputRow row;
    row.year = report.year;
    row.mode = to_string(report.mode);
    row.direction = to_string(report.direction);
    row.n = report.n;
    row.pearson_r = report.pearson_r;
    row.pearson_p = report.pearson_p;
    row.spearman_r = report.spearman_r;
    row.spearman_p = report.spearman_p;
    return row;
}

void correlation_csv(std::ostream& out, std::span<const CorrelationOutputRow> rows) {
    out << "year,mode,direction,n,pearson,pearson_p,spearman,spearman_p,note\n";
    auto cell = [&out](const std::optional<double>& value) {
        out << ',';
        if (value) {
            out << format_double(*value);
        }
    };
    for (const CorrelationOutputRow& row : rows) {
        out << row.year << ',' << row.mode << ',' << row.direction << ',' << row.n;
        cell(row.pearson_r);
        cell(row.pearson_p);
        cell(row.spearman_r);
        cell(row.spearman_p);
        out << ',' << row.note << '\n';
    }
}

ordered_json correlation_json(std::span<const CorrelationOutputRow> rows) {
    ordered_json result = ordered_json::array();
    auto cell = [](const std::optional<double>& value) {
        return value ? ordered_json(*value) : ordered_json(nullptr);
    };
    for (const CorrelationOutputRow& row : rows) {
        result.push_back({{"year", row.year},
                          {"mode", row.mode},
                          {"direction", row.direction},
                          {"n", row.n},
                          {"pearson", cell(row.pearson_r)},
                          {"pearson_p", cell(row.pearson_p)},
                          {"spearman", cell(row.spearman_r)},
                          {"spearman_p", cell(row.spearman_p)},
                          {"note", row.note}});
    }
    return result;
}

void volumes_csv(std::ostream& out, const VolumeTimeSeries& series) {
    out << "side,rank,economy,year,volume\n";
    auto emit = [&out](const std::vector<VolumeSeries>& side, const char* label) {
        std::size_t rank = 1;
        for (const VolumeSeries& economy : side) {
            for (const auto& [year, volume] : economy.by_year) {
                out << label << ',' << rank << ',' << economy.code << ',' << year << ','
                    << format_double(volume) << '\n';
            }
            ++rank;
        }
    };
    emit(series.importers, "import");
    emit(series.exporters, "export");
}

ordered_json volumes_json(const VolumeTimeSeries& series) {
    ordered_json result = ordered_json::array();
    auto emit = [&result](const std::vector<VolumeSeries>& side, const char* label) {
        std::size_t rank = 1;
        for (const VolumeSeries& economy : side) {
            for (const auto& [year, volume] : economy.by_year) {
                result.push_back({{"side", label},
                                  {"rank", rank},
                                  {"economy", economy.code},
                                  {"year", year},
                                  {"volume", volume}});
            }
            ++rank;
        }
    };
    emit(series.importers, "import");
    emit(series.exporters, "export");
    return result;
}

}  // namespace tradenet
