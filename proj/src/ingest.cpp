#include "tradenet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace tradenet {
namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_int(std::string_view text, int& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

bool parse_double(std::string_view text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !text.empty() && std::isfinite(out);
}

bool equals_ignore_case(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

bool is_header(const std::vector<std::string_view>& fields,
               std::initializer_list<std::string_view> names) {
    if (fields.size() != names.size()) {
        return false;
    }
    auto it = names.begin();
    for (const auto& field : fields) {
        if (!equals_ignore_case(field, *it++)) {
            return false;
        }
    }
    return true;
}

}  // namespace

ParseResult parse_trade_records(std::istream& in, bool lenient) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    bool seen_row = false;

    auto fail = [&](const std::string& message) {
        if (lenient) {
            result.skipped.push_back(ParseIssue{line_no, message});
        } else {
            throw MalformedRowError(line_no, message);
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = split_fields(text);
        if (!seen_row && is_header(fields, {"year", "exporter", "importer", "volume"})) {
            seen_row = true;
            continue;
        }
        seen_row = true;
        if (fields.size() != 4) {
            fail("expected 4 columns, got " + std::to_string(fields.size()));
            continue;
        }
        TradeRecord record;
        if (!parse_int(fields[0], record.year)) {
            fail("year is not an integer: '" + std::string(fields[0]) + "'");
            continue;
        }
        if (fields[1].empty() || fields[2].empty()) {
            fail("economy code must be non-empty");
            continue;
        }
        if (!parse_double(fields[3], record.volume)) {
            fail("volume is not a number: '" + std::string(fields[3]) + "'");
            continue;
        }
        if (!(record.volume > 0.0)) {
            fail("volume must be positive, got '" + std::string(fields[3]) + "'");
            continue;
        }
        record.exporter = std::string(fields[1]);
        record.importer = std::string(fields[2]);
        result.records.push_back(std::move(record));
    }
    return result;
}

std::map<int, Network> build_yearly_networks(std::span<const TradeRecord> records,
                                             BuildReport* report) {
    if (records.empty()) {
        throw EmptyInputError("no trade records supplied");
    }

    BuildReport local;
    // Volumes per (exporter, importer) are summed after sorting so that
    // permuting the input records cannot change a single bit of the result.
    std::map<int, std::map<std::pair<std::string, std::string>, std::vector<double>>> grouped;
    for (const TradeRecord& record : records) {
        if (record.exporter == record.importer) {
            ++local.self_loops_dropped;
            continue;
        }
        auto& volumes = grouped[record.year][{record.exporter, record.importer}];
        if (!volumes.empty()) {
            ++local.duplicates_merged;
        }
        volumes.push_back(record.volume);
    }

    std::map<int, Network> networks;
    for (auto& [year, pairs] : grouped) {
        std::vector<std::tuple<std::string, std::string, double>> edges;
        edges.reserve(pairs.size());
        for (auto& [key, volumes] : pairs) {
            std::sort(volumes.begin(), volumes.end());
            const double total = std::accumulate(volumes.begin(), volumes.end(), 0.0);
            edges.emplace_back(key.first, key.second, total);
        }
        networks.emplace(year, Network::from_edges(year, std::move(edges)));
    }
    if (report != nullptr) {
        *report = local;
    }
    if (networks.empty()) {
        throw EmptyInputError("all records were self-loops; nothing to build");
    }
    return networks;
}

GroupMap load_group_map(std::istream& in) {
    GroupMap map;
    std::string line;
    std::size_t line_no = 0;
    bool seen_row = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = split_fields(text);
        if (!seen_row && is_header(fields, {"economy", "group"})) {
            seen_row = true;
            continue;
        }
        seen_row = true;
        if (fields.size() != 2) {
            throw MalformedRowError(line_no,
                                    "expected 2 columns, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw MalformedRowError(line_no, "economy code and group must be non-empty");
        }
        const auto [it, inserted] =
            map.entries.emplace(std::string(fields[0]), std::string(fields[1]));
        if (!inserted) {
            throw DuplicateCodeError("economy mapped twice: " + std::string(fields[0]));
        }
    }
    return map;
}

}  // namespace tradenet
