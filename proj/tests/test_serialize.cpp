#include <charconv>
#include <sstream>

#include "doctest.h"
#include "support/oracle.hpp"
#include "tradenet/serialize.hpp"

using namespace tradenet;
using namespace testsupport;

namespace {

double parse_cell(const std::string& cell) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    REQUIRE(ec == std::errc());
    REQUIRE(ptr == cell.data() + cell.size());
    return value;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    for (const double value : {1.0, 0.1, 1.0 / 3.0, 12345.6789, 1e-300, 5.0 / 6.0}) {
        const std::string text = format_double(value);
        CHECK(parse_cell(text) == value);
    }
    CHECK(format_double(4.0) == "4");
    CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("canonical network serialization is the trade CSV") {
    const Network net = Network::from_edges(1999, {{"B", "C", 0.5}, {"A", "B", 2.0}});
    std::ostringstream out;
    write_network_csv(out, net);
    CHECK(out.str() == "year,exporter,importer,volume\n1999,A,B,2\n1999,B,C,0.5\n");
}

TEST_CASE("criticality table CSV uses the key,criticality,rank layout") {
    const CriticalityTable table = edge_criticality(path3(), Mode::unweighted);
    std::ostringstream out;
    criticality_table_csv(out, table);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"key", "criticality", "rank"});
    CHECK(rows[1][0] == "A->B");  // tie broken lexicographically
    CHECK(rows[1][2] == "1");
    CHECK(rows[2][0] == "B->C");
    CHECK(parse_cell(rows[1][1]) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("rank table CSV uses the rank,key,criticality layout") {
    const CriticalityTable table = node_criticality(out_star(), Mode::unweighted);
    std::ostringstream out;
    rank_table_csv(out, rank_top(table, 2));
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"rank", "key", "criticality"});
    CHECK(rows[1][0] == "1");
    CHECK(rows[1][1] == "C0");
}

TEST_CASE("CSV and JSON emissions carry the same values") {
    const CriticalityTable table = node_criticality(out_star(), Mode::unweighted);
    std::ostringstream out;
    criticality_table_csv(out, table);
    const auto rows = parse_csv(out.str());
    const ordered_json json = criticality_table_json(table);
    REQUIRE(json.size() == rows.size() - 1);
    for (std::size_t i = 0; i < json.size(); ++i) {
        CHECK(json[i]["key"].get<std::string>() == rows[i + 1][0]);
        CHECK(json[i]["criticality"].get<double>() == parse_cell(rows[i + 1][1]));
        CHECK(json[i]["rank"].get<std::size_t>() == i + 1);
    }
}

TEST_CASE("robustness CSV leaves stderr empty when absent") {
    RobustnessCurve curve;
    curve.samples.push_back({0.0, 0, 1.0, std::nullopt});
    curve.samples.push_back({0.5, 3, 0.25, 0.015625});
    std::ostringstream out;
    robustness_csv(out, curve);
    CHECK(out.str() == "p,n_removed,R,stderr\n0,0,1,\n0.5,3,0.25,0.015625\n");

    const ordered_json json = robustness_json(curve);
    CHECK(json[0]["stderr"].is_null());
    CHECK(json[1]["stderr"].get<double>() == 0.015625);
    CHECK(json[1]["R"].get<double>() == 0.25);
}

TEST_CASE("rank pivot holds one column per year") {
    std::map<int, std::vector<CriticalityEntry>> per_year;
    per_year[2001] = {{"USA", "", 0.9, 0}, {"CHN", "", 0.5, 0}};
    per_year[2002] = {{"NLD", "", 0.8, 0}};
    std::ostringstream out;
    rank_pivot_csv(out, {2001, 2002}, per_year, 2);
    CHECK(out.str() == "rank,2001,2002\n1,USA,NLD\n2,CHN,\n");

    const ordered_json json = rank_pivot_json({2001, 2002}, per_year, 2);
    CHECK(json[0]["2001"].get<std::string>() == "USA");
    CHECK(json[1]["2002"].is_null());
}

TEST_CASE("group sums are ordered by descending criticality") {
    std::map<std::string, double> sums = {{"Asia", 0.5}, {"Europe", 0.9}, {"unmapped", -0.1}};
    std::ostringstream out;
    group_sums_csv(out, sums);
    CHECK(out.str() == "group,criticality\nEurope,0.9\nAsia,0.5\nunmapped,-0.1\n");
}

TEST_CASE("correlation rows serialize optionals and notes") {
    CorrelationOutputRow row;
    row.year = 2017;
    row.mode = "weighted";
    row.direction = "import";
    row.n = 12;
    row.note = "zero-variance";
    std::ostringstream out;
    correlation_csv(out, std::vector<CorrelationOutputRow>{row});
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][4].empty());  // pearson column empty
    CHECK(rows[1][8] == "zero-variance");

    const ordered_json json = correlation_json(std::vector<CorrelationOutputRow>{row});
    CHECK(json[0]["pearson"].is_null());
    CHECK(json[0]["note"].get<std::string>() == "zero-variance");
}

TEST_CASE("volume series CSV layout") {
    VolumeTimeSeries series;
    series.importers.push_back({"USA", 12.0, {{2001, 5.0}, {2002, 7.0}}});
    series.exporters.push_back({"SAU", 12.0, {{2001, 12.0}}});
    std::ostringstream out;
    volumes_csv(out, series);
    CHECK(out.str() ==
          "side,rank,economy,year,volume\n"
          "import,1,USA,2001,5\n"
          "import,1,USA,2002,7\n"
          "export,1,SAU,2001,12\n");
}
