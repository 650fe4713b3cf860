#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tradenet/ingest.hpp"
#include "tradenet/serialize.hpp"

using namespace tradenet;

namespace {

ParseResult parse(const std::string& text, bool lenient = false) {
    std::istringstream in(text);
    return parse_trade_records(in, lenient);
}

}  // namespace

TEST_CASE("parses a plain data row") {
    const auto result = parse("2017,SAU,USA,1000.5");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0] == TradeRecord{2017, "SAU", "USA", 1000.5});
}

TEST_CASE("skips the canonical header") {
    const auto result = parse("year,exporter,importer,volume\n2017,SAU,USA,3\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].exporter == "SAU");
}

TEST_CASE("rejects non-positive volume") {
    CHECK_THROWS_AS(parse("2017,SAU,USA,0"), MalformedRowError);
    CHECK_THROWS_AS(parse("2017,SAU,USA,-2"), MalformedRowError);
}

TEST_CASE("rejects non-numeric volume") {
    CHECK_THROWS_AS(parse("2017,SAU,USA,abc"), MalformedRowError);
    CHECK_THROWS_AS(parse("2017,SAU,USA,nan"), MalformedRowError);
}

TEST_CASE("rejects bad column count and empty codes") {
    CHECK_THROWS_AS(parse("2017,SAU,USA"), MalformedRowError);
    CHECK_THROWS_AS(parse("2017,SAU,USA,1,extra"), MalformedRowError);
    CHECK_THROWS_AS(parse("2017,,USA,1"), MalformedRowError);
    CHECK_THROWS_AS(parse("20x7,SAU,USA,1"), MalformedRowError);
}

TEST_CASE("errors carry the offending line number") {
    try {
        parse("2017,A,B,1\n\n2017,A,B,bad\n");
        FAIL("expected MalformedRowError");
    } catch (const MalformedRowError& err) {
        CHECK(err.line() == 3);
    }
}

TEST_CASE("lenient mode collects and skips bad rows") {
    const auto result = parse("2017,A,B,1\n2017,A,B,zero\n2017,B,C,2\n", true);
    CHECK(result.records.size() == 2);
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].line == 2);
}

TEST_CASE("handles CRLF and surrounding spaces") {
    const auto result = parse("2017, SAU ,USA,1.5\r\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].exporter == "SAU");
    CHECK(result.records[0].volume == 1.5);
}

TEST_CASE("duplicate pairs within a year are summed") {
    const std::vector<TradeRecord> records = {{2017, "A", "B", 5.0}, {2017, "A", "B", 7.0}};
    const auto networks = build_yearly_networks(records);
    REQUIRE(networks.size() == 1);
    const Network& net = networks.at(2017);
    CHECK(net.edge_count() == 1);
    CHECK(net.edge_at(0).volume == 12.0);
}

TEST_CASE("records are partitioned by year") {
    const std::vector<TradeRecord> records = {{2017, "A", "B", 5.0}, {2016, "B", "C", 2.0}};
    const auto networks = build_yearly_networks(records);
    REQUIRE(networks.size() == 2);
    CHECK(networks.at(2017).codes() == std::vector<std::string>{"A", "B"});
    CHECK(networks.at(2016).codes() == std::vector<std::string>{"B", "C"});
}

TEST_CASE("self-loops are dropped and counted; all-loop input is empty") {
    const std::vector<TradeRecord> loops = {{2017, "A", "A", 5.0}};
    CHECK_THROWS_AS(build_yearly_networks(loops), EmptyInputError);

    const std::vector<TradeRecord> mixed = {{2017, "A", "A", 5.0}, {2017, "A", "B", 1.0}};
    BuildReport report;
    const auto networks = build_yearly_networks(mixed, &report);
    CHECK(report.self_loops_dropped == 1);
    CHECK(networks.at(2017).edge_count() == 1);
}

TEST_CASE("empty record list is rejected") {
    CHECK_THROWS_AS(build_yearly_networks(std::vector<TradeRecord>{}), EmptyInputError);
}

TEST_CASE("aggregation is order-independent") {
    std::mt19937_64 rng(20240117);
    std::uniform_real_distribution<double> volume(0.001, 9.0);
    std::vector<TradeRecord> records;
    const char* codes[] = {"A", "B", "C", "D"};
    for (int i = 0; i < 40; ++i) {
        const int a = static_cast<int>(rng() % 4);
        int b = static_cast<int>(rng() % 4);
        if (a == b) {
            b = (b + 1) % 4;
        }
        records.push_back({2015 + static_cast<int>(rng() % 2), codes[a], codes[b], volume(rng)});
    }

    const auto reference = build_yearly_networks(records);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(records.begin(), records.end(), rng);
        const auto shuffled = build_yearly_networks(records);
        REQUIRE(shuffled.size() == reference.size());
        for (const auto& [year, net] : reference) {
            const Network& other = shuffled.at(year);
            REQUIRE(other.codes() == net.codes());
            REQUIRE(other.edge_count() == net.edge_count());
            for (std::size_t k = 0; k < net.edge_count(); ++k) {
                CHECK(other.edge_at(k).source == net.edge_at(k).source);
                CHECK(other.edge_at(k).target == net.edge_at(k).target);
                CHECK(other.edge_at(k).volume == net.edge_at(k).volume);  // bitwise
            }
        }
    }
}

TEST_CASE("serialize then re-ingest reproduces the network exactly") {
    std::mt19937_64 rng(99);
    std::vector<TradeRecord> records;
    const char* codes[] = {"NLD", "USA", "CHN", "RUS", "SAU"};
    std::uniform_real_distribution<double> volume(1e-6, 1e6);
    for (int i = 0; i < 30; ++i) {
        const int a = static_cast<int>(rng() % 5);
        int b = static_cast<int>(rng() % 5);
        if (a == b) {
            b = (b + 1) % 5;
        }
        records.push_back({2010, codes[a], codes[b], volume(rng)});
    }
    const Network original = build_yearly_networks(records).at(2010);

    std::ostringstream out;
    write_network_csv(out, original);
    std::istringstream in(out.str());
    const auto parsed = parse_trade_records(in);
    const Network rebuilt = build_yearly_networks(parsed.records).at(2010);

    REQUIRE(rebuilt.codes() == original.codes());
    REQUIRE(rebuilt.edge_count() == original.edge_count());
    for (std::size_t k = 0; k < original.edge_count(); ++k) {
        CHECK(rebuilt.edge_at(k).source == original.edge_at(k).source);
        CHECK(rebuilt.edge_at(k).target == original.edge_at(k).target);
        CHECK(rebuilt.edge_at(k).volume == original.edge_at(k).volume);
    }
}

TEST_CASE("group map basics") {
    std::istringstream in("USA,North America\nCHN,Asia\n");
    const GroupMap map = load_group_map(in);
    REQUIRE(map.entries.size() == 2);
    CHECK(*map.find("USA") == "North America");
    CHECK(*map.find("CHN") == "Asia");
    CHECK(map.find("RUS") == nullptr);
}

TEST_CASE("group map header, duplicates and empty input") {
    std::istringstream with_header("economy,group\nUSA,NA\n");
    CHECK(load_group_map(with_header).entries.size() == 1);

    std::istringstream dup("USA,NA\nUSA,EU\n");
    CHECK_THROWS_AS(load_group_map(dup), DuplicateCodeError);

    std::istringstream empty("");
    CHECK(load_group_map(empty).empty());

    std::istringstream bad("USA\n");
    CHECK_THROWS_AS(load_group_map(bad), MalformedRowError);
}
