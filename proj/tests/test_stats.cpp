#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracle.hpp"
#include "tradenet/ingest.hpp"
#include "tradenet/stats.hpp"

using namespace tradenet;
using namespace testsupport;

TEST_CASE("pearson on the closed-form triples") {
    const std::vector<double> x = {1, 2, 3};
    CHECK(close_rel(pearson(x, std::vector<double>{2, 4, 6}), 1.0, 1e-12));
    CHECK(close_rel(pearson(x, std::vector<double>{3, 2, 1}), -1.0, 1e-12));
    CHECK_THROWS_AS(pearson(x, std::vector<double>{5, 5, 5}), ZeroVarianceError);
}

TEST_CASE("pearson input validation") {
    const std::vector<double> x = {1, 2, 3};
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), LengthMismatchError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
                    LengthMismatchError);
}

TEST_CASE("spearman on the closed-form triples") {
    const std::vector<double> x = {1, 2, 3};
    CHECK(close_rel(spearman(x, std::vector<double>{10, 100, 1000}), 1.0, 1e-12));
    CHECK(close_rel(spearman(x, std::vector<double>{3, 1, 2}), -0.5, 1e-12));
    CHECK(close_rel(spearman(x, std::vector<double>{3, 2, 1}), -1.0, 1e-12));
}

TEST_CASE("average ranks give tied values the mean of their positions") {
    const std::vector<double> values = {10, 20, 20, 30};
    const std::vector<double> ranks = average_ranks(values);
    CHECK(ranks == std::vector<double>{1.0, 2.5, 2.5, 4.0});
}

TEST_CASE("spearman equals pearson of independently computed ranks") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> value(0, 5);  // many ties
    std::uniform_int_distribution<int> length(3, 20);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = length(rng);
        std::vector<double> x(n);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = value(rng);
            y[i] = value(rng);
        }
        try {
            const double direct = spearman(x, y);
            CHECK(direct == pearson(average_ranks(x), average_ranks(y)));
            CHECK(direct >= -1.0);
            CHECK(direct <= 1.0);
        } catch (const ZeroVarianceError&) {
            // constant draws are legitimately undefined
        }
    }
}

TEST_CASE("coefficients are invariant under monotone transforms") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x(12);
        std::vector<double> y(12);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = value(rng);
            y[i] = value(rng);
        }
        const double r = pearson(x, y);
        const double rs = spearman(x, y);

        std::vector<double> affine(x.size());
        std::vector<double> monotone(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            affine[i] = 3.5 * x[i] + 11.0;
            monotone[i] = std::exp(x[i]);  // strictly increasing, non-affine
        }
        CHECK(close_rel(pearson(affine, y), r, 1e-12));
        CHECK(close_rel(spearman(affine, y), rs, 1e-12));
        CHECK(close_rel(spearman(monotone, y), rs, 1e-12));

        // permuting observation order changes nothing
        std::vector<std::size_t> perm(x.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> px(x.size());
        std::vector<double> py(x.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            px[i] = x[perm[i]];
            py[i] = y[perm[i]];
        }
        CHECK(close_rel(pearson(px, py), r, 1e-12));
        CHECK(close_rel(spearman(px, py), rs, 1e-12));
    }
}

TEST_CASE("t-approximation p-values behave sensibly") {
    // Classic tabulated point: with 3 degrees of freedom (n = 5), |t| = 3.182
    // has a two-sided p of 0.05.
    const double r = std::sqrt(3.182446305 * 3.182446305 /
                               (3.182446305 * 3.182446305 + 3.0));
    CHECK(std::fabs(correlation_p_value(r, 5) - 0.05) < 1e-3);

    CHECK(correlation_p_value(1.0, 10) == 0.0);
    CHECK(correlation_p_value(-1.0, 10) == 0.0);
    CHECK(correlation_p_value(0.0, 10) > 0.99);
    CHECK(correlation_p_value(0.9, 20) < 0.001);

    // More tabulated two-sided t points: df=1, t=1 -> 0.5 (Cauchy);
    // df=2, t=2 -> 0.18350; df=10, t=2.228 -> 0.05.
    auto r_for = [](double t, double df) { return std::sqrt(t * t / (t * t + df)); };
    CHECK(std::fabs(correlation_p_value(r_for(1.0, 1.0), 3) - 0.5) < 1e-9);
    CHECK(std::fabs(correlation_p_value(r_for(2.0, 2.0), 4) - 0.18350) < 1e-4);
    CHECK(std::fabs(correlation_p_value(r_for(2.228139, 10.0), 12) - 0.05) < 1e-4);
}

TEST_CASE("criticality-volume correlation on a monotone fixture") {
    // Disjoint bidirectional pairs with growing volumes: heavier pairs lose
    // more efficiency when removed, so criticality and volume rank alike.
    const Network net = Network::from_edges(2017, {{"A1", "A2", 1.0},
                                                   {"A2", "A1", 1.0},
                                                   {"B1", "B2", 10.0},
                                                   {"B2", "B1", 10.0},
                                                   {"C1", "C2", 100.0},
                                                   {"C2", "C1", 100.0}});
    const CorrelationReport report =
        criticality_volume_correlation(net, VolumeDirection::imports, Mode::weighted);
    CHECK(report.n == 6);
    CHECK(close_rel(report.spearman_r, 1.0, 1e-12));
    CHECK(report.pearson_r > 0.0);
}

TEST_CASE("out-star center dominates both criticality and volume") {
    const CorrelationReport report = criticality_volume_correlation(
        out_star(), VolumeDirection::exports, Mode::unweighted);
    CHECK(report.pearson_r > 0.0);
    CHECK(report.spearman_r > 0.0);
}

TEST_CASE("zero variance propagates from the volume series") {
    // Symmetric 2-cycles with identical volumes: every node has volume 2,
    // so the volume series is constant.
    const Network net = Network::from_edges(
        2017, {{"A", "B", 1.0}, {"B", "A", 1.0}, {"C", "D", 1.0}, {"D", "C", 1.0}});
    CHECK_THROWS_AS(
        criticality_volume_correlation(net, VolumeDirection::imports, Mode::unweighted),
        ZeroVarianceError);
}

TEST_CASE("volume time series ranks by cross-year totals") {
    std::vector<TradeRecord> records = {
        {2016, "A", "B", 5.0},
        {2017, "A", "B", 7.0},
        {2017, "C", "B", 1.0},
    };
    const auto networks = build_yearly_networks(records);
    const VolumeTimeSeries series = volume_time_series(networks, 1);

    REQUIRE(series.exporters.size() == 1);
    CHECK(series.exporters[0].code == "A");
    CHECK(series.exporters[0].total == 12.0);
    REQUIRE(series.exporters[0].by_year.size() == 2);
    CHECK(series.exporters[0].by_year[0] == std::pair<int, double>{2016, 5.0});
    CHECK(series.exporters[0].by_year[1] == std::pair<int, double>{2017, 7.0});

    REQUIRE(series.importers.size() == 1);
    CHECK(series.importers[0].code == "B");
    CHECK(series.importers[0].total == 13.0);

    const VolumeTimeSeries top2 = volume_time_series(networks, 2);
    REQUIRE(top2.exporters.size() == 2);
    CHECK(top2.exporters[1].code == "C");
}

TEST_CASE("single year volume sides") {
    const std::vector<TradeRecord> records = {{2017, "A", "B", 5.0}};
    const auto networks = build_yearly_networks(records);
    const VolumeTimeSeries series = volume_time_series(networks, 10);
    REQUIRE_FALSE(series.importers.empty());
    CHECK(series.importers[0].code == "B");
    CHECK(series.importers[0].total == 5.0);
    CHECK(series.exporters[0].code == "A");
    CHECK(series.exporters[0].total == 5.0);
}
