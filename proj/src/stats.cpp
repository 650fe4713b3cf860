#include "tradenet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tradenet/criticality.hpp"

namespace tradenet {
namespace {

// Regularized incomplete beta via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log1p(-x);
    const double front = std::exp(log_front);

    auto fraction = [](double aa, double bb, double xx) {
        const double tiny = 1e-300;
        double c = 1.0;
        double d = 1.0 - (aa + bb) * xx / (aa + 1.0);
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        d = 1.0 / d;
        double result = d;
        for (int i = 1; i <= 300; ++i) {
            const double m = i;
            double numerator = m * (bb - m) * xx / ((aa + 2.0 * m - 1.0) * (aa + 2.0 * m));
            d = 1.0 + numerator * d;
            if (std::fabs(d) < tiny) {
                d = tiny;
            }
            c = 1.0 + numerator / c;
            if (std::fabs(c) < tiny) {
                c = tiny;
            }
            d = 1.0 / d;
            result *= d * c;
            numerator = -(aa + m) * (aa + bb + m) * xx / ((aa + 2.0 * m) * (aa + 2.0 * m + 1.0));
            d = 1.0 + numerator * d;
            if (std::fabs(d) < tiny) {
                d = tiny;
            }
            c = 1.0 + numerator / c;
            if (std::fabs(c) < tiny) {
                c = tiny;
            }
            d = 1.0 / d;
            const double delta = d * c;
            result *= delta;
            if (std::fabs(delta - 1.0) < 1e-14) {
                break;
            }
        }
        return result;
    };

    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     fraction(b, a, 1.0 - x) / b;
}

void check_series(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw LengthMismatchError("series lengths differ: " + std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()));
    }
    if (x.size() < 3) {
        throw LengthMismatchError("correlation needs at least 3 observations, got " +
                                  std::to_string(x.size()));
    }
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    check_series(x, y);
    const auto n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ZeroVarianceError("correlation undefined for a constant series");
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        // Tied block [i, j] gets the average of ranks i+1 .. j+1.
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_series(x, y);
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    return pearson(rx, ry);
}

double correlation_p_value(double r, std::size_t n) {
    if (n < 3) {
        return 1.0;
    }
    const double df = static_cast<double>(n) - 2.0;
    if (std::fabs(r) >= 1.0) {
        return 0.0;
    }
    const double t_squared = r * r * df / (1.0 - r * r);
    const double p = incomplete_beta(df / 2.0, 0.5, df / (df + t_squared));
    return std::clamp(p, 0.0, 1.0);
}

CorrelationReport criticality_volume_correlation(const Network& net, VolumeDirection direction,
                                                 Mode mode, unsigned threads) {
    const CriticalityTable table = node_criticality(net, mode, threads);
    std::vector<double> criticality(net.node_count(), 0.0);
    for (const CriticalityEntry& entry : table.ranked) {
        criticality[net.require(entry.source)] = entry.criticality;
    }
    std::vector<double> volume(net.node_count(), 0.0);
    for (std::uint32_t i = 0; i < net.node_count(); ++i) {
        volume[i] = direction == VolumeDirection::imports ? net.import_volume(i)
                                                          : net.export_volume(i);
    }

    CorrelationReport report;
    report.year = net.year();
    report.mode = mode;
    report.direction = direction;
    report.n = net.node_count();
    report.pearson_r = pearson(criticality, volume);
    report.pearson_p = correlation_p_value(report.pearson_r, report.n);
    report.spearman_r = spearman(criticality, volume);
    report.spearman_p = correlation_p_value(report.spearman_r, report.n);
    return report;
}

VolumeTimeSeries volume_time_series(const std::map<int, Network>& networks, std::size_t top_k) {
    if (networks.empty()) {
        throw EmptyInputError("no networks supplied");
    }

    std::map<std::string, std::pair<double, double>> totals;  // code -> (import, export)
    for (const auto& [year, net] : networks) {
        for (std::uint32_t i = 0; i < net.node_count(); ++i) {
            auto& [imports, exports] = totals[net.code(i)];
            imports += net.import_volume(i);
            exports += net.export_volume(i);
        }
    }

    auto select = [&](bool imports_side) {
        std::vector<std::pair<std::string, double>> ranked;
        ranked.reserve(totals.size());
        for (const auto& [code, pair] : totals) {
            ranked.emplace_back(code, imports_side ? pair.first : pair.second);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) {
                return a.second > b.second;
            }
            return a.first < b.first;
        });
        if (ranked.size() > top_k) {
            ranked.resize(top_k);
        }

        std::vector<VolumeSeries> result;
        for (const auto& [code, total] : ranked) {
            VolumeSeries series;
            series.code = code;
            series.total = total;
            for (const auto& [year, net] : networks) {
                double value = 0.0;
                if (const auto idx = net.find(code)) {
                    value = imports_side ? net.import_volume(*idx) : net.export_volume(*idx);
                }
                series.by_year.emplace_back(year, value);
            }
            result.push_back(std::move(series));
        }
        return result;
    };

    VolumeTimeSeries series;
    series.importers = select(true);
    series.exporters = select(false);
    return series;
}

}  // namespace tradenet
