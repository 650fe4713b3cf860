#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tradenet/network.hpp"
#include "tradenet/types.hpp"

namespace tradenet {

/// Sample Pearson correlation. Needs equal lengths >= 3 and nonzero variance
/// in both series; throws LengthMismatchError / ZeroVarianceError otherwise.
double pearson(std::span<const double> x, std::span<const double> y);

/// Ranks with ties averaged (1-based).
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the rank-transformed series.
double spearman(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value for a correlation coefficient under the usual
/// t-approximation with n-2 degrees of freedom. Informative only.
double correlation_p_value(double r, std::size_t n);

struct CorrelationReport {
    int year = 0;
    Mode mode = Mode::unweighted;
    VolumeDirection direction = VolumeDirection::imports;
    std::size_t n = 0;
    double pearson_r = 0.0;
    double pearson_p = 1.0;
    double spearman_r = 0.0;
    double spearman_p = 1.0;
};

/// Correlates per-economy node criticality with import or export volume.
/// Every economy in the network is part of the sample, including those with
/// zero volume in the chosen direction.
CorrelationReport criticality_volume_correlation(const Network& net, VolumeDirection direction,
                                                 Mode mode, unsigned threads = 1);

struct VolumeSeries {
    std::string code;
    double total = 0.0;  // summed across all years; the ranking key
    std::vector<std::pair<int, double>> by_year;
};

struct VolumeTimeSeries {
    std::vector<VolumeSeries> importers;  // top-k by cross-year import total
    std::vector<VolumeSeries> exporters;  // top-k by cross-year export total
};

VolumeTimeSeries volume_time_series(const std::map<int, Network>& networks, std::size_t top_k);

}  // namespace tradenet
