#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "tradenet/network.hpp"
#include "tradenet/types.hpp"

namespace tradenet {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Single-source shortest distances. Unweighted distances are hop counts;
/// weighted distances minimize the sum of reciprocal edge volumes, so the
/// reciprocal of a distance is the pair's trade efficiency.
struct PathLengths {
    std::uint32_t source = 0;
    std::vector<double> distance;  // indexed by node; kUnreachable when no path

    bool reachable(std::uint32_t target) const { return distance[target] < kUnreachable; }
};

PathLengths shortest_lengths_unweighted(const Network& net, std::uint32_t source);
PathLengths shortest_lengths_unweighted(const Network& net, std::string_view source);
PathLengths shortest_lengths_weighted(const Network& net, std::uint32_t source);
PathLengths shortest_lengths_weighted(const Network& net, std::string_view source);

/// Mean pairwise efficiency over ordered node pairs, in [0, 1] for the
/// unweighted mode. Unreachable pairs contribute zero; networks with fewer
/// than two nodes have efficiency zero by convention.
double efficiency_unweighted(const Network& net);
double efficiency_weighted(const Network& net);
/// Weighted efficiency divided by the mean edge volume, which makes values
/// comparable across years with different volume scales.
double efficiency_normalized(const Network& net);
double efficiency(const Network& net, Mode mode);

namespace detail {

/// Reusable single-source shortest-path scratch space. `skip_edge` masks one
/// flat edge index, which is how edge-removal sweeps avoid copying the graph.
class SsspWorkspace {
public:
    void hops(const Network& net, std::uint32_t source, std::vector<double>& dist,
              std::size_t skip_edge = kNoEdge);
    void inverse_volume(const Network& net, std::uint32_t source, std::vector<double>& dist,
                        std::size_t skip_edge = kNoEdge);

    static constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

private:
    std::vector<std::uint32_t> queue_;
    std::vector<std::pair<double, std::uint32_t>> heap_;
};

/// Sum over targets (ascending index) of 1/distance, skipping the source and
/// unreachable targets. Fixed iteration order keeps results bit-reproducible.
double row_efficiency_sum(const std::vector<double>& dist, std::uint32_t source);

}  // namespace detail
}  // namespace tradenet
