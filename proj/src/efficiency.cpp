#include "tradenet/efficiency.hpp"

#include <algorithm>

namespace tradenet {
namespace detail {

void SsspWorkspace::hops(const Network& net, std::uint32_t source, std::vector<double>& dist,
                         std::size_t skip_edge) {
    const std::size_t n = net.node_count();
    dist.assign(n, kUnreachable);
    dist[source] = 0.0;
    queue_.clear();
    queue_.push_back(source);
    std::size_t head = 0;
    while (head < queue_.size()) {
        const std::uint32_t u = queue_[head++];
        const double next = dist[u] + 1.0;
        const std::size_t base = net.out_begin(u);
        const auto out = net.out_edges(u);
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (base + k == skip_edge) {
                continue;
            }
            const std::uint32_t v = out[k].node;
            if (dist[v] == kUnreachable) {
                dist[v] = next;
                queue_.push_back(v);
            }
        }
    }
}

void SsspWorkspace::inverse_volume(const Network& net, std::uint32_t source,
                                   std::vector<double>& dist, std::size_t skip_edge) {
    const std::size_t n = net.node_count();
    dist.assign(n, kUnreachable);
    dist[source] = 0.0;
    heap_.clear();
    heap_.emplace_back(0.0, source);
    auto cmp = [](const std::pair<double, std::uint32_t>& a,
                  const std::pair<double, std::uint32_t>& b) { return a > b; };
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), cmp);
        const auto [d, u] = heap_.back();
        heap_.pop_back();
        if (d > dist[u]) {
            continue;  // stale entry
        }
        const std::size_t base = net.out_begin(u);
        const auto out = net.out_edges(u);
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (base + k == skip_edge) {
                continue;
            }
            const std::uint32_t v = out[k].node;
            const double candidate = d + 1.0 / out[k].volume;
            if (candidate < dist[v]) {
                dist[v] = candidate;
                heap_.emplace_back(candidate, v);
                std::push_heap(heap_.begin(), heap_.end(), cmp);
            }
        }
    }
}

double row_efficiency_sum(const std::vector<double>& dist, std::uint32_t source) {
    double sum = 0.0;
    for (std::uint32_t t = 0; t < dist.size(); ++t) {
        if (t != source && dist[t] < kUnreachable) {
            sum += 1.0 / dist[t];
        }
    }
    return sum;
}

}  // namespace detail

namespace {

PathLengths run_sssp(const Network& net, std::uint32_t source, bool weighted) {
    PathLengths result;
    result.source = source;
    detail::SsspWorkspace ws;
    if (weighted) {
        ws.inverse_volume(net, source, result.distance);
    } else {
        ws.hops(net, source, result.distance);
    }
    return result;
}

double mean_pair_efficiency(const Network& net, bool weighted) {
    const std::size_t n = net.node_count();
    if (n < 2) {
        return 0.0;
    }
    detail::SsspWorkspace ws;
    std::vector<double> dist;
    double total = 0.0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (weighted) {
            ws.inverse_volume(net, s, dist);
        } else {
            ws.hops(net, s, dist);
        }
        total += detail::row_efficiency_sum(dist, s);
    }
    return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

PathLengths shortest_lengths_unweighted(const Network& net, std::uint32_t source) {
    return run_sssp(net, source, false);
}

PathLengths shortest_lengths_unweighted(const Network& net, std::string_view source) {
    return run_sssp(net, net.require(source), false);
}

PathLengths shortest_lengths_weighted(const Network& net, std::uint32_t source) {
    return run_sssp(net, source, true);
}

PathLengths shortest_lengths_weighted(const Network& net, std::string_view source) {
    return run_sssp(net, net.require(source), true);
}

double efficiency_unweighted(const Network& net) {
    return mean_pair_efficiency(net, false);
}

double efficiency_weighted(const Network& net) {
    return mean_pair_efficiency(net, true);
}

double efficiency_normalized(const Network& net) {
    if (net.edge_count() == 0) {
        return 0.0;
    }
    return efficiency_weighted(net) / net.mean_edge_volume();
}

double efficiency(const Network& net, Mode mode) {
    switch (mode) {
        case Mode::unweighted: return efficiency_unweighted(net);
        case Mode::weighted: return efficiency_weighted(net);
        case Mode::normalized: return efficiency_normalized(net);
    }
    return 0.0;
}

}  // namespace tradenet
