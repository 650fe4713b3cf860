#include "tradenet/network.hpp"

#include <algorithm>
#include <cmath>

namespace tradenet {

Network Network::assemble(int year, std::vector<std::string> codes, std::vector<Edge> edges) {
    Network net;
    net.year_ = year;
    net.codes_ = std::move(codes);

    const std::size_t n = net.codes_.size();
    const std::size_t m = edges.size();

    net.out_offsets_.assign(n + 1, 0);
    net.in_offsets_.assign(n + 1, 0);
    net.out_.resize(m);
    net.in_.resize(m);
    net.edge_sources_.resize(m);
    net.out_volume_.assign(n, 0.0);
    net.in_volume_.assign(n, 0.0);

    for (const Edge& e : edges) {
        ++net.out_offsets_[e.source + 1];
        ++net.in_offsets_[e.target + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        net.out_offsets_[i] += net.out_offsets_[i - 1];
        net.in_offsets_[i] += net.in_offsets_[i - 1];
    }

    // Edges arrive sorted by (source, target), so filling the out-CSR in
    // input order keeps each adjacency list sorted by target.
    std::vector<std::size_t> out_fill(net.out_offsets_.begin(), net.out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(net.in_offsets_.begin(), net.in_offsets_.end() - 1);
    for (const Edge& e : edges) {
        const std::size_t o = out_fill[e.source]++;
        net.out_[o] = Neighbor{e.target, e.volume};
        net.edge_sources_[o] = e.source;
        net.in_[in_fill[e.target]++] = Neighbor{e.source, e.volume};
        net.out_volume_[e.source] += e.volume;
        net.in_volume_[e.target] += e.volume;
        net.total_volume_ += e.volume;
    }
    // In-lists must be sorted by source for deterministic iteration.
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(net.in_.begin() + static_cast<std::ptrdiff_t>(net.in_offsets_[i]),
                  net.in_.begin() + static_cast<std::ptrdiff_t>(net.in_offsets_[i + 1]),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
    return net;
}

Network Network::from_edges(int year,
                            std::vector<std::tuple<std::string, std::string, double>> edges) {
    if (edges.empty()) {
        throw EmptyInputError("network must contain at least one trade relationship");
    }

    std::vector<std::string> codes;
    codes.reserve(edges.size() * 2);
    for (const auto& [src, dst, volume] : edges) {
        if (src == dst) {
            throw DataError("self-loop edge not allowed: " + src);
        }
        if (!(volume > 0.0) || !std::isfinite(volume)) {
            throw DataError("edge volume must be a positive finite number: " + src + "->" + dst);
        }
        codes.push_back(src);
        codes.push_back(dst);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

    auto index_of = [&codes](const std::string& code) {
        return static_cast<std::uint32_t>(
            std::lower_bound(codes.begin(), codes.end(), code) - codes.begin());
    };

    std::vector<Edge> indexed;
    indexed.reserve(edges.size());
    for (const auto& [src, dst, volume] : edges) {
        indexed.push_back(Edge{index_of(src), index_of(dst), volume});
    }
    std::sort(indexed.begin(), indexed.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    for (std::size_t i = 1; i < indexed.size(); ++i) {
        if (indexed[i - 1].source == indexed[i].source &&
            indexed[i - 1].target == indexed[i].target) {
            throw DataError("duplicate trade relationship: " + codes[indexed[i].source] + "->" +
                            codes[indexed[i].target]);
        }
    }
    return assemble(year, std::move(codes), std::move(indexed));
}

std::optional<std::uint32_t> Network::find(std::string_view code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - codes_.begin());
}

std::uint32_t Network::require(std::string_view code) const {
    if (auto idx = find(code)) {
        return *idx;
    }
    throw UnknownNodeError(std::string(code));
}

std::span<const Neighbor> Network::out_edges(std::uint32_t node) const {
    return {out_.data() + out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]};
}

std::span<const Neighbor> Network::in_edges(std::uint32_t node) const {
    return {in_.data() + in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]};
}

Edge Network::edge_at(std::size_t k) const {
    return Edge{edge_sources_[k], out_[k].node, out_[k].volume};
}

std::vector<Edge> Network::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (std::size_t k = 0; k < edge_count(); ++k) {
        result.push_back(edge_at(k));
    }
    return result;
}

std::optional<std::size_t> Network::find_edge(std::uint32_t source, std::uint32_t target) const {
    const auto begin = out_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[source]);
    const auto end = out_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[source + 1]);
    auto it = std::lower_bound(begin, end, target,
                               [](const Neighbor& a, std::uint32_t t) { return a.node < t; });
    if (it == end || it->node != target) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - out_.begin());
}

std::size_t Network::require_edge(std::string_view source, std::string_view target) const {
    const auto s = find(source);
    const auto t = find(target);
    if (s && t) {
        if (auto k = find_edge(*s, *t)) {
            return *k;
        }
    }
    throw UnknownEdgeError(std::string(source), std::string(target));
}

double Network::mean_edge_volume() const {
    if (edge_count() == 0) {
        throw EmptyInputError("mean edge volume is undefined on an edgeless network");
    }
    return total_volume_ / static_cast<double>(edge_count());
}

Network Network::without_nodes(const std::vector<bool>& drop) const {
    const std::size_t n = node_count();
    std::vector<std::string> kept_codes;
    std::vector<std::uint32_t> remap(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!drop[i]) {
            remap[i] = static_cast<std::uint32_t>(kept_codes.size());
            kept_codes.push_back(codes_[i]);
        }
    }
    std::vector<Edge> kept_edges;
    for (std::size_t k = 0; k < edge_count(); ++k) {
        const Edge e = edge_at(k);
        if (!drop[e.source] && !drop[e.target]) {
            kept_edges.push_back(Edge{remap[e.source], remap[e.target], e.volume});
        }
    }
    return assemble(year_, std::move(kept_codes), std::move(kept_edges));
}

Network Network::without_edges(const std::vector<bool>& drop) const {
    std::vector<Edge> kept_edges;
    kept_edges.reserve(edge_count());
    for (std::size_t k = 0; k < edge_count(); ++k) {
        if (!drop[k]) {
            kept_edges.push_back(edge_at(k));
        }
    }
    return assemble(year_, codes_, std::move(kept_edges));
}

Network Network::remove_node(std::uint32_t node) const {
    std::vector<bool> drop(node_count(), false);
    drop[node] = true;
    return without_nodes(drop);
}

Network Network::remove_node(std::string_view code) const {
    return remove_node(require(code));
}

Network Network::remove_edge(std::uint32_t source, std::uint32_t target) const {
    auto k = find_edge(source, target);
    if (!k) {
        throw UnknownEdgeError(codes_[source], codes_[target]);
    }
    std::vector<bool> drop(edge_count(), false);
    drop[*k] = true;
    return without_edges(drop);
}

Network Network::remove_edge(std::string_view source, std::string_view target) const {
    const std::size_t k = require_edge(source, target);
    std::vector<bool> drop(edge_count(), false);
    drop[k] = true;
    return without_edges(drop);
}

}  // namespace tradenet
