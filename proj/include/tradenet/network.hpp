#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tradenet/errors.hpp"

namespace tradenet {

struct Neighbor {
    std::uint32_t node;
    double volume;
};

struct Edge {
    std::uint32_t source;
    std::uint32_t target;
    double volume;
};

/// Immutable directed trade graph for one year.
///
/// Node indices are assigned by sorting economy codes, and edges are kept in
/// (source, target) index order, so two networks built from the same edge set
/// are identical snapshots regardless of input order. All removal operations
/// return new snapshots; existing ones are never mutated, which makes them
/// safe to share across threads.
class Network {
public:
    /// Builds a network from (exporter, importer, volume) triples. Rejects
    /// self-loops, duplicate pairs, non-positive volumes and empty edge sets.
    static Network from_edges(int year,
                              std::vector<std::tuple<std::string, std::string, double>> edges);

    int year() const { return year_; }
    std::size_t node_count() const { return codes_.size(); }
    std::size_t edge_count() const { return edge_sources_.size(); }

    const std::vector<std::string>& codes() const { return codes_; }
    const std::string& code(std::uint32_t node) const { return codes_[node]; }
    std::optional<std::uint32_t> find(std::string_view code) const;
    /// Resolves a code to its index; throws UnknownNodeError.
    std::uint32_t require(std::string_view code) const;

    std::span<const Neighbor> out_edges(std::uint32_t node) const;
    std::span<const Neighbor> in_edges(std::uint32_t node) const;

    /// Edges ordered by (source, target) index; `edge_at(k)` addresses the
    /// k-th edge in that order.
    Edge edge_at(std::size_t k) const;
    std::vector<Edge> edges() const;
    std::optional<std::size_t> find_edge(std::uint32_t source, std::uint32_t target) const;
    std::size_t require_edge(std::string_view source, std::string_view target) const;
    /// Flat index of the first out-edge of `node` in edge order.
    std::size_t out_begin(std::uint32_t node) const { return out_offsets_[node]; }

    double export_volume(std::uint32_t node) const { return out_volume_[node]; }
    double import_volume(std::uint32_t node) const { return in_volume_[node]; }
    double export_volume(std::string_view code) const { return out_volume_[require(code)]; }
    double import_volume(std::string_view code) const { return in_volume_[require(code)]; }
    double total_volume() const { return total_volume_; }
    /// Mean volume over edges; throws EmptyInputError on an edgeless network.
    double mean_edge_volume() const;

    /// Snapshot without `node` and all its incident edges (N shrinks by one).
    Network remove_node(std::string_view code) const;
    Network remove_node(std::uint32_t node) const;
    /// Snapshot without one directed edge; both endpoints stay.
    Network remove_edge(std::string_view source, std::string_view target) const;
    Network remove_edge(std::uint32_t source, std::uint32_t target) const;

    /// Bulk removal views used by attack sweeps. `drop` is indexed by node
    /// (resp. edge order) and the result may be empty or edgeless.
    Network without_nodes(const std::vector<bool>& drop) const;
    Network without_edges(const std::vector<bool>& drop) const;

private:
    Network() = default;
    // Trusted constructor: codes sorted, edges sorted by (source, target),
    // already validated.
    static Network assemble(int year, std::vector<std::string> codes, std::vector<Edge> edges);

    int year_ = 0;
    std::vector<std::string> codes_;
    // CSR over out-edges; the flat arrays double as the canonical edge list.
    std::vector<std::size_t> out_offsets_;
    std::vector<Neighbor> out_;
    std::vector<std::uint32_t> edge_sources_;
    // CSR over in-edges (neighbor = source node).
    std::vector<std::size_t> in_offsets_;
    std::vector<Neighbor> in_;
    std::vector<double> out_volume_;
    std::vector<double> in_volume_;
    double total_volume_ = 0.0;
};

}  // namespace tradenet
