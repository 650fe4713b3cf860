#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace tradenet {

/// Which edge-length convention a computation uses: hop counts, reciprocal
/// volumes, or reciprocal volumes rescaled by the mean edge volume.
enum class Mode { unweighted, weighted, normalized };

enum class Kind { node, edge };

/// Removal-ordering rule for attack simulations.
enum class Strategy { random, criticality, in_volume, out_volume, value };

enum class VolumeDirection { imports, exports };

std::string to_string(Mode mode);
std::string to_string(Kind kind);
std::string to_string(Strategy strategy);
std::string to_string(VolumeDirection direction);

std::optional<Mode> parse_mode(std::string_view text);
std::optional<Kind> parse_kind(std::string_view text);
std::optional<Strategy> parse_strategy(std::string_view text);

/// One reported trade flow: in calendar year `year`, `exporter` sold
/// `volume` (any positive unit) to `importer`.
struct TradeRecord {
    int year = 0;
    std::string exporter;
    std::string importer;
    double volume = 0.0;

    bool operator==(const TradeRecord&) const = default;
};

/// Economy code to group label (e.g. continent). Each code appears once.
struct GroupMap {
    std::map<std::string, std::string, std::less<>> entries;

    const std::string* find(std::string_view code) const {
        auto it = entries.find(code);
        return it == entries.end() ? nullptr : &it->second;
    }
    bool empty() const { return entries.empty(); }
};

}  // namespace tradenet
