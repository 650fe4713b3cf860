#include "tradenet/types.hpp"

namespace tradenet {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::unweighted: return "unweighted";
        case Mode::weighted: return "weighted";
        case Mode::normalized: return "normalized";
    }
    return "?";
}

std::string to_string(Kind kind) {
    return kind == Kind::node ? "node" : "edge";
}

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::random: return "random";
        case Strategy::criticality: return "criticality";
        case Strategy::in_volume: return "in";
        case Strategy::out_volume: return "out";
        case Strategy::value: return "value";
    }
    return "?";
}

std::string to_string(VolumeDirection direction) {
    return direction == VolumeDirection::imports ? "import" : "export";
}

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "unweighted") return Mode::unweighted;
    if (text == "weighted") return Mode::weighted;
    if (text == "normalized") return Mode::normalized;
    return std::nullopt;
}

std::optional<Kind> parse_kind(std::string_view text) {
    if (text == "node") return Kind::node;
    if (text == "edge") return Kind::edge;
    return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view text) {
    if (text == "random") return Strategy::random;
    if (text == "criticality") return Strategy::criticality;
    if (text == "in") return Strategy::in_volume;
    if (text == "out") return Strategy::out_volume;
    if (text == "value") return Strategy::value;
    return std::nullopt;
}

}  // namespace tradenet
