#include "tradenet/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tradenet/criticality.hpp"
#include "tradenet/efficiency.hpp"
#include "tradenet/ingest.hpp"
#include "tradenet/robustness.hpp"
#include "tradenet/serialize.hpp"
#include "tradenet/stats.hpp"

namespace tradenet {
namespace {

namespace fs = std::filesystem;

std::string join(const std::vector<std::string>& parts, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out.push_back(sep);
        }
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(std::string_view text, char sep = ',') {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

int parse_int_or_throw(std::string_view text, const std::string& what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError("invalid " + what + ": '" + std::string(text) + "'");
    }
    return value;
}

std::vector<int> parse_years(std::string_view spec) {
    std::vector<int> years;
    for (const std::string& token : split(spec)) {
        if (token.empty()) {
            throw UsageError("empty year token in --years");
        }
        const std::size_t dash = token.find('-', 1);  // allow negative years
        if (dash == std::string::npos) {
            years.push_back(parse_int_or_throw(token, "year"));
        } else {
            const int from = parse_int_or_throw(token.substr(0, dash), "year range start");
            const int to = parse_int_or_throw(token.substr(dash + 1), "year range end");
            if (to < from) {
                throw UsageError("year range is reversed: " + token);
            }
            for (int y = from; y <= to; ++y) {
                years.push_back(y);
            }
        }
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    return years;
}

double parse_double_or_throw(std::string_view text, const std::string& what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError("invalid " + what + ": '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_p_grid(std::string_view spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string_view::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) {
            throw UsageError("--p-grid range must be start:stop:step");
        }
        const double start = parse_double_or_throw(parts[0], "p-grid start");
        const double stop = parse_double_or_throw(parts[1], "p-grid stop");
        const double step = parse_double_or_throw(parts[2], "p-grid step");
        if (step <= 0.0) {
            throw UsageError("--p-grid step must be positive");
        }
        for (int i = 0;; ++i) {
            const double p = start + static_cast<double>(i) * step;
            if (p > stop + step * 1e-9) {
                break;
            }
            grid.push_back(p);
        }
    } else {
        for (const std::string& token : split(spec)) {
            grid.push_back(parse_double_or_throw(token, "p-grid value"));
        }
    }
    return grid;
}

std::vector<Mode> parse_modes(std::string_view spec) {
    std::vector<Mode> modes;
    for (const std::string& token : split(spec)) {
        const auto mode = parse_mode(token);
        if (!mode) {
            throw UsageError("unknown mode: '" + token + "'");
        }
        modes.push_back(*mode);
    }
    if (modes.empty()) {
        throw UsageError("--mode must name at least one mode");
    }
    return modes;
}

std::vector<Strategy> parse_strategies(std::string_view spec) {
    std::vector<Strategy> strategies;
    for (const std::string& token : split(spec)) {
        const auto strategy = parse_strategy(token);
        if (!strategy) {
            throw UsageError("unknown strategy: '" + token + "'");
        }
        strategies.push_back(*strategy);
    }
    return strategies;
}

unsigned effective_threads(const RunConfig& config) {
    if (config.threads > 0) {
        return config.threads;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

struct LoadedInput {
    std::map<int, Network> networks;  // already restricted to the year filter
    std::vector<int> years;           // ascending years present after filtering
    std::vector<std::string> warnings;
};

LoadedInput load_input(const RunConfig& config) {
    std::ifstream in(config.input);
    if (!in) {
        throw DataError("cannot open input file: " + config.input);
    }
    const ParseResult parsed = parse_trade_records(in);
    BuildReport report;
    std::map<int, Network> networks = build_yearly_networks(parsed.records, &report);

    LoadedInput loaded;
    if (report.self_loops_dropped > 0) {
        loaded.warnings.push_back("dropped " + std::to_string(report.self_loops_dropped) +
                                  " self-loop record(s)");
    }
    if (!config.years.empty()) {
        std::map<int, Network> filtered;
        for (auto& [year, net] : networks) {
            if (std::binary_search(config.years.begin(), config.years.end(), year)) {
                filtered.emplace(year, std::move(net));
            }
        }
        networks = std::move(filtered);
        if (networks.empty()) {
            loaded.warnings.push_back("year filter matched no data; nothing to compute");
        }
    }
    for (const auto& [year, net] : networks) {
        loaded.years.push_back(year);
    }
    loaded.networks = std::move(networks);
    return loaded;
}

GroupMap load_groups(const RunConfig& config) {
    GroupMap groups;
    if (!config.groups.empty()) {
        std::ifstream in(config.groups);
        if (!in) {
            throw DataError("cannot open group map: " + config.groups);
        }
        groups = load_group_map(in);
    }
    return groups;
}

std::string artifact_path(const RunConfig& config, const std::string& stem) {
    const char* ext = config.format == OutputFormat::csv ? ".csv" : ".json";
    return (fs::path(config.out_dir) / (stem + ext)).string();
}

void write_artifact(const RunConfig& config, const std::string& path,
                    const std::function<void(std::ostream&)>& csv_payload,
                    const std::function<ordered_json()>& json_payload,
                    CommandOutcome& outcome) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write output file: " + path);
    }
    if (config.format == OutputFormat::csv) {
        for (const auto& [key, value] : config_echo(config)) {
            out << "# " << key << '=' << value << '\n';
        }
        csv_payload(out);
    } else {
        ordered_json artifact;
        ordered_json echo;
        for (const auto& [key, value] : config_echo(config)) {
            echo[key] = value;
        }
        artifact["config"] = std::move(echo);
        artifact["results"] = json_payload();
        out << artifact.dump(2) << '\n';
    }
    outcome.files.push_back(path);
}

std::string describe_years(const RunConfig& config) {
    if (config.years.empty()) {
        return "all";
    }
    std::vector<std::string> parts;
    parts.reserve(config.years.size());
    for (const int year : config.years) {
        parts.push_back(std::to_string(year));
    }
    return join(parts);
}

}  // namespace

std::vector<Strategy> default_strategies(Kind kind) {
    if (kind == Kind::node) {
        return {Strategy::random, Strategy::criticality, Strategy::in_volume,
                Strategy::out_volume};
    }
    return {Strategy::random, Strategy::criticality, Strategy::value};
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("tool", std::string(kToolName));
    echo.emplace_back("version", std::string(kToolVersion));
    echo.emplace_back("command", config.command);
    echo.emplace_back("input", config.input);
    echo.emplace_back("groups", config.groups);
    echo.emplace_back("years", describe_years(config));
    {
        std::vector<std::string> parts;
        for (const Mode mode : config.modes) {
            parts.push_back(to_string(mode));
        }
        echo.emplace_back("mode", join(parts));
    }
    echo.emplace_back("kind", to_string(config.kind));
    echo.emplace_back("top", std::to_string(config.top));
    {
        std::vector<std::string> parts;
        for (const Strategy strategy : config.strategies) {
            parts.push_back(to_string(strategy));
        }
        echo.emplace_back("strategies", join(parts));
    }
    {
        std::vector<std::string> parts;
        for (const double p : config.p_grid) {
            parts.push_back(format_double(p));
        }
        echo.emplace_back("p_grid", join(parts));
    }
    echo.emplace_back("samples", std::to_string(config.samples));
    echo.emplace_back("seed", std::to_string(config.seed));
    echo.emplace_back("format", config.format == OutputFormat::csv ? "csv" : "json");
    echo.emplace_back("out_dir", config.out_dir);
    return echo;
}

CommandOutcome cmd_efficiency(const RunConfig& config) {
    CommandOutcome outcome;
    LoadedInput loaded = load_input(config);
    outcome.warnings = std::move(loaded.warnings);

    std::vector<EfficiencyRow> rows;
    for (const auto& [year, net] : loaded.networks) {
        EfficiencyRow row;
        row.year = year;
        row.nodes = net.node_count();
        row.edges = net.edge_count();
        row.volume = net.total_volume();
        row.unweighted = efficiency_unweighted(net);
        row.weighted = efficiency_weighted(net);
        row.normalized = efficiency_normalized(net);
        rows.push_back(row);
    }
    write_artifact(
        config, artifact_path(config, "efficiency"),
        [&rows](std::ostream& out) { efficiency_csv(out, rows); },
        [&rows] { return efficiency_json(rows); }, outcome);
    return outcome;
}

CommandOutcome cmd_criticality(const RunConfig& config, Kind kind) {
    CommandOutcome outcome;
    LoadedInput loaded = load_input(config);
    outcome.warnings = std::move(loaded.warnings);
    const GroupMap groups = load_groups(config);
    const unsigned threads = effective_threads(config);
    const std::string token = "criticality-" + to_string(kind);

    for (const Mode mode : config.modes) {
        std::map<int, std::vector<CriticalityEntry>> per_year_top;
        std::vector<int> good_years;
        for (const auto& [year, net] : loaded.networks) {
            try {
                const CriticalityTable table = kind == Kind::node
                                                   ? node_criticality(net, mode, threads)
                                                   : edge_criticality(net, mode, threads);
                std::vector<CriticalityEntry> top = rank_top(table, config.top);
                const std::string stem =
                    token + "_" + std::to_string(year) + "_" + to_string(mode);
                write_artifact(
                    config, artifact_path(config, stem),
                    [&top](std::ostream& out) { rank_table_csv(out, top); },
                    [&top] { return rank_table_json(top); }, outcome);
                if (kind == Kind::node && !config.groups.empty()) {
                    const auto sums = group_criticality(table, groups);
                    const std::string group_stem = "criticality-node-groups_" +
                                                   std::to_string(year) + "_" + to_string(mode);
                    write_artifact(
                        config, artifact_path(config, group_stem),
                        [&sums](std::ostream& out) { group_sums_csv(out, sums); },
                        [&sums] { return group_sums_json(sums); }, outcome);
                }
                per_year_top.emplace(year, std::move(top));
                good_years.push_back(year);
            } catch (const DataError& err) {
                outcome.warnings.push_back("year " + std::to_string(year) + " (" +
                                           to_string(mode) + "): " + err.what());
            }
        }
        if (!good_years.empty()) {
            const std::string stem = token + "_table_" + to_string(mode);
            write_artifact(
                config, artifact_path(config, stem),
                [&](std::ostream& out) {
                    rank_pivot_csv(out, good_years, per_year_top, config.top);
                },
                [&] { return rank_pivot_json(good_years, per_year_top, config.top); }, outcome);
        }
    }
    return outcome;
}

CommandOutcome cmd_robustness(const RunConfig& config, Kind kind,
                              std::span<const Strategy> strategies) {
    for (const Mode mode : config.modes) {
        if (mode == Mode::normalized) {
            throw UsageError("robustness is defined for unweighted and weighted modes only");
        }
    }
    for (const Strategy strategy : strategies) {
        if (kind == Kind::node && strategy == Strategy::value) {
            throw IncompatibleStrategyError("'value' orders edges, not economies");
        }
        if (kind == Kind::edge &&
            (strategy == Strategy::in_volume || strategy == Strategy::out_volume)) {
            throw IncompatibleStrategyError("'in'/'out' order economies, not edges");
        }
    }

    CommandOutcome outcome;
    LoadedInput loaded = load_input(config);
    outcome.warnings = std::move(loaded.warnings);
    const unsigned threads = effective_threads(config);
    const std::vector<double> grid = config.p_grid.empty() ? default_p_grid() : config.p_grid;

    for (const Mode mode : config.modes) {
        for (const auto& [year, net] : loaded.networks) {
            for (const Strategy strategy : strategies) {
                try {
                    RobustnessCurve curve;
                    if (strategy == Strategy::random) {
                        curve = random_robustness(net, kind, mode, grid, config.samples,
                                                  config.seed, threads);
                    } else {
                        const AttackPlan plan =
                            attack_order(net, kind, strategy, mode, grid, threads);
                        curve = robustness_curve(net, plan, threads);
                    }
                    const std::string stem = "robustness-" + to_string(kind) + "_" +
                                             std::to_string(year) + "_" + to_string(mode) + "_" +
                                             to_string(strategy);
                    write_artifact(
                        config, artifact_path(config, stem),
                        [&curve](std::ostream& out) { robustness_csv(out, curve); },
                        [&curve] { return robustness_json(curve); }, outcome);
                } catch (const DataError& err) {
                    outcome.warnings.push_back("year " + std::to_string(year) + " (" +
                                               to_string(mode) + ", " + to_string(strategy) +
                                               "): " + err.what());
                }
            }
        }
    }
    return outcome;
}

CommandOutcome cmd_correlate(const RunConfig& config) {
    CommandOutcome outcome;
    LoadedInput loaded = load_input(config);
    outcome.warnings = std::move(loaded.warnings);
    const unsigned threads = effective_threads(config);

    for (const Mode mode : config.modes) {
        for (const auto& [year, net] : loaded.networks) {
            std::vector<CorrelationOutputRow> rows;
            for (const VolumeDirection direction :
                 {VolumeDirection::imports, VolumeDirection::exports}) {
                CorrelationOutputRow row;
                row.year = year;
                row.mode = to_string(mode);
                row.direction = to_string(direction);
                row.n = net.node_count();
                try {
                    row = to_output_row(
                        criticality_volume_correlation(net, direction, mode, threads));
                } catch (const ZeroVarianceError&) {
                    row.note = "zero-variance";
                } catch (const DataError& err) {
                    row.note = err.what();
                }
                rows.push_back(std::move(row));
            }
            const std::string stem =
                "correlate_" + std::to_string(year) + "_" + to_string(mode);
            write_artifact(
                config, artifact_path(config, stem),
                [&rows](std::ostream& out) { correlation_csv(out, rows); },
                [&rows] { return correlation_json(rows); }, outcome);
        }
    }
    return outcome;
}

CommandOutcome cmd_volumes(const RunConfig& config) {
    CommandOutcome outcome;
    LoadedInput loaded = load_input(config);
    outcome.warnings = std::move(loaded.warnings);
    if (loaded.networks.empty()) {
        // Year filter matched nothing; still emit an empty artifact.
        const VolumeTimeSeries empty;
        write_artifact(
            config, artifact_path(config, "volumes"),
            [&empty](std::ostream& out) { volumes_csv(out, empty); },
            [&empty] { return volumes_json(empty); }, outcome);
        return outcome;
    }
    const VolumeTimeSeries series = volume_time_series(loaded.networks, config.top);
    write_artifact(
        config, artifact_path(config, "volumes"),
        [&series](std::ostream& out) { volumes_csv(out, series); },
        [&series] { return volumes_json(series); }, outcome);
    return outcome;
}

namespace {

CommandOutcome dispatch(const RunConfig& config) {
    if (config.command == "efficiency") {
        return cmd_efficiency(config);
    }
    if (config.command == "criticality") {
        return cmd_criticality(config, config.kind);
    }
    if (config.command == "robustness") {
        return cmd_robustness(config, config.kind, config.strategies);
    }
    if (config.command == "correlate") {
        return cmd_correlate(config);
    }
    if (config.command == "volumes") {
        return cmd_volumes(config);
    }
    throw UsageError("unknown command: " + config.command);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"trade network efficiency, criticality and robustness analysis"};
    app.require_subcommand(1);

    std::string input;
    std::string groups;
    std::string years_spec;
    std::string modes_spec;
    std::string kind_spec = "node";
    std::string strategies_spec;
    std::string p_grid_spec;
    std::string format_spec = "csv";
    RunConfig config;

    for (const char* name : {"efficiency", "criticality", "robustness", "correlate", "volumes"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", input, "trade CSV (year,exporter,importer,volume)")
            ->required();
        sub->add_option("--groups", groups, "group CSV (economy,group)");
        sub->add_option("--years", years_spec, "year filter, e.g. 1990,1995-2000");
        sub->add_option("--mode", modes_spec, "unweighted|weighted|normalized (comma list)");
        sub->add_option("--kind", kind_spec, "node|edge");
        sub->add_option("--top", config.top, "rows per ranking table");
        sub->add_option("--strategies", strategies_spec,
                        "random|criticality|in|out|value (comma list)");
        sub->add_option("--p-grid", p_grid_spec, "start:stop:step or comma list");
        sub->add_option("--samples", config.samples, "random-attack sample budget per p");
        sub->add_option("--seed", config.seed, "random-attack seed");
        sub->add_option("--format", format_spec, "csv|json");
        sub->add_option("--out-dir", config.out_dir, "output directory");
        sub->add_option("--threads", config.threads, "worker threads (0 = auto)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        config.input = input;
        config.groups = groups;
        if (!years_spec.empty()) {
            config.years = parse_years(years_spec);
        }
        if (!modes_spec.empty()) {
            config.modes = parse_modes(modes_spec);
        }
        if (const auto kind = parse_kind(kind_spec)) {
            config.kind = *kind;
        } else {
            throw UsageError("unknown kind: '" + kind_spec + "'");
        }
        if (!strategies_spec.empty()) {
            config.strategies = parse_strategies(strategies_spec);
        } else {
            config.strategies = default_strategies(config.kind);
        }
        config.p_grid = p_grid_spec.empty() ? default_p_grid() : parse_p_grid(p_grid_spec);
        if (format_spec == "csv") {
            config.format = OutputFormat::csv;
        } else if (format_spec == "json") {
            config.format = OutputFormat::json;
        } else {
            throw UsageError("unknown format: '" + format_spec + "'");
        }

        for (const auto& [key, value] : config_echo(config)) {
            std::cerr << "config " << key << '=' << value << '\n';
        }

        const CommandOutcome outcome = dispatch(config);
        for (const std::string& warning : outcome.warnings) {
            std::cerr << "warning: " << warning << '\n';
        }
        for (const std::string& file : outcome.files) {
            std::cout << "wrote " << file << '\n';
        }
        return 0;
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
}

}  // namespace tradenet
