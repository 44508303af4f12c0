// qcorr: correlation measures and decoherence dynamics of two-qubit
// Bell-diagonal states.
//
// Subcommands:
//   measure   c1 c2 c3      all measures of one state
//   sweep     --config ...  measure curves along a channel parameter
//   critical  --config ...  ESD / dark points / revival of a measure
//   validate  [c1 c2 c3]    check a state or a full config
//
// Exit codes: 0 success (or no events), 2 validation error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/dynamics.hpp"
#include "qcorr/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace qcorr;

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int points = 1001;
};

struct RunConfig {
    std::optional<BellDiagonalCoeffs> initial_c;
    std::optional<ChannelSpec> channel;
    GridSpec grid;
    std::string output_path;
    std::string output_format = "csv";
    bool variational_check = false;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("config is not valid JSON: " + std::string(e.what()));
    }
    return j;
}

RunConfig load_config(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    RunConfig cfg;
    if (j.contains("initial_c")) {
        const auto& c = j.at("initial_c");
        if (!c.is_array() || c.size() != 3)
            throw ValidationError("initial_c must be an array of three numbers");
        cfg.initial_c =
            BellDiagonalCoeffs{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
    }
    if (j.contains("channel")) cfg.channel = channel_spec_from_json(j.at("channel"));
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (!g.is_object()) throw ValidationError("grid must be an object");
        if (g.contains("start")) cfg.grid.start = g.at("start").get<double>();
        if (g.contains("stop")) cfg.grid.stop = g.at("stop").get<double>();
        if (g.contains("points")) cfg.grid.points = g.at("points").get<int>();
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
        if (o.contains("format")) cfg.output_format = o.at("format").get<std::string>();
    }
    if (j.contains("variational_check"))
        cfg.variational_check = j.at("variational_check").get<bool>();
    return cfg;
}

void validate_run_config(const RunConfig& cfg) {
    if (!cfg.initial_c) throw ValidationError("config needs initial_c");
    if (!cfg.channel) throw ValidationError("config needs a channel record");
    cfg.channel->validate();
    if (!is_physical(*cfg.initial_c))
        throw ValidationError("initial_c is not physical: not in tetrahedron");
    if (cfg.grid.points < 2) throw ValidationError("grid.points must be at least 2");
    if (!(cfg.grid.start < cfg.grid.stop))
        throw ValidationError("grid.start must be below grid.stop");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ValidationError("format must be csv or json");
}

json config_echo(const RunConfig& cfg) {
    json j;
    if (cfg.initial_c)
        j["initial_c"] = {cfg.initial_c->c1, cfg.initial_c->c2, cfg.initial_c->c3};
    if (cfg.channel) j["channel"] = channel_spec_json(*cfg.channel);
    j["grid"] = {{"start", cfg.grid.start}, {"stop", cfg.grid.stop}, {"points", cfg.grid.points}};
    j["output"] = {{"path", cfg.output_path}, {"format", cfg.output_format}};
    j["variational_check"] = cfg.variational_check;
    return j;
}

std::string triple(const BellDiagonalCoeffs& c) {
    return "(" + format_number(c.c1) + ", " + format_number(c.c2) + ", " + format_number(c.c3) +
           ")";
}

int cmd_measure(const BellDiagonalCoeffs& c, bool variational) {
    std::cout << "c = " << triple(c) << "\n";
    const bool physical = is_physical(c);
    std::cout << "physical = " << (physical ? "yes" : "no") << "\n";
    const auto mu = bell_eigenvalues(c);
    std::cout << "mu = (" << format_number(mu[0]) << ", " << format_number(mu[1]) << ", "
              << format_number(mu[2]) << ", " << format_number(mu[3]) << ")\n";
    if (!physical) {
        std::cerr << "error: state is not physical: not in tetrahedron\n";
        return 2;
    }
    const DensityMatrix rho = from_bell_coeffs(c);
    std::cout << "gamma_norm_sq = " << format_number(fano_decompose(rho).gamma_norm_sq()) << "\n";
    std::cout << "concurrence = " << format_number(concurrence_bd(c).value) << "\n";
    std::cout << "min = " << format_number(min_bd(c).value) << "\n";
    std::cout << "fmin = " << format_number(fmin_bd(c).value) << "\n";
    if (variational) {
        std::cout << "min_variational = " << format_number(min_variational(rho).value) << "\n";
        std::cout << "fmin_variational = " << format_number(fmin_variational(rho).value) << "\n";
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, bool serial) {
    validate_run_config(cfg);
    if (cfg.output_path.empty()) throw ValidationError("sweep needs an output path");

    SweepOptions opts;
    opts.variational_check = cfg.variational_check;
    opts.parallel = !serial;
    const auto grid = uniform_grid(cfg.grid.start, cfg.grid.stop, cfg.grid.points);
    const SweepResult result = sweep(*cfg.channel, *cfg.initial_c, grid, opts);

    if (cfg.output_format == "csv") {
        atomic_write_file(cfg.output_path, sweep_to_csv(result));
    } else {
        json out;
        out["config"] = config_echo(cfg);
        out["rows"] = sweep_rows_json(result);
        out["critical_points"] = json::array();
        atomic_write_file(cfg.output_path, out.dump(2) + "\n");
    }
    std::cout << "wrote " << result.rows.size() << " rows to " << cfg.output_path << "\n";
    return 0;
}

int cmd_critical(const RunConfig& cfg, const std::string& measure_name) {
    validate_run_config(cfg);
    const MeasureKind kind = measure_kind_from_string(measure_name);

    std::cout << "channel = " << to_string(cfg.channel->family) << "\n";
    std::cout << "initial c = " << triple(*cfg.initial_c) << "\n";
    std::cout << "measure = " << measure_name << "\n";

    if (cfg.channel->family == ChannelFamily::Hybrid && kind == MeasureKind::Concurrence) {
        const HybridPcResult pc = hybrid_pc(*cfg.initial_c, *cfg.channel->alpha,
                                            *cfg.channel->beta, *cfg.channel->gamma);
        const auto describe = [](const HybridPcBranch& b) {
            if (!b.in_range) return std::string("out of range");
            std::string s = format_number(b.value);
            s += b.verified ? " (verified)" : " (spurious root)";
            return s;
        };
        std::cout << "hybrid p_c(+) = " << describe(pc.plus) << "\n";
        std::cout << "hybrid p_c(-) = " << describe(pc.minus) << "\n";
    }

    SearchGrid search;
    search.start = cfg.grid.start;
    search.stop = cfg.grid.stop;
    search.points = cfg.grid.points;
    const auto points = find_dark_points(*cfg.channel, *cfg.initial_c, kind, search);

    if (points.empty()) {
        std::cout << "no events\n";
    } else {
        for (const CriticalPoint& cp : points) {
            std::cout << to_string(cp.kind) << " at " << cfg.channel->param_name() << " = "
                      << format_number(cp.location) << "  bracket ["
                      << format_number(cp.bracket.first) << ", "
                      << format_number(cp.bracket.second) << "]";
            if (cp.kind == CriticalPoint::Kind::DarkPoint)
                std::cout << (cp.revival ? "  revival = yes" : "  revival = no");
            std::cout << "\n";
        }
    }

    if (!cfg.output_path.empty()) {
        json out;
        out["config"] = config_echo(cfg);
        out["rows"] = json::array();
        out["critical_points"] = critical_points_json(points);
        atomic_write_file(cfg.output_path, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_validate(const std::optional<BellDiagonalCoeffs>& c_args,
                 const std::optional<RunConfig>& cfg) {
    if (c_args) {
        std::cout << "c = " << triple(*c_args) << "\n";
        if (!is_physical(*c_args)) {
            std::cout << "physical = no\n";
            std::cerr << "error: state is not physical: not in tetrahedron\n";
            return 2;
        }
        std::cout << "physical = yes\n";
        return 0;
    }
    if (!cfg) throw ValidationError("validate needs coefficients or --config");
    validate_run_config(*cfg);
    std::cout << "config ok\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum correlation measures of two-qubit states under noisy channels"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string output_path;
    std::string format;
    bool variational = false;
    bool serial = false;
    int threads = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--output", output_path, "output file path (overrides config)");
    app.add_option("--format", format, "output format: csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--variational-check", variational,
                 "cross-check closed forms with the variational search");
    app.add_flag("--serial", serial, "run sweeps on the serial reference path");
    app.add_option("--threads", threads, "worker threads (0 = library default)");

    std::vector<double> c_measure, c_validate;
    CLI::App* measure = app.add_subcommand("measure", "measures of one Bell-diagonal state");
    measure->add_option("c", c_measure, "coefficients c1 c2 c3")->expected(3);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep measures along a channel parameter");

    CLI::App* critical = app.add_subcommand("critical", "locate ESD, dark points and revivals");
    std::string measure_name = "concurrence";
    critical->add_option("--measure", measure_name, "concurrence | min | fmin")
        ->check(CLI::IsMember({"concurrence", "min", "fmin"}));

    CLI::App* validate = app.add_subcommand("validate", "validate a state or a config");
    validate->add_option("c", c_validate, "coefficients c1 c2 c3")->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        std::optional<RunConfig> cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        // flags override file values
        if (cfg) {
            if (!output_path.empty()) cfg->output_path = output_path;
            if (!format.empty()) cfg->output_format = format;
            if (variational) cfg->variational_check = true;
        }

        if (*measure) {
            std::optional<BellDiagonalCoeffs> c;
            if (c_measure.size() == 3)
                c = BellDiagonalCoeffs{c_measure[0], c_measure[1], c_measure[2]};
            else if (cfg && cfg->initial_c)
                c = cfg->initial_c;
            if (!c) throw ValidationError("measure needs c1 c2 c3 or a config with initial_c");
            return cmd_measure(*c, variational);
        }
        if (*sweep_cmd) {
            if (!cfg) throw ValidationError("sweep needs --config");
            return cmd_sweep(*cfg, serial);
        }
        if (*critical) {
            if (!cfg) throw ValidationError("critical needs --config");
            return cmd_critical(*cfg, measure_name);
        }
        if (*validate) {
            std::optional<BellDiagonalCoeffs> c;
            if (c_validate.size() == 3)
                c = BellDiagonalCoeffs{c_validate[0], c_validate[1], c_validate[2]};
            return cmd_validate(c, cfg);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotPhysical& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
