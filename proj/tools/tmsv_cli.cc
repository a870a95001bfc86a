// Experiment runner for the two-mode squeezed vacuum teleportation models.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 computation
// error (truncation overflow, grid coverage, I/O), 3 an oracle column
// disagreed with its closed form beyond tolerance.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmsv/datasets.h"
#include "tmsv/errors.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kComputation = 2, kOracleBreach = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::vector<double> r;
    std::string cutoff = "auto";
    double tail_tol = 1e-12;
    std::optional<std::size_t> grid_points;
    std::optional<double> grid_extent;
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    std::string out;
    std::string format = "csv";
};

std::optional<std::size_t> parse_cutoff(const std::string &s) {
    if (s == "auto") {
        return std::nullopt;
    }
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 1) {
            throw UsageError("");
        }
        return static_cast<std::size_t>(v);
    } catch (const std::exception &) {
        throw UsageError("--cutoff must be a positive integer or 'auto', got '" + s + "'");
    }
}

double lambda_or(const RunConfig &cfg, double fallback) {
    double l = cfg.lambda.value_or(fallback);
    if (!(l >= 0.0 && l < 1.0)) {
        throw UsageError("--lambda must lie in [0, 1)");
    }
    return l;
}

void validate(const RunConfig &cfg) {
    for (double r : cfg.r) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw UsageError("--r values must be finite and >= 0");
        }
    }
    if (cfg.grid_points && *cfg.grid_points < 64) {
        throw UsageError("--grid-points must be at least 64");
    }
    if (cfg.grid_extent && !(*cfg.grid_extent > 0.0)) {
        throw UsageError("--grid-extent must be positive");
    }
    if (!(cfg.tail_tol > 0.0 && cfg.tail_tol < 1.0)) {
        throw UsageError("--tail-tol must lie in (0, 1)");
    }
    if (cfg.alpha && !std::isfinite(*cfg.alpha)) {
        throw UsageError("--alpha must be finite");
    }
}

tmsv::NumPhaseConfig numphase_config(const RunConfig &cfg, double default_lambda) {
    tmsv::NumPhaseConfig c;
    c.alpha = cfg.alpha.value_or(6.0);
    c.lambda = lambda_or(cfg, default_lambda);
    c.tail_tol = cfg.tail_tol;
    c.cutoff = parse_cutoff(cfg.cutoff);
    return c;
}

tmsv::Dataset run_command(const std::string &name, const RunConfig &cfg) {
    if (name == "figure1") {
        return tmsv::figure1(numphase_config(cfg, 0.99));
    }
    if (name == "figure2") {
        return tmsv::figure2(numphase_config(cfg, 0.99));
    }
    if (name == "figure3") {
        return tmsv::figure3(numphase_config(cfg, 0.9));
    }
    if (name == "resource-check") {
        tmsv::ResourceCheckConfig c;
        if (!cfg.r.empty()) {
            c.r_values = cfg.r;
        }
        c.tail_tol = cfg.tail_tol;
        c.cutoff = parse_cutoff(cfg.cutoff);
        return tmsv::resource_check(c);
    }
    if (name == "quad-sweep") {
        tmsv::QuadSweepConfig c;
        c.alpha = cfg.alpha.value_or(1.0);
        if (!cfg.r.empty()) {
            c.r_values = cfg.r;
        }
        c.grid_points = cfg.grid_points;
        c.grid_extent = cfg.grid_extent;
        return tmsv::quad_sweep(c);
    }
    tmsv::McConfig c;
    c.alpha = cfg.alpha.value_or(2.0);
    c.lambda = lambda_or(cfg, 0.8);
    c.tail_tol = cfg.tail_tol;
    c.cutoff = parse_cutoff(cfg.cutoff);
    c.seed = cfg.seed;
    c.trials = cfg.trials;
    return tmsv::mc_run(c);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-mode squeezed vacuum teleportation experiments"};
    app.set_config("--config", "", "TOML/INI file with option values (keys are long option names)");
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--alpha", cfg.alpha, "Coherent target amplitude (real)")->envname("TMSV_ALPHA");
    app.add_option("--lambda", cfg.lambda, "Resource lambda = tanh r")->envname("TMSV_LAMBDA");
    app.add_option("--r", cfg.r, "Squeezing values, comma separated")->delimiter(',')->envname("TMSV_R");
    app.add_option("--cutoff", cfg.cutoff, "Fock cutoff or 'auto'")->envname("TMSV_CUTOFF");
    app.add_option("--tail-tol", cfg.tail_tol, "Truncation tail tolerance")->envname("TMSV_TAIL_TOL");
    app.add_option("--grid-points", cfg.grid_points, "Quadrature grid points")->envname("TMSV_GRID_POINTS");
    app.add_option("--grid-extent", cfg.grid_extent, "Quadrature grid half-width")->envname("TMSV_GRID_EXTENT");
    app.add_option("--seed", cfg.seed, "Monte Carlo base seed")->envname("TMSV_SEED");
    app.add_option("--trials", cfg.trials, "Monte Carlo trials")->envname("TMSV_TRIALS");
    app.add_option("--out", cfg.out, "Output path (default stdout)")->envname("TMSV_OUT");
    app.add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("TMSV_FORMAT");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"figure1", "Outcome distribution P(m), numeric and closed form"},
        {"figure2", "Displaced fidelity F(m), numeric and closed form"},
        {"figure3", "Undisplaced fidelity versus m"},
        {"resource-check", "EPR variance and Schmidt/evolution agreement versus r"},
        {"quad-sweep", "Quadrature protocol fidelity versus r and outcome"},
        {"mc-run", "Monte Carlo number/phase trials, one record per line"},
    };
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    tmsv::Dataset ds;
    try {
        validate(cfg);
        ds = run_command(command, cfg);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tmsv::InvalidParameter &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const tmsv::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kComputation;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "error: cannot open " << cfg.out << " for writing\n";
            return kComputation;
        }
    }
    std::ostream &out = cfg.out.empty() ? std::cout : file;
    if (cfg.format == "json") {
        tmsv::write_json_lines(out, ds.table);
    } else {
        tmsv::write_csv(out, ds.table);
    }
    out.flush();
    if (!out) {
        std::cerr << "error: write failed\n";
        return kComputation;
    }

    int code = kOk;
    for (const auto &check : ds.checks) {
        if (!check.ok()) {
            std::cerr << "oracle breach: " << check.name << " deviates by " << check.worst << " (tolerance "
                      << check.tolerance << ")\n";
            code = kOracleBreach;
        }
    }
    return code;
}
