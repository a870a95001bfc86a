#include "tmsv/datasets.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tmsv/analytics.h"
#include "tmsv/resource.h"

namespace tmsv {

namespace {

constexpr double kRowProbabilityFloor = 1e-8;

std::int64_t as_int(int m) {
    return static_cast<std::int64_t>(m);
}

void track(OracleCheck &check, double deviation) {
    check.worst = std::max(check.worst, std::isnan(deviation) ? INFINITY : deviation);
}

}  // namespace

std::string format_cell(const Cell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) {
            return {};
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto *i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto *u = std::get_if<std::uint64_t>(&cell)) {
        return std::to_string(*u);
    }
    return {};
}

void write_csv(std::ostream &out, const Table &table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_cell(row[c]);
        }
        out << '\n';
    }
}

void write_json_lines(std::ostream &out, const Table &table) {
    for (const auto &row : table.rows) {
        out << '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string v = format_cell(row[c]);
            out << (c ? "," : "") << '"' << table.columns[c] << "\":" << (v.empty() ? "null" : v);
        }
        out << "}\n";
    }
}

bool Dataset::within_tolerance() const {
    return std::all_of(checks.begin(), checks.end(), [](const OracleCheck &c) { return c.ok(); });
}

TargetCoeffs numphase_target(const NumPhaseConfig &config) {
    if (config.cutoff) {
        return TargetCoeffs::coherent(config.alpha, *config.cutoff);
    }
    return TargetCoeffs::coherent_auto(config.alpha, config.tail_tol * config.tail_tol);
}

Dataset figure1(const NumPhaseConfig &config) {
    TargetCoeffs c = numphase_target(config);
    OutcomePmf pmf = jz_pmf(c, config.lambda, {config.tail_tol});
    Dataset ds;
    ds.table.columns = {"m", "P_numeric", "P_closed_form"};
    OracleCheck pair{"P_numeric vs P_closed_form", 0.0, 1e-10};
    for (const auto &[m, p] : pmf.entries) {
        if (p <= kRowProbabilityFloor) {
            continue;
        }
        double closed = analytics::p_m_coherent(config.alpha, config.lambda, m);
        track(pair, std::abs(p - closed));
        ds.table.rows.push_back({as_int(m), p, closed});
    }
    ds.checks.push_back(pair);
    ds.checks.push_back({"P_numeric total", std::abs(pmf.total() - 1.0), 1e-9});
    return ds;
}

Dataset figure2(const NumPhaseConfig &config) {
    TargetCoeffs c = numphase_target(config);
    OutcomePmf pmf = jz_pmf(c, config.lambda, {config.tail_tol});
    Dataset ds;
    ds.table.columns = {"m", "F_numeric", "F_closed_form"};
    OracleCheck pair{"F_numeric vs F_closed_form", 0.0, 1e-8};
    for (const auto &[m, p] : pmf.entries) {
        if (p <= kRowProbabilityFloor) {
            continue;
        }
        double numeric = fidelity_displaced(c, config.lambda, m);
        double closed = analytics::f_m_coherent(config.alpha, config.lambda, m);
        track(pair, std::abs(numeric - closed));
        ds.table.rows.push_back({as_int(m), numeric, closed});
    }
    ds.checks.push_back(pair);
    return ds;
}

Dataset figure3(const NumPhaseConfig &config) {
    TargetCoeffs c = numphase_target(config);
    OutcomePmf pmf = jz_pmf(c, config.lambda, {config.tail_tol});
    Dataset ds;
    ds.table.columns = {"m", "F_undisplaced_numeric"};
    OracleCheck f0{"F_undisplaced_numeric(0) vs closed form", 0.0, 1e-8};
    for (const auto &[m, p] : pmf.entries) {
        if (p <= kRowProbabilityFloor) {
            continue;
        }
        double numeric = fidelity_undisplaced(c, config.lambda, m);
        if (m == 0) {
            track(f0, std::abs(numeric - analytics::f0_undisplaced(config.alpha, config.lambda)));
        }
        ds.table.rows.push_back({as_int(m), numeric});
    }
    ds.checks.push_back(f0);
    return ds;
}

Dataset resource_check(const ResourceCheckConfig &config) {
    Dataset ds;
    ds.table.columns = {"r", "var_x_sum", "closed_form", "schmidt_evolution_fidelity"};
    OracleCheck var{"var_x_sum vs closed_form", 0.0, 1e-6};
    OracleCheck fid{"1 - schmidt_evolution_fidelity", 0.0, 1e-8};
    for (double r : config.r_values) {
        ResourceParams params = ResourceParams::from_r(r);
        std::size_t cutoff = config.cutoff.value_or(schmidt_cutoff(params.lambda(), config.tail_tol));
        TwoModeState evolved = build_by_evolution(r, cutoff);
        TwoModeState schmidt = build_schmidt(params.lambda(), cutoff);
        double v = pair_variance(evolved, Quadrature::X, +1);
        double closed = analytics::epr_variance(r);
        double f = fidelity(schmidt, evolved);
        track(var, std::abs(v - closed));
        track(fid, 1.0 - f);
        ds.table.rows.push_back({r, v, closed, f});
    }
    ds.checks.push_back(var);
    ds.checks.push_back(fid);
    return ds;
}

quad::Grid sweep_grid(const QuadSweepConfig &config, double r) {
    quad::Grid g = quad::Grid::for_protocol(std::abs(config.alpha), r);
    if (config.grid_extent) {
        g.extent = *config.grid_extent;
    }
    if (config.grid_points) {
        g.points = *config.grid_points;
    } else if (config.grid_extent) {
        auto needed = static_cast<std::size_t>(std::ceil(2.0 * g.extent / quad::Grid::max_spacing(r))) + 1;
        g.points = std::max<std::size_t>(2048, needed);
    }
    g.validate();
    return g;
}

Dataset quad_sweep(const QuadSweepConfig &config) {
    Dataset ds;
    ds.table.columns = {"r", "X", "Y", "fidelity"};
    OracleCheck gauss{"fidelity vs Gaussian closed form", 0.0, 1e-6};
    const quad::TargetSpec target = quad::CoherentTarget{config.alpha};
    for (double r : config.r_values) {
        const quad::Grid grid = sweep_grid(config, r);
        const double lambda = std::tanh(r);
        for (const auto &o : config.outcomes) {
            double f = quad::protocol_fidelity(target, r, o, config.gains, grid);
            const cplx beta{0.5 * o.X, 0.5 * o.Y};
            const cplx out = lambda * (config.alpha - beta) + cplx{0.5 * config.gains.gx * o.X, 0.5 * config.gains.gy * o.Y};
            track(gauss, std::abs(f - std::exp(-std::norm(out - config.alpha))));
            ds.table.rows.push_back({r, o.X, o.Y, f});
        }
    }
    ds.checks.push_back(gauss);
    return ds;
}

Dataset mc_run(const McConfig &config) {
    NumPhaseConfig target_config{config.alpha, config.lambda, config.tail_tol, config.cutoff};
    TrialSampler sampler(numphase_target(target_config), config.lambda, {config.tail_tol});
    Dataset ds;
    ds.table.columns = {"trial", "seed", "m", "phi_plus", "fidelity_displaced", "fidelity_undisplaced"};
    for (std::size_t i = 0; i < config.trials; ++i) {
        RunRecord rec = sampler.run(config.seed + i);
        Cell displaced;
        if (rec.fidelity_displaced) {
            displaced = *rec.fidelity_displaced;
        }
        ds.table.rows.push_back({static_cast<std::uint64_t>(i), rec.seed, as_int(rec.m), rec.phi_plus, displaced,
                                 rec.fidelity_undisplaced});
    }
    return ds;
}

}  // namespace tmsv
