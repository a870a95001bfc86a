#ifndef TMSV_DATASETS_H
#define TMSV_DATASETS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "tmsv/fock.h"
#include "tmsv/numphase.h"
#include "tmsv/quad_teleport.h"

namespace tmsv {

/// Empty cells print as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Floats use 12 significant digits.
std::string format_cell(const Cell &cell);
void write_csv(std::ostream &out, const Table &table);
/// One JSON object per row, keys in column order.
void write_json_lines(std::ostream &out, const Table &table);

/// A numeric column compared against its closed-form counterpart.
struct OracleCheck {
    std::string name;
    double worst = 0.0;  // largest observed deviation
    double tolerance = 0.0;

    bool ok() const {
        return worst <= tolerance;
    }
};

struct Dataset {
    Table table;
    std::vector<OracleCheck> checks;

    bool within_tolerance() const;
};

struct NumPhaseConfig {
    cplx alpha = 6.0;
    double lambda = 0.99;
    double tail_tol = 1e-12;
    /// Target Fock cutoff; chosen from tail_tol^2 when empty.
    std::optional<std::size_t> cutoff;
};

/// Coherent target used by the number/phase datasets.
TargetCoeffs numphase_target(const NumPhaseConfig &config);

/// (m, P_numeric, P_closed_form) for every m with P > 1e-8.
Dataset figure1(const NumPhaseConfig &config);
/// (m, F_numeric, F_closed_form) for every m with P > 1e-8.
Dataset figure2(const NumPhaseConfig &config);
/// (m, F_undisplaced_numeric) for every m with P > 1e-8.
Dataset figure3(const NumPhaseConfig &config);

struct ResourceCheckConfig {
    std::vector<double> r_values{0.25, 0.5, 1.0, 1.5};
    double tail_tol = 1e-12;
    /// Per-mode Fock cutoff; adaptive when empty.
    std::optional<std::size_t> cutoff;
};

/// (r, var_x_sum, closed_form, schmidt_evolution_fidelity). The variance is
/// taken on the evolved state.
Dataset resource_check(const ResourceCheckConfig &config);

struct QuadSweepConfig {
    cplx alpha = 1.0;
    std::vector<double> r_values{0.5, 1.0, 1.5, 2.0};
    std::vector<quad::QuadOutcome> outcomes{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {2.0, -1.0}};
    quad::Gains gains = quad::kUnitGains;
    std::optional<std::size_t> grid_points;
    std::optional<double> grid_extent;
};

/// Grid used for one r of a sweep: protocol defaults with any overrides.
quad::Grid sweep_grid(const QuadSweepConfig &config, double r);

/// (r, X, Y, fidelity) for a coherent target; checked against the Gaussian
/// closed form exp(-|lambda (alpha - beta) + (gx X + i gy Y)/2 - alpha|^2),
/// beta = (X + iY)/2.
Dataset quad_sweep(const QuadSweepConfig &config);

struct McConfig {
    cplx alpha = 2.0;
    double lambda = 0.8;
    double tail_tol = 1e-12;
    std::optional<std::size_t> cutoff;
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
};

/// One row per trial; trial i uses seed + i.
Dataset mc_run(const McConfig &config);

}  // namespace tmsv

#endif
