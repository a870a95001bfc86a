#include "tmsv/datasets.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace tmsv;

namespace {

double value(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) {
        return *d;
    }
    if (const auto *i = std::get_if<std::int64_t>(&c)) {
        return static_cast<double>(*i);
    }
    return NAN;
}

double row_value(const Dataset &ds, int m, std::size_t column) {
    for (const auto &row : ds.table.rows) {
        if (value(row[0]) == m) {
            return value(row[column]);
        }
    }
    return NAN;
}

}  // namespace

TEST(datasets, formatting) {
    EXPECT_EQ(format_cell(std::exp(-0.36)), "0.697676326071");
    EXPECT_EQ(format_cell(1e-20), "1e-20");
    EXPECT_EQ(format_cell(std::int64_t{-4}), "-4");
    EXPECT_EQ(format_cell(std::uint64_t{18446744073709551615ull}), "18446744073709551615");
    EXPECT_EQ(format_cell(Cell{}), "");
    EXPECT_EQ(format_cell(NAN), "");
}

TEST(datasets, writers) {
    Table t{{"m", "p"}, {{std::int64_t{1}, 0.5}, {std::int64_t{2}, Cell{}}}};
    std::ostringstream csv;
    write_csv(csv, t);
    EXPECT_EQ(csv.str(), "m,p\n1,0.5\n2,\n");
    std::ostringstream json;
    write_json_lines(json, t);
    EXPECT_EQ(json.str(), "{\"m\":1,\"p\":0.5}\n{\"m\":2,\"p\":null}\n");
}

TEST(datasets, figure1_defaults) {
    Dataset ds = figure1({});
    ASSERT_EQ(ds.table.columns, (std::vector<std::string>{"m", "P_numeric", "P_closed_form"}));
    EXPECT_TRUE(ds.within_tolerance());
    double total = 0.0;
    double below = 0.0;
    double above = 0.0;
    for (const auto &row : ds.table.rows) {
        double m = value(row[0]);
        double p = value(row[1]);
        EXPECT_GT(p, 1e-8);
        EXPECT_NEAR(p, value(row[2]), 1e-10);
        total += p;
        if (m < 0) {
            below += p;
        } else if (m > 36) {
            above += p;
        }
    }
    // Rows below 1e-8 are omitted, which costs a little of the total.
    EXPECT_NEAR(total, 1.0, 1e-5);
    EXPECT_GT(below, above);
}

TEST(datasets, figure2_values) {
    NumPhaseConfig c;
    c.lambda = 0.9;
    Dataset low = figure2(c);
    EXPECT_TRUE(low.within_tolerance());
    for (const auto &row : low.table.rows) {
        if (value(row[0]) < 0) {
            EXPECT_NEAR(value(row[1]), std::exp(-36 * 0.01), 1e-8);
            EXPECT_NEAR(value(row[1]), 0.69768, 1e-5);
        }
    }
    Dataset high = figure2({});
    EXPECT_TRUE(high.within_tolerance());
    EXPECT_GE(row_value(high, 0, 1), row_value(low, 0, 1));
}

TEST(datasets, figure3_values) {
    NumPhaseConfig c;
    c.lambda = 0.9;
    Dataset ds = figure3(c);
    EXPECT_TRUE(ds.within_tolerance());
    EXPECT_NEAR(row_value(ds, 0, 1), std::exp(-0.36), 1e-8);
    EXPECT_EQ(ds.table.columns.size(), 2u);
}

TEST(datasets, resource_check_reports_sign_mismatch) {
    ResourceCheckConfig c;
    c.r_values = {1.0};
    Dataset ds = resource_check(c);
    ASSERT_EQ(ds.table.rows.size(), 1u);
    EXPECT_NEAR(value(ds.table.rows[0][1]), 0.27067, 1e-6);
    const double l = std::tanh(1.0);
    EXPECT_NEAR(value(ds.table.rows[0][3]), std::pow((1 - l * l) / (1 + l * l), 2), 1e-8);
    EXPECT_TRUE(ds.checks[0].ok());
    EXPECT_FALSE(ds.checks[1].ok());
    EXPECT_FALSE(ds.within_tolerance());
}

TEST(datasets, quad_sweep_defaults) {
    Dataset ds = quad_sweep({});
    EXPECT_TRUE(ds.within_tolerance());
    ASSERT_EQ(ds.table.rows.size(), 16u);
    double previous = 0.0;
    for (const auto &row : ds.table.rows) {
        if (value(row[1]) == 0.0 && value(row[2]) == 0.0) {
            EXPECT_GE(value(row[3]), previous);
            previous = value(row[3]);
        }
    }
}

TEST(datasets, sweep_grid_overrides) {
    QuadSweepConfig c;
    c.grid_extent = 15.0;
    quad::Grid g = sweep_grid(c, 2.0);
    EXPECT_EQ(g.extent, 15.0);
    EXPECT_LE(g.spacing(), quad::Grid::max_spacing(2.0));
    c.grid_points = 4096;
    EXPECT_EQ(sweep_grid(c, 2.0).points, 4096u);
}

TEST(datasets, mc_run_is_deterministic) {
    McConfig c;
    c.trials = 50;
    Dataset a = mc_run(c);
    Dataset b = mc_run(c);
    std::ostringstream sa;
    std::ostringstream sb;
    write_json_lines(sa, a.table);
    write_json_lines(sb, b.table);
    EXPECT_EQ(sa.str(), sb.str());
    ASSERT_EQ(a.table.rows.size(), 50u);
    EXPECT_EQ(std::get<std::uint64_t>(a.table.rows[7][1]), 49u);
    for (const auto &row : a.table.rows) {
        EXPECT_GE(value(row[5]), 0.0);
        EXPECT_LE(value(row[5]), 1.0 + 1e-12);
    }
}
