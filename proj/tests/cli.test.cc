#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result run(const std::string &args, const std::string &env = "") {
    auto dir = std::filesystem::temp_directory_path();
    auto out = dir / "tmsv_cli_test.out";
    auto err = dir / "tmsv_cli_test.err";
    std::string cmd = "env -u TMSV_ALPHA -u TMSV_LAMBDA " + env + " " + TMSV_CLI_PATH + " " + args + " >" +
                      out.string() + " 2>" + err.string();
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string first_data_line(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    return line;
}

}  // namespace

TEST(cli, help) {
    Result r = run("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("figure1"), std::string::npos);
}

TEST(cli, figure1_csv) {
    Result r = run("figure1");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,P_numeric,P_closed_form");
}

TEST(cli, mc_run_byte_identical) {
    Result a = run("mc-run --seed 42 --trials 200");
    Result b = run("mc-run --seed 42 --trials 200");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    Result c = run("mc-run --seed 43 --trials 200");
    EXPECT_NE(a.out, c.out);
}

TEST(cli, json_format) {
    Result r = run("mc-run --trials 2 --format json");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 21), "{\"trial\":0,\"seed\":42,");
}

TEST(cli, out_file) {
    auto path = std::filesystem::temp_directory_path() / "tmsv_cli_test_fig3.csv";
    std::filesystem::remove(path);
    Result r = run("figure3 --out " + path.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(path).substr(0, 24), "m,F_undisplaced_numeric\n");
}

TEST(cli, resource_check_flags_fidelity_breach) {
    Result r = run("resource-check --r 1");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(first_data_line(r.out).substr(0, 15), "1,0.27067056649");
    EXPECT_NE(r.err.find("schmidt_evolution_fidelity"), std::string::npos);
}

TEST(cli, quad_sweep_passes_oracle) {
    Result r = run("quad-sweep --r 0.5,1");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run("figure1 --lambda 1.5").code, 1);
    EXPECT_EQ(run("figure1 --bogus").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("quad-sweep --grid-points 10").code, 1);
    EXPECT_EQ(run("figure1 --cutoff abc").code, 1);
    EXPECT_EQ(run("figure1 --format xml").code, 1);
}

TEST(cli, computation_errors) {
    Result r = run("quad-sweep --r 3 --grid-points 128");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("grid"), std::string::npos);
    EXPECT_EQ(run("resource-check --r 1 --cutoff 5").code, 2);
}

TEST(cli, precedence) {
    auto cfg = std::filesystem::temp_directory_path() / "tmsv_cli_test.toml";
    {
        std::ofstream f(cfg);
        f << "lambda = 0.5\n";
    }
    auto fig3_m0 = [](const Result &r) {
        std::istringstream in(r.out);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("0,", 0) == 0) {
                return line;
            }
        }
        return std::string{};
    };
    std::string from_default = fig3_m0(run("figure3 --alpha 1"));
    std::string from_env = fig3_m0(run("figure3 --alpha 1", "TMSV_LAMBDA=0.7"));
    std::string from_config = fig3_m0(run("figure3 --alpha 1 --config " + cfg.string(), "TMSV_LAMBDA=0.7"));
    std::string from_flag = fig3_m0(run("figure3 --alpha 1 --lambda 0.3 --config " + cfg.string(), "TMSV_LAMBDA=0.7"));
    EXPECT_EQ(from_default, "0,0.990049833749");  // exp(-(1 - 0.9)^2)
    EXPECT_EQ(from_env, "0,0.913931185271");      // exp(-(1 - 0.7)^2)
    EXPECT_EQ(from_config, "0,0.778800783071");   // exp(-(1 - 0.5)^2)
    EXPECT_EQ(from_flag, "0,0.612626394184");     // exp(-(1 - 0.3)^2)
}
