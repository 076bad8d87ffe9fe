// Exercises the installed command line surface through a real process:
// subcommands, config overrides and the exit code contract.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <string>

namespace fs = std::filesystem;

namespace {

#ifndef QTHYDRO_CLI_PATH
#error "QTHYDRO_CLI_PATH must be defined by the build"
#endif

const std::string kCli = QTHYDRO_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qthydro_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, RelaxExitCodesFollowTheRunStatus) {
    const fs::path ok_dir = fresh_dir("ok");
    EXPECT_EQ(run_cli("relax --set grid.n_cells=256 -o " + ok_dir.string()), 0);
    EXPECT_TRUE(fs::exists(ok_dir / "run_summary.txt"));

    const fs::path bad_dir = fresh_dir("blowup");
    EXPECT_EQ(run_cli("relax --set system=nelson --set grid.n_cells=256 -o " +
                      bad_dir.string()),
              2);
}

TEST(Cli, UsageAndConfigErrorsExitOne) {
    EXPECT_EQ(run_cli("relax --config /no/such/file.cfg"), 1);
    EXPECT_EQ(run_cli("relax --set init.epsilon=-3 -o /tmp/qthydro_cli_unused"), 1);
    EXPECT_EQ(run_cli("relax --set not.a.key=1"), 1);
    EXPECT_NE(run_cli(""), 0);  // a subcommand is required
}

TEST(Cli, ValidateConfigEchoesNormalizedKeys) {
    const fs::path dir = fresh_dir("validate");
    const fs::path cfg = dir / "case.cfg";
    {
        std::ofstream out(cfg);
        out << "system = general-t\nthermo.T = 0.25\n";
    }
    const std::string out_file = (dir / "echo.txt").string();
    const std::string cmd =
        kCli + " validate-config --config " + cfg.string() + " > " + out_file + " 2>&1";
    ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
    std::ifstream in(out_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("system = general-t"), std::string::npos);
    EXPECT_NE(text.find("thermo.T = 0.25"), std::string::npos);
    EXPECT_NE(text.find("grid.n_cells = 1024"), std::string::npos);
}

TEST(Cli, ConfigSearchPathEnvironmentVariable) {
    const fs::path dir = fresh_dir("envpath");
    {
        std::ofstream out(dir / "env_case.cfg");
        out << "init.epsilon = 0.07\n";
    }
    const std::string out_file = (dir / "echo.txt").string();
    const std::string cmd = "QTHYDRO_CONFIG_PATH=" + dir.string() + " " + kCli +
                            " validate-config --config env_case.cfg > " + out_file +
                            " 2>&1";
    ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
    std::ifstream in(out_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("init.epsilon = 0.070000000000000007"), std::string::npos);
}

TEST(Cli, StabilityMapAndClassifyRun) {
    const fs::path map_dir = fresh_dir("map");
    EXPECT_EQ(run_cli("stability-map --a-gamma 0.5,2 --theta-samples 64 -o " +
                      map_dir.string()),
              0);
    EXPECT_TRUE(fs::exists(map_dir / "stability_map.csv"));
    EXPECT_TRUE(fs::exists(map_dir / "gamma_curve.csv"));

    const fs::path cls_dir = fresh_dir("cls");
    EXPECT_EQ(run_cli("classify --set grid.n_cells=256 -o " + cls_dir.string()), 0);
    EXPECT_TRUE(fs::exists(cls_dir / "classification.txt"));
}
