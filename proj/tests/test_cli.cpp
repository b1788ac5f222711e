#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cocoasim/cli.hpp"

using namespace cocoasim;
using Catch::Approx;

namespace {
struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("cocoasim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}
} // namespace

TEST_CASE("cli usage errors exit with code 2") {
    CHECK(run_cli({}).code == cli::exit_usage);
    CHECK(run_cli({"frobnicate"}).code == cli::exit_usage);
    CHECK(run_cli({"scenario", "--no-such-flag"}).code == cli::exit_usage);

    const auto unknown_target = run_cli({"replicate", "tableS9", "--out", ""});
    CHECK(unknown_target.code == cli::exit_usage);
    CHECK(unknown_target.err.find("tableS4") != std::string::npos);

    const auto bad_grid = run_cli({"sweep", "--grid", "0:2:0.5"});
    CHECK(bad_grid.code == cli::exit_usage);

    const auto empty_grid = run_cli({"sweep", "--grid", ","});
    CHECK(empty_grid.code == cli::exit_usage);

    CHECK(run_cli({"--help"}).code == cli::exit_ok);
}

TEST_CASE("cli scenario subcommand") {
    const auto result =
        run_cli({"scenario", "--country", "ghana", "--pym", "3.3", "--days", "30",
                 "--price-mode", "short", "--out", ""});
    REQUIRE(result.code == cli::exit_ok);
    CHECK(result.out.find("Ghana") != std::string::npos);
    CHECK(result.out.find("3012.3") != std::string::npos);

    SECTION("explicit mode requires a price") {
        const auto missing = run_cli({"scenario", "--country", "ghana", "--price-mode", "explicit"});
        CHECK(missing.code == cli::exit_validation);
    }
    SECTION("unknown country is a validation error") {
        const auto unknown = run_cli({"scenario", "--country", "atlantis"});
        CHECK(unknown.code == cli::exit_validation);
    }
}

TEST_CASE("cli breakeven subcommand") {
    const auto result = run_cli({"breakeven", "--country", "indonesia", "--pym", "2.6", "--goal",
                                 "2.0", "--price-mode", "short", "--out", ""});
    REQUIRE(result.code == cli::exit_ok);
    CHECK(result.out.find("67.5") != std::string::npos);
    CHECK(result.out.find("60") != std::string::npos);
}

TEST_CASE("cli equilibrium subcommand") {
    const auto result = run_cli({"equilibrium", "--pym", "2.6", "--adoption", "0.25", "--out", ""});
    REQUIRE(result.code == cli::exit_ok);
    CHECK(result.out.find("0.18330") != std::string::npos);

    const auto with_override =
        run_cli({"equilibrium", "--pym-override", "ivory_coast=4.9", "--pym-override", "ghana=4.9",
                 "--pym-override", "indonesia=3.3", "--adoption", "0.25", "--out", ""});
    REQUIRE(with_override.code == cli::exit_ok);
    CHECK(with_override.out.find("0.38108") != std::string::npos);
}

TEST_CASE("cli winwin subcommand") {
    const auto zero = run_cli({"winwin", "--penalty", "0", "--conversion", "0", "--rate", "0",
                               "--horizon", "0", "--out", ""});
    REQUIRE(zero.code == cli::exit_ok);
    CHECK(zero.out.find("\ncompound  ") != std::string::npos);

    const auto published = run_cli({"winwin", "--penalty", "0.4", "--conversion", "1", "--rate",
                                    "0", "--horizon", "0", "--out", ""});
    REQUIRE(published.code == cli::exit_ok);
    CHECK(published.out.find("1193468") != std::string::npos);
}

TEST_CASE("cli replicate writes report files") {
    const auto dir = temp_dir("replicate");
    const auto result =
        run_cli({"replicate", "table1", "figS3", "--grid", "0", "--strict", "--out", dir.string()});
    REQUIRE(result.code == cli::exit_ok);
    CHECK(std::filesystem::exists(dir / "table1.csv"));
    CHECK(std::filesystem::exists(dir / "table1.txt"));
    CHECK(std::filesystem::exists(dir / "figS3.csv"));
    CHECK(result.out.find("table1:") != std::string::npos);

    SECTION("degenerate figS3 grid stays at the baseline") {
        std::ifstream csv_file(dir / "figS3.csv");
        std::string header, row;
        std::getline(csv_file, header);
        std::getline(csv_file, row);
        CHECK(row.find("2.28") != std::string::npos);
    }
    SECTION("replication outputs are byte-identical across runs") {
        const auto dir2 = temp_dir("replicate2");
        const auto rerun = run_cli({"replicate", "table1", "--out", dir2.string()});
        REQUIRE(rerun.code == cli::exit_ok);
        std::ifstream a(dir / "table1.csv"), b(dir2 / "table1.csv");
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK_FALSE(sa.str().empty());
    }
}

TEST_CASE("cli profile and config loading") {
    const auto dir = temp_dir("inputs");

    SECTION("custom profiles override the bundled dataset") {
        const auto path = dir / "profiles.csv";
        {
            std::ofstream out(path);
            auto profiles = bundled_profiles();
            profiles.resize(1);
            save_profiles(out, profiles);
        }
        const auto result = run_cli({"scenario", "--profiles", path.string(), "--out", ""});
        REQUIRE(result.code == cli::exit_ok);
        CHECK(result.out.find("Ivory Coast") != std::string::npos);
        CHECK(result.out.find("Ghana") == std::string::npos);
    }
    SECTION("invalid profile file exits with code 3") {
        const auto path = dir / "bad.csv";
        {
            std::ofstream out(path);
            out << "name,area_harvested_ha\nX,-5\n";
        }
        const auto result = run_cli({"scenario", "--profiles", path.string()});
        CHECK(result.code == cli::exit_validation);
    }
    SECTION("config overrides market parameters") {
        const auto path = dir / "config.json";
        {
            std::ofstream out(path);
            out << R"({"market": {"base_price_usd_kg": 3.0}})";
        }
        const auto result = run_cli({"scenario", "--country", "ghana", "--config", path.string(),
                                     "--price-mode", "short", "--out", ""});
        REQUIRE(result.code == cli::exit_ok);
        CHECK(result.out.find("3  ") != std::string::npos);
    }
    SECTION("malformed config exits with code 3") {
        const auto path = dir / "broken.json";
        {
            std::ofstream out(path);
            out << "{not json";
        }
        CHECK(run_cli({"scenario", "--config", path.string()}).code == cli::exit_validation);
    }
}

TEST_CASE("cli ingest-trial subcommand") {
    const auto dir = temp_dir("trials");
    const auto good = dir / "good.csv";
    {
        std::ofstream out(good);
        out << "farm_id,tree_id,treatment,assigned_rate,flowers_open,flowers_pollinated,"
               "fruit_set_48h,wilt_losses,pest_losses,disease_losses,fruits_harvested,dry_bean_kg\n"
               "F1,T1,hand_pollinated,1.0,100,100,40,10,5,5,20,2.6\n"
               "F1,C1,open_control,0,100,0,8,2,1,1,4,1.0\n";
    }
    const auto result = run_cli({"ingest-trial", "--input", good.string(), "--out", dir.string()});
    REQUIRE(result.code == cli::exit_ok);
    CHECK(result.out.find("yield multiplier: 2.6") != std::string::npos);
    CHECK(result.out.find("fruit_set_rate: 0.4") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "trials_normalized.csv"));

    SECTION("invalid rows exit with code 3 and name the row") {
        const auto bad = dir / "bad.csv";
        {
            std::ofstream out(bad);
            out << "farm_id,tree_id,treatment,assigned_rate,flowers_open,flowers_pollinated,"
                   "fruit_set_48h,wilt_losses,pest_losses,disease_losses,fruits_harvested,dry_bean_kg\n"
                   "F1,T1,hand_pollinated,1.0,100,40,50,0,0,0,0,0\n";
        }
        const auto broken = run_cli({"ingest-trial", "--input", bad.string()});
        CHECK(broken.code == cli::exit_validation);
        CHECK(broken.err.find("row 2") != std::string::npos);
    }
    SECTION("missing file exits with code 3") {
        CHECK(run_cli({"ingest-trial", "--input", (dir / "absent.csv").string()}).code ==
              cli::exit_validation);
    }
}
