#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("genhilbert_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write_config(const std::string& name, const std::string& text) const {
        const auto p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    int run(const std::string& args) const {
        const std::string cmd = std::string("\"") + GENHILBERT_CLI_PATH + "\" " + args + " > \"" +
                                (dir_ / "stdout.txt").string() + "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, DefaultRunWritesReport) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "lebesgue"}, "space": {"gamma": 0.5}})");
    const auto out = dir_ / "out";
    ASSERT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + out.string() + "\""), 0) << slurp(dir_ / "stderr.txt");
    ASSERT_TRUE(fs::exists(out / "report.json"));
    ASSERT_TRUE(fs::exists(out / "moments.csv"));
    const auto doc = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_EQ(doc["exit_code"], 0);
    EXPECT_EQ(slurp(out / "moments.csv").rfind("n,moment\n", 0), 0u);
}

TEST_F(CliTest, InvalidMeasureExitsTwo) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "beta", "s": -1}})");
    EXPECT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + (dir_ / "o").string() + "\""), 2);
    EXPECT_NE(slurp(dir_ / "stderr.txt").find("measure.s"), std::string::npos) << slurp(dir_ / "stderr.txt");
}

TEST_F(CliTest, UnknownTaskAndMissingFileExitTwo) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "lebesgue"}})");
    EXPECT_EQ(run("--config \"" + cfg.string() + "\" --task bogus"), 2);
    EXPECT_EQ(run("--config \"" + (dir_ / "missing.json").string() + "\""), 2);
    EXPECT_EQ(run(""), 2);
}

TEST_F(CliTest, NotWellDefinedExitsThree) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "log_density"}, "space": {"gamma": 1.0},
                                                "tasks": ["classify"]})");
    const auto out = dir_ / "out";
    EXPECT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + out.string() + "\""), 3);
    const auto doc = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_EQ(doc["exit_code"], 3);
}

TEST_F(CliTest, DeterministicOutputs) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "beta", "s": 2}, "truncation": 1024,
                                                "svd_size": 64, "seed": 7,
                                                "tasks": ["moments", "profile", "svd", "solid"]})");
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + a.string() + "\""), 0) << slurp(dir_ / "stderr.txt");
    ASSERT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + b.string() + "\""), 0);
    int csvs = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        if (e.path().extension() != ".csv") continue;
        ++csvs;
        EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
    }
    EXPECT_GE(csvs, 4);
    EXPECT_TRUE(fs::exists(a / "profile_boundedness.csv"));
    EXPECT_TRUE(fs::exists(a / "profile_svd.csv"));
    EXPECT_TRUE(fs::exists(a / "profile_solid.csv"));
}

TEST_F(CliTest, TaskOverrideReplacesConfigTasks) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "lebesgue"}, "truncation": 256, "svd_size": 32,
                                                "tasks": ["moments"]})");
    const auto out = dir_ / "out";
    ASSERT_EQ(run("--config \"" + cfg.string() + "\" --out \"" + out.string() + "\" --task svd"), 0)
        << slurp(dir_ / "stderr.txt");
    EXPECT_TRUE(fs::exists(out / "profile_svd.csv"));
    EXPECT_FALSE(fs::exists(out / "moments.csv"));
}

TEST_F(CliTest, TruncationOverrideIsValidated) {
    const auto cfg = write_config("c.json", R"({"measure": {"kind": "lebesgue"}})");
    EXPECT_EQ(run("--config \"" + cfg.string() + "\" --truncation 8"), 2);
}
