#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "bregpnp/image_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(BREGPNP_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("bregpnp_test_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

} // namespace

TEST_F(Cli, DegradeRestoreEvalPipeline) {
    ASSERT_EQ(run("phantom --name blocks --size 32 --output " + path("clean.pgm")).code, 0);
    ASSERT_EQ(run("degrade --input " + path("clean.pgm") + " --peak 32 --seed 3 --output " + path("y.pgm")).code, 0);
    const auto counts = bregpnp::load_image(path("y.pgm"));
    EXPECT_EQ(counts.maxval, 65535);
    const auto r = run("restore --input " + path("y.pgm") + " --peak 32 --algo pnp-bpgm --denoiser smooth:0.5 --gamma 0.05 " +
                       "--iters 30 --truth " + path("clean.pgm") + " --report " + path("run.json") + " --output " +
                       path("x.png"));
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("iterations 30"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("psnr"), std::string::npos);
    const auto report = nlohmann::json::parse(slurp(path("run.json")));
    EXPECT_EQ(report.at("algorithm"), "pnp-bpgm");
    EXPECT_EQ(report.at("residuals").size(), 30u);

    const auto e = run("eval --input " + path("x.png") + " --truth " + path("clean.pgm") + " --peak 32");
    ASSERT_EQ(e.code, 0);
    EXPECT_GT(std::stod(e.out), 10.0);
    EXPECT_EQ(run("eval --input " + path("clean.pgm") + " --truth " + path("clean.pgm")).out, "400.0000\n");
}

TEST_F(Cli, DegradeIsDeterministic) {
    ASSERT_EQ(run("degrade --input phantom:bump:32 --seed 9 --output " + path("a.pgm")).code, 0);
    ASSERT_EQ(run("degrade --input phantom:bump:32 --seed 9 --output " + path("b.pgm")).code, 0);
    EXPECT_EQ(slurp(path("a.pgm")), slurp(path("b.pgm")));
}

TEST_F(Cli, BenchWritesCsvAndConfigFillsUnsetFlags) {
    {
        std::ofstream cfg(path("bench.json"));
        cfg << R"({"peak": 8, "seed": 4, "images": ["phantom:blocks:24", "phantom:bump:24"],
                   "methods": [{"name": "pnp", "algo": "pnp-bpgm", "gamma": 0.1, "iters": 10}]})";
    }
    const auto a = run("bench --config " + path("bench.json") + " --output " + path("a.csv"));
    ASSERT_EQ(a.code, 0);
    const std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,blocks_24,bump_24,Average");
    EXPECT_NE(csv.find("\nCorrupted,"), std::string::npos);
    EXPECT_NE(csv.find("\npnp,"), std::string::npos);

    const auto b = run("bench --config " + path("bench.json") + " --threads 2");
    EXPECT_EQ(b.out, csv);
    // A command-line flag wins over the config value.
    const auto c = run("bench --config " + path("bench.json") + " --peak 32");
    EXPECT_NE(c.out, csv);
}

TEST_F(Cli, CheckTheoremPrintsCertificate) {
    const auto r = run("check-theorem --mu-h 1 --L-h 1 --mu-f 1 --L-f 2 --M 2 --gamma 0.6");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("m_bound"), 3.0);
    EXPECT_EQ(doc.at("satisfied"), true);
    EXPECT_EQ(doc.at("gamma_admissible"), true);
    EXPECT_EQ(nlohmann::json::parse(run("check-theorem --mu-f 1 --L-f 2 --L-h 1 --M 4").out).at("satisfied"), false);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("restore --bogus").code, 1);
    EXPECT_EQ(run("restore --input " + path("missing.pgm")).code, 3);
    EXPECT_EQ(run("degrade --input phantom:blocks:16 --peak -1 --output " + path("y.pgm")).code, 1);
    EXPECT_EQ(run("degrade --input phantom:blocks:16 --output " + path("no/such/dir/y.pgm")).code, 3);
    ASSERT_EQ(run("degrade --input phantom:blocks:16 --peak 8 --output " + path("y.pgm")).code, 0);
    EXPECT_EQ(run("restore --input " + path("y.pgm") + " --algo pnp-bpgm --denoiser identity --gamma 1e300 --iters 3")
                  .code,
              2);
    EXPECT_EQ(run("restore --input " + path("y.pgm") + " --algo nope").code, 1);
    EXPECT_EQ(run("restore --input " + path("y.pgm") + " --algo bpgm --href shannon").code, 1);
}
