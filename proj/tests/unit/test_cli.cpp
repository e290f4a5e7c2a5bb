#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qps/cli.hpp"

namespace qps::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qps");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qps_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path path = dir_ / name;
        std::ofstream(path, std::ios::binary) << content;
        return path;
    }

    fs::path dir_;
};

TEST_F(CliTest, VerifyPassesAndRejectsComposites) {
    const Result axioms = run_cli({"verify", "--p", "3", "--basis", "wigner", "--what", "axioms"});
    EXPECT_EQ(axioms.code, kExitOk) << axioms.out << axioms.err;
    EXPECT_NE(axioms.out.find("PASS"), std::string::npos);
    EXPECT_EQ(axioms.out.find("FAIL"), std::string::npos);

    const Result group = run_cli({"verify", "--p", "2", "--n", "2", "--what", "group"});
    EXPECT_EQ(group.code, kExitOk);

    const Result bad = run_cli({"verify", "--p", "4"});
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_NE(bad.err.find("p must be prime"), std::string::npos);
}

TEST_F(CliTest, VerifyWritesJson) {
    const fs::path json = dir_ / "verify.json";
    const Result r = run_cli({"verify", "--p", "5", "--what", "axioms", "--basis", "wootters", "--json", json.string()});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(slurp(json).find("\"pass\""), std::string::npos);
}

TEST_F(CliTest, GammaNnz) {
    const Result w = run_cli({"gamma", "--p", "3", "--n", "1", "--basis", "w", "--nnz"});
    EXPECT_EQ(w.code, kExitOk);
    EXPECT_EQ(w.out, "432\n");
    const Result fw = run_cli({"gamma", "--p", "2", "--n", "2", "--basis", "fw", "--nnz"});
    EXPECT_EQ(fw.out, "120\n");
    const Result bad = run_cli({"gamma", "--p", "3", "--basis", "x", "--nnz"});
    EXPECT_EQ(bad.code, kExitUsage);
}

TEST_F(CliTest, GammaDumpAndCheck) {
    const fs::path dump = dir_ / "g.csv";
    const Result r = run_cli({"gamma", "--p", "2", "--basis", "fw", "--dump", dump.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const std::string csv = slurp(dump);
    EXPECT_EQ(csv.rfind("alpha,beta,gamma,re,im\n", 0), 0U);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);

    const Result check = run_cli({"gamma", "--p", "3", "--basis", "w", "--check-closed"});
    EXPECT_EQ(check.code, kExitOk);
    EXPECT_NE(check.out.find("PASS"), std::string::npos);
}

TEST_F(CliTest, CapsExitWithThree) {
    const Result r = run_cli({"--max-dim", "4", "gamma", "--p", "3", "--n", "2", "--basis", "fw", "--nnz"});
    EXPECT_EQ(r.code, kExitCap);
}

TEST_F(CliTest, EvolveIsDeterministic) {
    const fs::path cfg = write("rabi.json", R"({"n": 1, "hamiltonian": {"omega": 1.0},
        "initial": {"bloch": [[0, 0, 1]]}, "t_final": 0.5, "dt": 0.01})");
    const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
    const Result first = run_cli({"evolve", "--config", cfg.string(), "--out", a.string()});
    ASSERT_EQ(first.code, kExitOk) << first.err;
    EXPECT_NE(first.out.find("samples: 51"), std::string::npos);
    const Result second = run_cli({"evolve", "--config", cfg.string(), "--out", b.string()});
    ASSERT_EQ(second.code, kExitOk);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a).rfind("t,re_0,im_0,", 0), 0U);
}

TEST_F(CliTest, EvolveCompare) {
    const fs::path cfg = write("two.json", R"({"n": 2, "hamiltonian": {"j_perp": [[0, 0.1], [0.1, 0]],
        "j_z": [[0, 0.05], [0.05, 0]], "omega": 1.0},
        "initial": {"bloch": [[0, 0, 1], [0.6, 0, 0.8]]}, "t_final": 0.5, "dt": 0.01})");
    const Result r = run_cli({"evolve", "--config", cfg.string(), "--out", (dir_ / "f.csv").string(),
                              "--compare-out", (dir_ / "m.csv").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("comparison method: meanfield"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "m.csv"));
}

TEST_F(CliTest, EvolveReportsFieldPaths) {
    const fs::path cfg = write("bad.json", R"({"n": 2, "hamiltonian": {"j_z": [[0, 1], [0, 0]]},
        "initial": {"bloch": [[0, 0, 1], [0, 0, 1]]}, "t_final": 1, "dt": 0.1})");
    const Result r = run_cli({"evolve", "--config", cfg.string()});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("config.hamiltonian.j_z"), std::string::npos) << r.err;

    const fs::path bloch = write("bloch.json", R"({"n": 1, "initial": {"bloch": [[1, 1, 0]]}, "t_final": 1, "dt": 0.1})");
    EXPECT_EQ(run_cli({"evolve", "--config", bloch.string()}).code, kExitUsage);

    const fs::path junk = write("junk.json", "{not json");
    EXPECT_EQ(run_cli({"evolve", "--config", junk.string()}).code, kExitUsage);

    const fs::path key = write("key.json", R"({"n": 1, "initial": {"bloch": [[0, 0, 1]]}, "t_final": 1, "dt": 0.1,
        "colour": 1})");
    EXPECT_EQ(run_cli({"evolve", "--config", key.string()}).code, kExitUsage);
}

TEST_F(CliTest, EvolveNumericalFailure) {
    const fs::path cfg = write("huge.json", R"({"n": 1, "hamiltonian": {"omega": 1e308},
        "initial": {"bloch": [[0, 0, 1]]}, "t_final": 1, "dt": 0.1})");
    EXPECT_EQ(run_cli({"evolve", "--config", cfg.string(), "--out", (dir_ / "h.csv").string()}).code, kExitNumerical);
    EXPECT_FALSE(fs::exists(dir_ / "h.csv"));
}

TEST_F(CliTest, TransformExamples) {
    const fs::path up = write("up.json", R"({"dim": 2, "entries": [[1, 0], [0, 0], [0, 0], [0, 0]]})");
    const Result fw = run_cli({"transform", "--in", up.string(), "--from", "matrix", "--to", "fw"});
    ASSERT_EQ(fw.code, kExitOk) << fw.err;
    const auto [grid, basis] = grid_from_json(fw.out);
    EXPECT_EQ(basis, Basis::FourierWigner);
    const std::vector<Complex> expected{1.0, 1.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_LT(std::abs(grid[i] - expected[i]), 1e-15);
    }

    const fs::path mixed = write("mixed.json", R"({"dim": 2, "entries": [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]})");
    const fs::path w_out = dir_ / "w.json";
    ASSERT_EQ(run_cli({"transform", "--in", mixed.string(), "--from", "matrix", "--to", "w", "--out", w_out.string()})
                  .code,
              kExitOk);
    const auto [w, wb] = grid_from_json(slurp(w_out));
    for (const Complex& v : w.values()) {
        EXPECT_LT(std::abs(v - Complex(0.5, 0.0)), 1e-15);
    }
    const Result back = run_cli({"transform", "--in", w_out.string(), "--from", "w", "--to", "matrix"});
    ASSERT_EQ(back.code, kExitOk);
    const Matrix m = density_from_json(back.out);
    EXPECT_LT(std::abs(m(0, 0) - Complex(0.5, 0.0)), 1e-15);

    EXPECT_EQ(run_cli({"transform", "--in", w_out.string(), "--from", "fw", "--to", "matrix"}).code, kExitUsage);
    const fs::path junk = write("junk.json", "[1, 2");
    EXPECT_EQ(run_cli({"transform", "--in", junk.string(), "--from", "matrix", "--to", "w"}).code, kExitUsage);
}

TEST(Formats, DoublesRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
    EXPECT_EQ(infer_space(9).first.value(), 3);
    EXPECT_EQ(infer_space(9).second, 2U);
    EXPECT_THROW(infer_space(6), std::invalid_argument);
}

TEST(Formats, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"bogus"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"gamma", "--p", "3"}).code, kExitUsage);
}

}  // namespace
}  // namespace qps::cli
