#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "extsum/config_gen.hpp"
#include "extsum/error.hpp"
#include "extsum/exact.hpp"
#include "extsum_cli/commands.hpp"
#include "extsum_cli/io.hpp"

namespace extsum::cli {
namespace {

namespace fs = std::filesystem;

struct Output {
    int code;
    std::string out;
    std::string err;
};

Output run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "extsum");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("extsum_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
    }
    return {};
}

TEST(ConfigIo, TextFormatBytes) {
    const ConfigFile f{Configuration::from_rows(2, std::vector<double>{1.0, 0.0, 0.0, -1.0}), {}};
    EXPECT_EQ(format_config(f, ConfigFormat::text), "2 2\n1 0\n0 -1\n");
}

TEST(ConfigIo, RoundTripIsExact) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 9);
        const int n = 1 + static_cast<int>(rng() % 12);
        const ConfigFile f{gen_random_uniform(d, n, rng()), {"random_uniform", 5}};
        for (auto fmt : {ConfigFormat::text, ConfigFormat::json}) {
            std::vector<std::string> warnings;
            const ConfigFile back = parse_config(format_config(f, fmt), &warnings);
            EXPECT_EQ(back.config, f.config);
            EXPECT_TRUE(warnings.empty());
        }
        const ConfigFile back = parse_config(format_config(f, ConfigFormat::json));
        EXPECT_EQ(back.metadata.generator, std::optional<std::string>("random_uniform"));
        EXPECT_EQ(back.metadata.seed, std::optional<std::uint64_t>(5));
    }
}

TEST(ConfigIo, RenormalizationWindow) {
    std::vector<std::string> warnings;
    const ConfigFile ok = parse_config("2 1\n1.0000000001 0\n", &warnings);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_DOUBLE_EQ(ok.config.row(0)[0], 1.0);
    warnings.clear();
    parse_config("2 1\n1.0000000000001 0\n", &warnings);
    EXPECT_TRUE(warnings.empty());
    EXPECT_THROW(parse_config("2 1\n1.00001 0\n"), PreconditionError);
    EXPECT_THROW(parse_config("2 1\n0 0\n"), PreconditionError);
}

TEST(ConfigIo, MalformedInput) {
    EXPECT_THROW(parse_config(""), IoError);
    EXPECT_THROW(parse_config("2 2\n1 0\n"), IoError);
    EXPECT_THROW(parse_config("2 1\n1 0 5\n"), IoError);
    EXPECT_THROW(parse_config("2 1\n1 x\n"), IoError);
    EXPECT_THROW(parse_config("{\"d\": 2, \"vectors\": [[1, 0, 0]]}"), IoError);
    EXPECT_THROW(parse_config("{\"d\": 2"), IoError);
    EXPECT_THROW(read_config_file("/nonexistent/extsum/cfg"), IoError);
}

TEST(Csv, RowFormat) {
    ResultRow r{2, 3, 2, "exact", std::sqrt(3.0), 0, 0, 1.25, "exhaustive", {}};
    EXPECT_EQ(format_csv_row(r), "2,3,2,exact,1.7320508075688772,0,0,1.250,exhaustive");
    r.error = "need 1 <= k <= n, got \"5\"";
    EXPECT_EQ(format_csv_row(r), "2,3,2,exact,,0,0,1.250,\"error: need 1 <= k <= n, got \"\"5\"\"\"");
}

TEST(IntRange, Forms) {
    EXPECT_EQ(parse_int_range("4"), (std::vector<int>{4}));
    EXPECT_EQ(parse_int_range("2..4,7"), (std::vector<int>{2, 3, 4, 7}));
    EXPECT_THROW(parse_int_range("4..2"), PreconditionError);
    EXPECT_THROW(parse_int_range("a"), PreconditionError);
}

TEST_F(CliTest, GenSimplexReloads) {
    const auto o = run_cli({"gen", "--kind", "simplex", "--d", "3", "-o", path("s.cfg")});
    ASSERT_EQ(o.code, 0) << o.err;
    const ConfigFile f = read_config_file(path("s.cfg"));
    ASSERT_EQ(f.config.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_NEAR(dot(f.config.row(i), f.config.row(j)), i == j ? 1.0 : -1.0 / 3.0, 1e-12);
}

TEST_F(CliTest, GenIsDeterministic) {
    const auto a = run_cli({"gen", "--kind", "random", "--d", "4", "--n", "7", "--seed", "3"});
    const auto b = run_cli({"gen", "--kind", "random", "--d", "4", "--n", "7", "--seed", "3"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = run_cli({"gen", "--kind", "random", "--d", "4", "--n", "7", "--seed", "3", "-o", path("r.json")});
    ASSERT_EQ(j.code, 0);
    EXPECT_EQ(read_config_file(path("r.json")).config, parse_config(a.out).config);
}

TEST_F(CliTest, GenPolygon) {
    const auto o = run_cli({"gen", "--kind", "polygon", "--n", "6", "--k", "3", "-o", path("p.cfg")});
    ASSERT_EQ(o.code, 0);
    const ConfigFile f = read_config_file(path("p.cfg"));
    EXPECT_EQ(f.config.size(), 6u);
    EXPECT_EQ(f.config.dim(), 2u);
}

TEST_F(CliTest, GenPolygonPrecondition) {
    const auto o = run_cli({"gen", "--kind", "polygon", "--n", "5", "--k", "3"});
    EXPECT_EQ(o.code, kExitPrecondition);
    EXPECT_NE(o.err.find("(k-1) must divide n"), std::string::npos);
}

TEST_F(CliTest, SolveSimplexPair) {
    ASSERT_EQ(run_cli({"gen", "--kind", "simplex", "--d", "2", "-o", path("s.cfg")}).code, 0);
    const auto o = run_cli({"solve", "--config", path("s.cfg"), "--k", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(std::stod(field(o.out, "value")), std::sqrt(3.0), 1e-12);
    EXPECT_EQ(field(o.out, "selection"), "+1 -2");
    EXPECT_EQ(field(o.out, "certificate"), "exhaustive");
    const auto j = run_cli({"solve", "--config", path("s.cfg"), "--k", "2", "--json"});
    EXPECT_NE(j.out.find("\"indices\""), std::string::npos);
}

TEST_F(CliTest, SolveMethodsAgreeAndBang) {
    ASSERT_EQ(run_cli({"gen", "--kind", "random", "--d", "2", "--n", "9", "--seed", "4", "-o", path("r.cfg")}).code, 0);
    const auto ex = run_cli({"solve", "--config", path("r.cfg"), "--k", "4", "--method", "exact"});
    const auto pl = run_cli({"solve", "--config", path("r.cfg"), "--k", "4", "--method", "planar"});
    EXPECT_NEAR(std::stod(field(ex.out, "value")), std::stod(field(pl.out, "value")), 1e-9);
    const auto bang = run_cli({"solve", "--config", path("r.cfg"), "--k", "9", "--method", "bang"});
    ASSERT_EQ(bang.code, 0) << bang.err;
    EXPECT_GE(std::stod(field(bang.out, "value")), 3.0 - 1e-9);
    const auto cap = run_cli({"solve", "--config", path("r.cfg"), "--k", "4", "--method", "cap-greedy"});
    ASSERT_EQ(cap.code, 0);
    EXPECT_LE(std::stod(field(cap.out, "value")), std::stod(field(ex.out, "value")) + 1e-12);
}

TEST_F(CliTest, SolveErrors) {
    ASSERT_EQ(run_cli({"gen", "--kind", "random", "--d", "3", "--n", "40", "-o", path("big.cfg")}).code, 0);
    const auto budget = run_cli({"solve", "--config", path("big.cfg"), "--k", "20"});
    EXPECT_EQ(budget.code, kExitBudget);
    EXPECT_NE(budget.err.find("cap-greedy"), std::string::npos);
    EXPECT_EQ(run_cli({"solve", "--config", path("big.cfg"), "--k", "3", "--method", "planar"}).code,
              kExitPrecondition);
    EXPECT_EQ(run_cli({"solve", "--config", path("missing.cfg"), "--k", "3"}).code, kExitIo);
    EXPECT_EQ(run_cli({"solve", "--k", "3"}).code, kExitPrecondition);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kExitPrecondition);
}

TEST_F(CliTest, BoundsTable) {
    const auto a = run_cli({"bounds", "--d", "3", "--n", "4", "--k", "2"});
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("welch_pair_lower"), std::string::npos);
    EXPECT_NE(a.out.find("1.63299316186"), std::string::npos);
    const auto b = run_cli({"bounds", "--d", "2", "--n", "6", "--k", "3"});
    EXPECT_NE(b.out.find("2.64575131106"), std::string::npos);
    const auto c = run_cli({"bounds", "--d", "4", "--n", "1000", "--k", "3", "--json"});
    EXPECT_NE(c.out.find("\"general_lower\""), std::string::npos);
    EXPECT_NE(c.out.find("\"value\": 2.50077988246754"), std::string::npos);
    EXPECT_EQ(run_cli({"bounds", "--d", "3", "--n", "4", "--k", "5"}).code, kExitPrecondition);
}

TEST_F(CliTest, MinimaxAppendsDeterministicRows) {
    const std::vector<std::string> args = {"minimax", "--d", "2", "--n", "3", "--k", "2", "--restarts", "2",
                                           "--iters", "100", "-o", path("res.csv"), "--config-out", path("best.json")};
    ASSERT_EQ(run_cli(args).code, 0);
    ASSERT_EQ(run_cli(args).code, 0);
    std::istringstream csv(slurp(path("res.csv")));
    std::string header, r1, r2;
    std::getline(csv, header);
    std::getline(csv, r1);
    std::getline(csv, r2);
    EXPECT_EQ(header, std::string(kCsvHeader));
    auto strip_runtime = [](const std::string& row) {
        std::vector<std::string> f;
        std::stringstream ss(row);
        for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
        f.at(7).clear();
        return f;
    };
    EXPECT_EQ(strip_runtime(r1), strip_runtime(r2));
    EXPECT_NEAR(std::stod(strip_runtime(r1).at(4)), std::sqrt(3.0), 1e-9);
    const ConfigFile best = read_config_file(path("best.json"));
    EXPECT_NEAR(max_over_selections(best.config, 2).value, std::sqrt(3.0), 1e-9);

    const auto o = run_cli({"minimax", "--d", "2", "--n", "2", "--k", "2", "--restarts", "1", "--iters", "20"});
    EXPECT_NEAR(std::stod(field(o.out, "value")), std::sqrt(2.0), 1e-7);
}

TEST_F(CliTest, TableRowsAndErrors) {
    const auto o = run_cli({"table", "--d-range", "2", "--n-range", "2..6", "--k-range", "2..4", "--methods",
                            "exact,bounds", "-o", path("t.csv")});
    ASSERT_EQ(o.code, 0) << o.err;
    std::istringstream csv(slurp(path("t.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, std::string(kCsvHeader));
    int rows = 0;
    int errors = 0;
    std::map<int, double> last_exact;
    while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
        const int n = std::stoi(f[1]);
        const int k = std::stoi(f[2]);
        if (k > n) {
            EXPECT_NE(line.find("error:"), std::string::npos);
            ++errors;
            continue;
        }
        const double v = std::stod(f[4]);
        if (f[3] == "exact") {
            EXPECT_GE(v, std::sqrt(k) - 1e-9);
            EXPECT_LE(v, k + 1e-12);
            if (last_exact.count(n)) EXPECT_GE(v, last_exact[n] - 1e-12);
            last_exact[n] = v;
        }
    }
    EXPECT_EQ(rows, 30);
    EXPECT_EQ(errors, 2 * 3);  // (n,k) = (2,3), (2,4), (3,4)
    EXPECT_EQ(run_cli({"table", "--d-range", "2", "--n-range", "3", "--k-range", "2", "-o", "/nonexistent/x.csv"}).code,
              kExitIo);
}

}  // namespace
}  // namespace extsum::cli
