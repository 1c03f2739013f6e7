#include <wortho/json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace wortho;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(WORTHO_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("wortho_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

const char* gegenbauer(double lambda, double eta) {
    static std::string s;
    char buf[128];
    std::snprintf(buf, sizeof buf, "'{\"kind\":\"builtin\",\"name\":\"gegenbauer_eta\",\"lambda\":%g,\"eta\":%g}'", lambda, eta);
    s = buf;
    return s.c_str();
}

} // namespace

TEST_F(CliTest, CoeffsExampleOne) {
    const CliRun r = cli("coeffs --measure one_minus_x --n 6");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"m", "beta_hat", "alpha_hat", "rho_hat"}));
    const double printed_beta[] = {-0.4244132, -0.3029978, -0.2398161, -0.2003582, -0.1730831, -0.1529639};
    const double printed_alpha[] = {0.2229581, 0.2408213, 0.2455306, 0.2473987, 0.2483152};
    for (int m = 1; m <= 6; ++m) EXPECT_NEAR(std::stod(rows[m + 1][1]), printed_beta[m - 1], 5e-7);
    for (int m = 2; m <= 6; ++m) EXPECT_NEAR(std::stod(rows[m + 1][2]), printed_alpha[m - 2], 5e-7);
    EXPECT_EQ(rows[2][2], "");
}

TEST_F(CliTest, CoeffsChebyshevUAndLebesgue) {
    const CliRun r = cli(std::string("coeffs --n 8 --measure ") + gegenbauer(1, 0));
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    for (int m = 2; m <= 8; ++m) EXPECT_NEAR(std::stod(rows[m + 1][2]), 0.25, 1e-12);
    const auto leb = csv_rows(cli("coeffs --n 4 --measure lebesgue").out);
    for (int m = 1; m <= 4; ++m) EXPECT_NEAR(std::stod(leb[m + 1][1]), 0.0, 1e-14);
}

TEST_F(CliTest, CoeffsJsonRoundtrip) {
    const fs::path out = dir / "t.json";
    ASSERT_EQ(cli("coeffs --n 5 --format json --out " + out.string()).status, 0);
    const RecurrenceTable t = json::parse(slurp(out)).get<RecurrenceTable>();
    EXPECT_EQ(t.N, 5);
    EXPECT_NEAR(t.beta(1), -0.4244131815783876, 1e-14);
}

TEST_F(CliTest, ConfigFileFlagsWin) {
    const fs::path cfg = dir / "c.json";
    std::ofstream(cfg) << R"({"measure":{"kind":"builtin","name":"lebesgue"},"n":3,"format":"json"})";
    const CliRun r = cli("coeffs --config " + cfg.string() + " --format csv");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(std::stod(rows[2][3]), std::numbers::pi / 8, 1e-12);
}

TEST_F(CliTest, MeasureFromFile) {
    const fs::path m = dir / "m.json";
    std::ofstream(m) << R"({"kind":"expression","weight":"1 - x"})";
    const auto rows = csv_rows(cli("coeffs --n 2 --measure " + m.string()).out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_NEAR(std::stod(rows[2][1]), -0.4244131815783876, 1e-12);
}

TEST_F(CliTest, ZerosAndEval) {
    const auto z = csv_rows(cli("zeros --m 4").out);
    ASSERT_EQ(z.size(), 5u);
    EXPECT_EQ(z[0], (std::vector<std::string>{"k", "x", "theta", "residual"}));
    EXPECT_NEAR(std::stod(z[3][1]), -0.0055075, 1e-5);

    const auto e = csv_rows(cli("eval --m 1 --x 0").out);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_NEAR(std::stod(e[1][1]), 0.4244132, 5e-8);

    const fs::path out = dir / "f.json";
    ASSERT_EQ(cli("eval --m 3 --format json --out " + out.string()).status, 0);
    const OmegaFunction f = json::parse(slurp(out))["function"].get<OmegaFunction>();
    EXPECT_EQ(f.degree_bound(), 3);
}

TEST_F(CliTest, QuadAndVerblunsky) {
    const auto q = csv_rows(cli("quad --m 3").out);
    ASSERT_EQ(q.size(), 4u);
    EXPECT_EQ(q[0], (std::vector<std::string>{"k", "x", "lambda", "lambda_hat", "lambda_tilde"}));
    double sum = 0.0;
    for (int k = 1; k <= 3; ++k) sum += std::stod(q[k][4]);
    EXPECT_NEAR(sum, std::numbers::pi / 2, 1e-10);

    const fs::path out = dir / "v.json";
    ASSERT_EQ(cli("verblunsky --n 6 --t 0 0.3 0.9 --format json --out " + out.string()).status, 0);
    const auto seqs = json::parse(slurp(out)).get<std::vector<VerblunskySeq>>();
    ASSERT_EQ(seqs.size(), 3u);
    for (const auto& v : seqs)
        for (const cplx& a : v.a) EXPECT_LT(std::abs(a), 1.0);
}

TEST_F(CliTest, PlotWithZeroMarkers) {
    const fs::path out = dir / "p.svg";
    ASSERT_EQ(cli("plot --orders 3 4 --zeros --out " + out.string()).status, 0);
    const std::string svg = slurp(out);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    std::size_t polylines = 0, circles = 0;
    for (std::size_t p = 0; (p = svg.find("<polyline", p)) != std::string::npos; ++p) ++polylines;
    for (std::size_t p = 0; (p = svg.find("<circle", p)) != std::string::npos; ++p) ++circles;
    EXPECT_EQ(polylines, 2u);
    EXPECT_EQ(circles, 7u);

    const std::string flat = cli("plot --orders 0").out;
    const std::size_t start = flat.find("points=\"");
    ASSERT_NE(start, std::string::npos);
    const std::string pts = flat.substr(start + 8, flat.find('"', start + 8) - start - 8);
    std::istringstream in(pts);
    std::string pair;
    std::set<std::string> ys;
    while (in >> pair) ys.insert(pair.substr(pair.find(',') + 1));
    EXPECT_EQ(ys.size(), 1u);
}

TEST_F(CliTest, VerifyExitCodes) {
    EXPECT_EQ(cli("verify orthogonality --n 8 --tol 1e-10").status, 0);
    const CliRun bad = cli("verify quadrature --tol 1e-15");
    EXPECT_EQ(bad.status, 1);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(cli("verify nope").status, 2);

    const fs::path out = dir / "r.json";
    ASSERT_EQ(cli(std::string("verify chain --out ") + out.string() + " --measure " + gegenbauer(1, 0)).status, 0);
    const json j = json::parse(slurp(out));
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["reports"][0]["seed"], "0x5EED");
}

TEST_F(CliTest, UsageAndNumericErrors) {
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("coeffs --n 0").status, 2);
    EXPECT_EQ(cli("coeffs --n 41").status, 2);
    EXPECT_EQ(cli("coeffs --format xml").status, 2);
    EXPECT_EQ(cli("coeffs --measure nowhere.json").status, 2);
    EXPECT_EQ(cli("coeffs --measure '{\"kind\":\"expression\",\"weight\":\"1 + y\"}'").status, 2);
    EXPECT_EQ(cli("verify --seed xyz").status, 2);
    EXPECT_EQ(cli("zeros --m 20 --n 12").status, 2);
    const std::string hard = "'{\"kind\":\"expression\",\"weight\":\"abs(x - 0.3)^(-0.5)\",\"quad\":{\"panels\":4,\"max_refinements\":3}}'";
    EXPECT_EQ(cli("coeffs --n 3 --measure " + hard).status, 3);
}
