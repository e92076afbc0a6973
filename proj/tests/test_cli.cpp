#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <omegares/touchstone.hpp>

#include "../tools/cli_app.hpp"

namespace fs = std::filesystem;
using omegares::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("omegares_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SynthFitRoundTrip) {
    ASSERT_EQ(call({"synth", "--out", path("t.s2p")}).code, 0);
    const auto r = call({"fit", "--mode", "transmission", "--in", path("t.s2p")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["q0"].get<double>(), 74.0, 0.074);
    EXPECT_NEAR(j["beta"].get<double>(), 11.5, 0.0115);
    EXPECT_NEAR(j["nu0_hz"].get<double>(), 2.93e9, 2.93e6);
    EXPECT_EQ(j["source"], path("t.s2p"));
    EXPECT_TRUE(j["converged"].get<bool>());
}

TEST_F(CliTest, ReflectionRoundTripToFile) {
    ASSERT_EQ(call({"synth", "--mode", "reflection", "--q0", "70", "--beta", "8.3", "--out", path("r.s1p")}).code, 0);
    const auto r = call({"fit", "--mode", "reflection", "--in", path("r.s1p"), "--out", path("fit.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto j = nlohmann::json::parse(slurp(path("fit.json")));
    EXPECT_NEAR(j["beta"].get<double>(), 8.3, 8.3e-3);
    EXPECT_EQ(j["branch"], "overcoupled");
}

TEST_F(CliTest, SynthMinimumAtResonance) {
    ASSERT_EQ(call({"synth", "--points", "401", "--out", path("t.s2p")}).code, 0);
    const auto t = omegares::touchstone::parse_touchstone(slurp(path("t.s2p"))).trace;
    std::size_t imin = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(t.data()[i].s11) < std::abs(t.data()[imin].s11)) imin = i;
    EXPECT_NEAR(t.frequencies()[imin], 2.93e9, 1e-6);
    EXPECT_NEAR(omegares::sparams::db_magnitude(t.data()[imin].s11), -27.6, 0.05);
}

TEST_F(CliTest, SynthTwoPointsGivesTwoRows) {
    const auto r = call({"synth", "--points", "2"});
    ASSERT_EQ(r.code, 0);
    const auto t = omegares::touchstone::parse_touchstone(r.out).trace;
    EXPECT_EQ(t.size(), 2u);
}

TEST_F(CliTest, SameSeedSameBytes) {
    const auto a = call({"synth", "--noise", "0.01", "--seed", "7"});
    const auto b = call({"synth", "--noise", "0.01", "--seed", "7"});
    const auto c = call({"synth", "--noise", "0.01", "--seed", "8"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST_F(CliTest, SynthMatchesGolden) {
    const auto r = call({"synth", "--points", "11"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(fs::path(OMEGARES_GOLDEN_DIR) / "two_port_ma_ghz.s2p"));
}

TEST_F(CliTest, PiPower) {
    const auto r = call({"nv", "pi-power", "--tpi", "50ns", "--efficiency", "2230"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.049 W\n");
}

TEST_F(CliTest, DesignPresets) {
    const auto a = call({"design", "--preset", "reference"});
    const auto b = call({"design", "--preset", "paper"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_NEAR(j["routes"]["strip"]["coupling_by_impedance"]["value"].get<double>(), 12.5, 0.2);
    const auto t = call({"design", "--format", "table"});
    EXPECT_NE(t.out.find("transmission line"), std::string::npos);
    const auto none = nlohmann::json::parse(call({"design", "--z-external", "none"}).out);
    EXPECT_FALSE(none["routes"].contains("external"));
}

TEST_F(CliTest, DesignSweep) {
    const auto r = call({"design", "--sweep-widths", "1mm,3mm"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 2u);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(call({"fit", "--mode", "sideways", "--in", "x.s2p"}).code, 1);
    EXPECT_EQ(call({"no-such-command"}).code, 1);
    EXPECT_EQ(call({"--help"}).code, 0);
    EXPECT_EQ(call({"fit", "--mode", "transmission", "--in", path("missing.s2p")}).code, 2);

    std::ofstream(path("flat.s1p")) << "# GHz S MA R 50\n1 0.5 0\n2 0.5 0\n3 0.5 0\n4 0.5 0\n5 0.5 0\n6 0.5 0\n";
    EXPECT_EQ(call({"fit", "--mode", "reflection", "--in", path("flat.s1p")}).code, 2);

    ASSERT_EQ(call({"synth", "--noise", "0.02", "--out", path("n.s2p")}).code, 0);
    const auto r = call({"fit", "--mode", "transmission", "--in", path("n.s2p"), "--max-iterations", "1"});
    EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, ConvertKeepsData) {
    ASSERT_EQ(call({"synth", "--points", "21", "--out", path("a.s2p")}).code, 0);
    ASSERT_EQ(call({"convert", "--in", path("a.s2p"), "--format", "RI", "--unit", "MHz", "--out", path("b.s2p")}).code,
              0);
    const auto a = omegares::touchstone::parse_touchstone(slurp(path("a.s2p"))).trace;
    const auto b = omegares::touchstone::parse_touchstone(slurp(path("b.s2p"))).trace;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.frequencies()[i], b.frequencies()[i], 1e-3);
        EXPECT_NEAR(std::abs(a.data()[i].s21 - b.data()[i].s21), 0.0, 1e-9);
    }
    EXPECT_NE(slurp(path("b.s2p")).find("# MHZ S RI R 50"), std::string::npos);
}

TEST_F(CliTest, FitCsvSidecar) {
    ASSERT_EQ(call({"synth", "--out", path("t.s2p")}).code, 0);
    ASSERT_EQ(call({"fit", "--mode", "transmission", "--in", path("t.s2p"), "--csv", path("plot.csv")}).code, 0);
    const std::string csv = slurp(path("plot.csv"));
    EXPECT_EQ(csv.rfind("frequency_hz,s11_db,s21_db,model_s11_db,model_s21_db\n", 0), 0u);
}

TEST_F(CliTest, GlobBatch) {
    ASSERT_EQ(call({"synth", "--q0", "60", "--out", path("a.s2p")}).code, 0);
    ASSERT_EQ(call({"synth", "--q0", "90", "--out", path("b.s2p")}).code, 0);
    const auto r = call({"fit", "--mode", "transmission", "--glob", path("*.s2p")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["results"][path("a.s2p")]["q0"].get<double>(), 60.0, 0.06);
    EXPECT_NEAR(j["results"][path("b.s2p")]["q0"].get<double>(), 90.0, 0.09);
}

TEST_F(CliTest, OpticsAndNv) {
    const auto o = call({"optics"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("restriction_factor: "), std::string::npos);
    const auto s = call({"nv", "splitting", "--field", "8.5mT"});
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("476.000 MHz"), std::string::npos);
    EXPECT_EQ(call({"nv", "splitting", "--field", "8.5GHz"}).code, 1);
}
