#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <omegares/resnet.hpp>
#include <omegares/touchstone.hpp>

#include "oracles.hpp"
#include "synthetic.hpp"

using namespace omegares;
using namespace omegares::touchstone;

namespace {

using synthetic::synthetic_one_port;
using synthetic::synthetic_two_port;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void expect_same(const SParamTrace& a, const SParamTrace& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    ASSERT_EQ(a.ports(), b.ports());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_LE(rel(a.frequencies()[i], b.frequencies()[i]), tol);
        const auto& p = a.data()[i];
        const auto& q = b.data()[i];
        EXPECT_LE(std::abs(p.s11 - q.s11), tol * std::abs(q.s11));
        if (a.ports() == 2) {
            EXPECT_LE(std::abs(p.s21 - q.s21), tol * std::abs(q.s21));
            EXPECT_LE(std::abs(p.s12 - q.s12), tol * std::abs(q.s12));
            EXPECT_LE(std::abs(p.s22 - q.s22), tol * std::abs(q.s22));
        }
    }
}

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(ParseTouchstone, SingleDbRow) {
    const auto p = parse_touchstone("# GHz S DB R 50\n2.9 -27.6 0 -0.37 180 -0.37 180 -27.6 0\n");
    ASSERT_EQ(p.trace.size(), 1u);
    EXPECT_EQ(p.trace.ports(), 2);
    EXPECT_DOUBLE_EQ(p.trace.frequencies()[0], 2.9e9);
    EXPECT_NEAR(std::abs(p.trace.data()[0].s11), 0.0417, 1e-4);
    EXPECT_NEAR(std::abs(p.trace.data()[0].s11), 1.0 / 24.0, 2e-4);
    EXPECT_NEAR(p.trace.data()[0].s21.real(), -std::pow(10.0, -0.37 / 20.0), 1e-12);
}

TEST(ParseTouchstone, EmptyDataIsFlagged) {
    const auto p = parse_touchstone("! nothing here\n# GHz S MA R 50\n");
    EXPECT_EQ(p.trace.size(), 0u);
    EXPECT_FALSE(p.warnings.empty());
}

TEST(ParseTouchstone, DefaultOptionLine) {
    const auto p = parse_touchstone("1.5 0.5 90\n2.5 0.25 0\n");
    EXPECT_EQ(p.options.unit, FrequencyUnit::GHz);
    EXPECT_EQ(p.options.format, DataFormat::MA);
    EXPECT_DOUBLE_EQ(p.options.reference_impedance, 50.0);
    EXPECT_EQ(p.trace.ports(), 1);
    EXPECT_DOUBLE_EQ(p.trace.frequencies()[0], 1.5e9);
    EXPECT_NEAR(p.trace.data()[0].s11.imag(), 0.5, 1e-15);
}

TEST(ParseTouchstone, CommentsAndCase) {
    const auto p = parse_touchstone("! header\n#  mhz s ri r 75 ! trailing\n100 0.1 -0.2 ! row comment\n\n200 0.3 0.4\n");
    EXPECT_EQ(p.options.unit, FrequencyUnit::MHz);
    EXPECT_DOUBLE_EQ(p.options.reference_impedance, 75.0);
    EXPECT_DOUBLE_EQ(p.trace.reference_impedance(), 75.0);
    ASSERT_EQ(p.trace.size(), 2u);
    EXPECT_EQ(p.trace.data()[1].s11, sparams::complex(0.3, 0.4));
}

TEST(ParseTouchstone, Errors) {
    EXPECT_THROW(parse_touchstone("# GHz S MA R\n1 1 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S QQ R 50\n1 1 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1 1 0 2\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1 one 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1 1 0\n2 1 0 0 0 0 0 0 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n2 1 0\n1 1 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1 1 0\n1 1 0\n"), ParseError);
}

TEST(ParseTouchstone, ErrorsCarryLineNumbers) {
    try {
        parse_touchstone("# GHz S MA R 50\n1 1 0\n2 x 0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ParseTouchstone, LocaleIndependentDecimalPoint) {
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1,5 1 0\n"), ParseError);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1.5 0,5 0\n"), ParseError);
}

TEST(ParseTouchstone, UnsortedRowsOptIn) {
    ParseOptions o;
    o.tolerate_unsorted = true;
    const auto p = parse_touchstone("# GHz S MA R 50\n3 0.3 0\n1 0.1 0\n2 0.2 0\n", o);
    ASSERT_EQ(p.trace.size(), 3u);
    EXPECT_DOUBLE_EQ(p.trace.frequencies()[0], 1e9);
    EXPECT_NEAR(std::abs(p.trace.data()[2].s11), 0.3, 1e-15);
    EXPECT_FALSE(p.warnings.empty());
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n2 0.3 0\n1 0.1 0\n2 0.2 0\n", o), ParseError);
}

TEST(ParseTouchstone, UnsupportedContent) {
    EXPECT_THROW(parse_touchstone("# GHz Z MA R 50\n1 1 0\n"), UnsupportedFormat);
    EXPECT_THROW(parse_touchstone("# GHz Y MA R 50\n1 1 0\n"), UnsupportedFormat);
    EXPECT_THROW(parse_touchstone("[Version] 2.0\n# GHz S MA R 50\n"), UnsupportedFormat);
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n[Number of Ports] 2\n"), UnsupportedFormat);
}

TEST(ParseTouchstone, ExpectedPortCount) {
    ParseOptions o;
    o.expected_ports = 2;
    EXPECT_THROW(parse_touchstone("# GHz S MA R 50\n1 1 0\n", o), ParseError);
}

TEST(WriteTouchstone, RoundTripAllFormatsAndUnits) {
    const auto two = synthetic_two_port(201);
    const auto one = synthetic_one_port(101);
    for (auto fmt : {DataFormat::DB, DataFormat::MA, DataFormat::RI})
        for (auto unit : {FrequencyUnit::Hz, FrequencyUnit::kHz, FrequencyUnit::MHz, FrequencyUnit::GHz}) {
            expect_same(parse_touchstone(write_touchstone(two, fmt, unit)).trace, two, 1e-9);
            expect_same(parse_touchstone(write_touchstone(one, fmt, unit)).trace, one, 1e-9);
        }
}

TEST(WriteTouchstone, UnitsGiveIdenticalFrequencies) {
    const auto two = synthetic_two_port(51);
    const auto mhz = parse_touchstone(write_touchstone(two, DataFormat::MA, FrequencyUnit::MHz)).trace;
    const auto ghz = parse_touchstone(write_touchstone(two, DataFormat::MA, FrequencyUnit::GHz)).trace;
    for (std::size_t i = 0; i < two.size(); ++i) EXPECT_EQ(mhz.frequencies()[i], ghz.frequencies()[i]);
}

TEST(WriteTouchstone, RealImaginaryRow) {
    sparams::SPoint p;
    p.s11 = {-0.0417, 0.0};
    const std::string text = write_touchstone(SParamTrace({2.93e9}, {p}, 1), DataFormat::RI);
    EXPECT_NE(text.find("# GHZ S RI R 50\n"), std::string::npos);
    EXPECT_NE(text.find("2.930000000000e+00 -4.170000000000e-02 0.000000000000e+00\n"), std::string::npos);
}

TEST(WriteTouchstone, ZeroMagnitudeInDb) {
    sparams::SPoint p;
    const std::string text = write_touchstone(SParamTrace({1e9}, {p}, 1), DataFormat::DB);
    const auto back = parse_touchstone(text).trace;
    EXPECT_LT(std::abs(back.data()[0].s11), 1e-19);
}

TEST(WriteTouchstone, GoldenFilesAreByteStable) {
    const auto two = synthetic_two_port(11);
    const auto one = synthetic_one_port(11);
    const std::string dir = OMEGARES_GOLDEN_DIR;
    EXPECT_EQ(write_touchstone(two, DataFormat::MA, FrequencyUnit::GHz), read(dir + "/two_port_ma_ghz.s2p"));
    EXPECT_EQ(write_touchstone(two, DataFormat::DB, FrequencyUnit::MHz), read(dir + "/two_port_db_mhz.s2p"));
    EXPECT_EQ(write_touchstone(one, DataFormat::RI, FrequencyUnit::Hz), read(dir + "/one_port_ri_hz.s1p"));
    EXPECT_EQ(write_csv(two), read(dir + "/two_port.csv"));
    // and they parse back to the generating trace
    expect_same(parse_touchstone(read(dir + "/two_port_db_mhz.s2p")).trace, two, 1e-9);
}

TEST(Csv, RoundTripMagnitudes) {
    const auto two = synthetic_two_port(41);
    const auto back = parse_csv(write_csv(two));
    EXPECT_TRUE(back.magnitude_only());
    EXPECT_EQ(back.ports(), 2);
    for (std::size_t i = 0; i < two.size(); ++i) {
        EXPECT_NEAR(std::abs(back.data()[i].s11) / std::abs(two.data()[i].s11), 1.0, 1e-9);
        EXPECT_NEAR(std::abs(back.data()[i].s21) / std::abs(two.data()[i].s21), 1.0, 1e-9);
    }
}

TEST(Csv, HeaderRequired) {
    EXPECT_THROW(parse_csv("1e9,-3\n"), ParseError);
    EXPECT_THROW(parse_csv("frequency_hz,s11_db\n1e9,-3,4\n"), ParseError);
    EXPECT_THROW(parse_csv("frequency_hz,s11_db\n2e9,-3\n1e9,-3\n"), ParseError);
    EXPECT_EQ(parse_csv("frequency_hz,s11_db\n1e9,-3\n").ports(), 1);
}

TEST(Decibels, Magnitude) {
    EXPECT_DOUBLE_EQ(sparams::db_magnitude({1.0, 0.0}), 0.0);
    EXPECT_NEAR(sparams::db_magnitude({0.0417, 0.0}), -27.6, 0.01);
    EXPECT_NEAR(sparams::db_magnitude({0.0, 0.1}), -20.0, 1e-12);
    EXPECT_TRUE(std::isinf(sparams::db_magnitude({0.0, 0.0})));
    EXPECT_LT(sparams::db_magnitude({0.0, 0.0}), 0.0);
}

TEST(SParamTrace, Validation) {
    sparams::SPoint p;
    EXPECT_THROW(SParamTrace({2e9, 1e9}, {p, p}, 1), DomainError);
    EXPECT_THROW(SParamTrace({1e9}, {p, p}, 1), DomainError);
    EXPECT_THROW(SParamTrace({1e9}, {p}, 3), DomainError);
}
