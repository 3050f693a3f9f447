#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "prodkernel/errors.hpp"
#include "prodkernel/table.hpp"

using namespace prodkernel;

TEST(Table, CsvRoundTripWithQuotes) {
    Table t({"name", "value"});
    t.add_row({std::string("a,b"), 0.1});
    t.add_row({std::string("say \"hi\""), 1e-300});
    t.add_row({std::string("plain"), std::numeric_limits<double>::infinity()});
    const Table u = parse_csv(to_csv(t));
    ASSERT_EQ(u.num_rows(), 3u);
    EXPECT_EQ(u.text(0, 0), "a,b");
    EXPECT_EQ(u.text(1, 0), "say \"hi\"");
    EXPECT_EQ(u.number(0, 1), 0.1);
    EXPECT_EQ(u.number(1, 1), 1e-300);
    EXPECT_TRUE(std::isinf(u.number(2, 1)));
}

TEST(Table, FormatIsShortestRoundTrip) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(3.0), "3");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Table, Errors) {
    Table t({"a"});
    EXPECT_THROW(t.add_row({1.0, 2.0}), DimensionError);
    EXPECT_THROW(t.column("b"), ParameterError);
    EXPECT_THROW(parse_csv("a\n\"open"), ParseError);
    EXPECT_THROW(parse_csv("a,b\n1\n"), ParseError);
    t.add_row({std::string("x")});
    EXPECT_THROW(t.number(0, 0), ParseError);
    EXPECT_THROW(write_csv(Table({"a"}), std::filesystem::temp_directory_path() / "pk_empty.csv"), ParameterError);
    EXPECT_THROW(write_csv(t, "/nonexistent_dir/pk/x.csv"), IoError);
}

TEST(Table, SvgHasOnePolylinePerSeries) {
    Table t({"n", "err", "kernel"});
    for (int n = 1; n <= 3; ++n) {
        t.add_row({static_cast<double>(n), std::pow(10.0, -n), std::string("a<b")});
        t.add_row({static_cast<double>(n), std::pow(10.0, -2 * n), std::string("c")});
    }
    const std::string svg = to_svg(t, {"n", "err", "kernel", "Errors", false, true});
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
    EXPECT_EQ(count, 2u);
    EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
    EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos, true);
}
