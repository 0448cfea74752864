#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "qsep/config.hpp"

using namespace qsep;

TEST_CASE("sectioned key-value parsing")
{
    const std::string text = R"(
# global comment
hbar = 1.0

[fields]
omega1 = 1.5   # trailing comment
omega2 = 2
label = oscillator demo

[grid]
extent = [ -7, 7, -6.5, 6.5 ]
nodes = 128
)";
    const Config cfg = Config::parse(text);
    CHECK(cfg.get_double("", "hbar") == 1.0);
    CHECK(cfg.get_double("fields", "omega1") == 1.5);
    CHECK(cfg.get_int("fields", "omega2") == 2);
    CHECK(cfg.get_string("fields", "label") == "oscillator demo");
    CHECK(cfg.get_int("grid", "nodes") == 128);
    const auto ext = cfg.get_list("grid", "extent");
    REQUIRE(ext.size() == 4);
    CHECK(ext[0] == -7.0);
    CHECK(ext[3] == 6.5);

    CHECK(cfg.has("fields", "omega1"));
    CHECK_FALSE(cfg.has("fields", "omega3"));
    CHECK(cfg.get_double("fields", "omega3", 0.25) == 0.25);
    CHECK(cfg.get_int("grid", "levels", 4) == 4);
    CHECK(cfg.get_string("fields", "case", "auto") == "auto");
}

TEST_CASE("parse errors carry location or field names")
{
    CHECK_THROWS_MATCHES(Config::parse("key value\n"), ConfigParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 1")));
    CHECK_THROWS_MATCHES(Config::parse("\n[broken\n"), ConfigParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 2")));
    CHECK_THROWS_AS(Config::parse("= 3\n"), ConfigParseError);

    const Config cfg = Config::parse("[a]\nx = nope\nn = 1.5\nl = 1, 2\n");
    CHECK_THROWS_MATCHES(cfg.get_double("a", "x"), ConfigParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("x")));
    CHECK_THROWS_MATCHES(cfg.get_int("a", "n"), ConfigParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("n")));
    CHECK_THROWS_AS(cfg.get_list("a", "l"), ConfigParseError);
    CHECK_THROWS_MATCHES(cfg.get_double("a", "missing"), ConfigParseError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("missing")));
}

TEST_CASE("round-trip formatting")
{
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_g17(v)) == v);
    CHECK(format_g17(1.0) == "1");
    CHECK(std::stod(format_g17(-1.2345678901234567e-12)) ==
          -1.2345678901234567e-12);
}
