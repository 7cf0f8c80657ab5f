#include <doctest.h>

#include "polyfock/config.hpp"
#include "polyfock/errors.hpp"

using namespace polyfock;

namespace {
std::string message_of(const std::string& text) {
  try {
    Config::parse(text, "t.ini", config_schema());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("sections, comments and typed values") {
    const Config c = Config::parse(
        "# sweep setup\n[sweep]\nn = 2\ndensities = 1.5, 2.5 ; trailing\nmode = sampling\n[run]\nseed = 18446744073709551615\n",
        "t.ini", config_schema());
    CHECK(c.integer("sweep", "n") == 2);
    CHECK(c.reals_or("sweep", "densities", {}) == std::vector<double>{1.5, 2.5});
    CHECK(c.string("sweep", "mode") == "sampling");
    CHECK(c.u64_or("run", "seed", 0) == 18446744073709551615ull);
    CHECK(c.real_or("sweep", "interpolation_radius", 10.0) == 10.0);
    CHECK(c.where("sweep", "mode") == "t.ini:5");
  }

  TEST_CASE("schema violations name the line") {
    CHECK(message_of("[sweep]\nn = 2\nbogus = 1\n").find("t.ini:3") != std::string::npos);
    CHECK(message_of("[nowhere]\n").find("t.ini:1") != std::string::npos);
    CHECK(message_of("[sweep]\nn = 1\nn = 2\n").find("t.ini:3") != std::string::npos);
    CHECK(message_of("[sweep]\nn =\n").find("t.ini:2") != std::string::npos);
    CHECK(message_of("n = 1\n").find("t.ini:1") != std::string::npos);
    CHECK(message_of("[sweep\n").find("t.ini:1") != std::string::npos);
  }

  TEST_CASE("missing keys are named") {
    const Config c = Config::parse("[transform]\ntransform = bargmann\n", "t.ini", config_schema());
    try {
      c.string("transform", "input");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("input") != std::string::npos);
    }
  }

  TEST_CASE("malformed numbers") {
    const Config c = Config::parse("[sweep]\nn = two\ndensities = 1.5, x\n", "t.ini", config_schema());
    CHECK_THROWS_AS(c.integer("sweep", "n"), ConfigError);
    CHECK_THROWS_AS(c.reals_or("sweep", "densities", {}), ConfigError);
    CHECK_THROWS_AS(parse_u64("-1", "seed"), ConfigError);
    CHECK_THROWS_AS(parse_u64("18446744073709551616", "seed"), ConfigError);
  }
}
