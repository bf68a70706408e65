#include <sstream>

#include "doctest.h"
#include "iqofdm/config.hpp"
#include "iqofdm/harness.hpp"

using namespace iqofdm;

TEST_CASE("grids") {
  CHECK(parse_grid("0:2:30").size() == 16);
  CHECK(parse_grid("0:2:30").back() == 30.0);
  CHECK(parse_grid("0:1:30").size() * parse_grid("-6:0.5:6").size() == 775);
  CHECK(parse_grid("0:0.1:1").size() == 11);
  CHECK(parse_grid("5, 10,15") == std::vector<double>{5, 10, 15});
  CHECK(parse_grid("7.5") == std::vector<double>{7.5});
  CHECK(parse_grid("0:4:10") == std::vector<double>{0, 4, 8});
  CHECK_THROWS_AS((void)parse_grid("0:0:5"), ConfigError);
  CHECK_THROWS_AS((void)parse_grid("a:b"), ConfigError);
  CHECK_THROWS_AS((void)parse_grid(""), ConfigError);
}

TEST_CASE("key = value parsing") {
  std::istringstream in("# comment\n\nn = 64\n  theta_deg=10 # trailing\nscheme = ideal, none\n");
  const KeyValues kv = parse_key_values(in);
  CHECK(kv.at("n") == "64");
  CHECK(kv.at("theta_deg") == "10");
  const SimConfig cfg = apply_key_values(kv);
  CHECK(cfg.ofdm.n == 64);
  CHECK(cfg.theta_deg == 10.0);
  CHECK(cfg.schemes == std::vector<Scheme>{Scheme::ideal, Scheme::none});

  std::istringstream dup("n = 64\nn = 32\n");
  CHECK_THROWS_AS((void)parse_key_values(dup), ConfigError);
  std::istringstream bad("just words\n");
  CHECK_THROWS_AS((void)parse_key_values(bad), ConfigError);
  CHECK_THROWS_AS((void)apply_key_values({{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS((void)apply_key_values({{"n", "sixty"}}), ConfigError);
  CHECK_THROWS_AS((void)load_key_values("/nonexistent/file.cfg"), FileError);
}

TEST_CASE("scalar parsers") {
  CHECK(parse_bool("x", "true"));
  CHECK_FALSE(parse_bool("x", "0"));
  CHECK_THROWS_AS((void)parse_bool("x", "maybe"), ConfigError);
  CHECK(parse_integer("x", "42") == 42);
  CHECK_THROWS_AS((void)parse_integer("x", "4.2"), ConfigError);
  CHECK_THROWS_AS((void)parse_double("x", "nan"), ConfigError);
  CHECK(split_list(" a, b ,c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("SimConfig validation and warnings") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.warnings().empty());

  SimConfig tight = cfg;
  tight.ofdm.cp_len = 8;
  CHECK_THROWS_AS(tight.validate(), ProfileTooLong);

  SimConfig nt = cfg;
  nt.training_symbols = 4;
  CHECK_FALSE(nt.warnings().empty());

  SimConfig zero = cfg;
  zero.frames = 0;
  CHECK_THROWS_AS(zero.validate(), ConfigError);
  CHECK(parse_scheme("td_ls_fd_ge") == Scheme::td_ls_fd_ge);
  CHECK_THROWS_AS((void)parse_scheme("magic"), ConfigError);
}
