#include <doctest.h>

#include <entrimur/io.hpp>
#include <entrimur/rng.hpp>
#include <entrimur/spin.hpp>
#include <entrimur/version.hpp>

#include "helpers.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

using namespace entrimur;
using testutil::random_observable;

TEST_CASE("observable json roundtrip") {
  Rng rng(71);
  Observable o = random_observable(rng, 3, 4);
  Observable back = observable_from_json(observable_to_json(o));
  CHECK(back.dim == o.dim);
  CHECK(back.outcomes == o.outcomes);
  REQUIRE(back.size() == o.size());
  for (std::size_t x = 0; x < o.size(); ++x)
    CHECK(approx_equal(back.effects[x], o.effects[x], 1e-14));
}

TEST_CASE("multi observable json roundtrip") {
  BiObservable m = m_gamma(0.3);
  MultiObservable back = multi_from_json(multi_to_json(m));
  CHECK(back.dim == m.dim);
  CHECK(back.outcome_sets == m.outcome_sets);
  REQUIRE(back.size() == m.size());
  for (std::size_t k = 0; k < m.size(); ++k)
    CHECK(approx_equal(back.effects[k], m.effects[k], 1e-14));
}

TEST_CASE("state json roundtrip") {
  Rng rng(72);
  State s{3, rng.random_density(3)};
  State back = state_from_json(state_to_json(s));
  CHECK(back.dim == 3);
  CHECK(approx_equal(back.rho, s.rho, 1e-14));
}

TEST_CASE("file roundtrip") {
  Observable o = spin_component(0, 0, 1);
  const std::string path = "io_test_observable.json";
  save_observable(o, path);
  Observable back = load_observable(path);
  for (std::size_t x = 0; x < o.size(); ++x)
    CHECK(approx_equal(back.effects[x], o.effects[x], 1e-14));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_observable("definitely_missing_file.json"), std::runtime_error);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS(observable_from_json("this is not json"));
  CHECK_THROWS(observable_from_json("{\"dim\": 2}"));
  // Valid json, invalid matrix shape.
  CHECK_THROWS_AS(
      observable_from_json(
          "{\"dim\": 2, \"outcomes\": [\"a\"], \"effects\": [[[1, 0]]]}"),
      std::invalid_argument);
  // Effects that do not sum to the identity fail validation.
  CHECK_THROWS_AS(
      observable_from_json("{\"dim\": 1, \"outcomes\": [\"a\"], "
                           "\"effects\": [[[[0.5, 0]]]]}"),
      std::invalid_argument);
}

TEST_CASE("formatting") {
  CHECK(format_sig(0.5) == "0.5");
  CHECK(format_sig(0.110081) == "0.110081");
  CHECK(format_sig(1.0) == "1");
  CHECK(format_sig(-0.25) == "-0.25");

  SolverConfig cfg;
  std::string header = header_record(cfg);
  CHECK(header.find(kVersion) != std::string::npos);
  CHECK(header.find("seed=") != std::string::npos);
  CHECK(header.rfind("# ", 0) == 0);
}
