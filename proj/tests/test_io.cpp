#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "hitmix/constructors.hpp"
#include "hitmix/error.hpp"
#include "hitmix/io.hpp"
#include "support.hpp"

using namespace hitmix;
using namespace hitmix::test;
using nlohmann::json;

TEST_CASE("chain JSON round trip preserves pi and the profile") {
  Chain c = three_state_tight(0.25, 0.05);
  json j = chain_to_json(c);
  Chain back = chain_from_json(j);
  CHECK((back.pi() - c.pi()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(back.labels() == c.labels());
  HittingProfile p1 = t_profile(c);
  HittingProfile p2 = t_profile(back);
  REQUIRE(p1.breakpoints().size() == p2.breakpoints().size());
  for (std::size_t i = 0; i < p1.breakpoints().size(); ++i) {
    CHECK(p1.breakpoints()[i].measure ==
          doctest::Approx(p2.breakpoints()[i].measure).epsilon(1e-12));
    CHECK(p1.breakpoints()[i].value ==
          doctest::Approx(p2.breakpoints()[i].value).epsilon(1e-12));
  }
}

TEST_CASE("loading applies validation and recomputes pi") {
  std::istringstream bad_rows(R"({"P": [[0.6, 0.6], [1.0, 0.0]]})");
  CHECK_THROWS_AS(static_cast<void>(load_chain(bad_rows)), Error);
  std::istringstream reducible(R"({"P": [[1.0, 0.0], [0.5, 0.5]]})");
  CHECK_THROWS_AS(static_cast<void>(load_chain(reducible)), Error);
  std::istringstream garbage("not json");
  CHECK_THROWS_AS(static_cast<void>(load_chain(garbage)), Error);
  std::istringstream ragged(R"({"P": [[1.0], [0.5, 0.5]]})");
  CHECK_THROWS_AS(static_cast<void>(load_chain(ragged)), Error);
}

TEST_CASE("spec JSON round trip") {
  HittableStepSpec spec;
  spec.alphas = {0.4, 0.2};
  spec.lambdas = {1.0, 2.0};
  spec.epsilon = 0.05;
  spec.big_n = 1e4;
  HittableStepSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.alphas == spec.alphas);
  CHECK(back.lambdas == spec.lambdas);
  CHECK(back.epsilon == spec.epsilon);
  CHECK(back.big_n == spec.big_n);

  json bad = spec_to_json(spec);
  bad["lambdas"] = {5.0, 5.0};  // violates hittability
  CHECK_THROWS_AS(static_cast<void>(spec_from_json(bad)), Error);
}

TEST_CASE("profile CSV carries the breakpoint rows") {
  Chain c = make_chain({{0.5, 0.5}, {0.5, 0.5}});
  std::string csv = profile_to_csv(t_profile(c));
  CHECK(csv.find("alpha_threshold,value") == 0);
  CHECK(csv.find("0.5,2") != std::string::npos);
  CHECK(csv.find("1,0") != std::string::npos);
}

TEST_CASE("report JSON keys") {
  InequalityReport r = leq_report("demo", 1.0, 2.0, "w");
  json j = report_to_json(r);
  CHECK(j["name"] == "demo");
  CHECK(j["lhs"] == 1.0);
  CHECK(j["rhs"] == 2.0);
  CHECK(j["slack"] == 1.0);
  CHECK(j["holds"] == true);
  CHECK(j["applicable"] == true);
  CHECK(j["witness"] == "w");
}
