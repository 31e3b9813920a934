#include <catch2/catch_amalgamated.hpp>

#include "hgops/serialization.hpp"

using namespace hgops;

TEST_CASE("series JSON schema round trip") {
  TrialRng rng(13, 0);
  std::vector<cplx> c(25);
  for (auto& x : c) x = rng.complex_gaussian() * 1e3;
  c[7] = cplx(1.0 / 3.0, -2.0e-17);
  const PowerSeries f(c);

  const json j = series_to_json(f);
  REQUIRE(j.at("degree").get<std::size_t>() == 24);
  const PowerSeries g = series_from_json(j);
  REQUIRE(g.degree() == f.degree());
  for (std::size_t k = 0; k < f.size(); ++k) {
    REQUIRE(g.at(k) == f.at(k));  // lossless: exact double round trip
  }

  // a second trip through text
  const PowerSeries h = series_from_json(json::parse(j.dump()));
  for (std::size_t k = 0; k < f.size(); ++k) REQUIRE(h.at(k) == f.at(k));
}

TEST_CASE("series JSON validation") {
  json bad;
  bad["degree"] = 2;
  bad["re"] = {1.0, 2.0};
  bad["im"] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(series_from_json(bad), domain_error);
  CHECK_THROWS_AS(series_from_json(json::object()), domain_error);
}

TEST_CASE("csv emitters") {
  SECTION("profile csv has the documented header") {
    LipschitzProfile prof;
    prof.n_min = 4;
    prof.n_max = 5;
    prof.block_norms = {4.0, 5.656854249492381};
    prof.normalized = {1.0, 1.0};
    const std::string csv = profile_to_csv(prof);
    CHECK(csv.rfind("n,block_norm,normalized\n", 0) == 0);
    CHECK(csv.find("4,4,1\n") != std::string::npos);
  }
  SECTION("ladder csv") {
    CompactnessResult res;
    res.N_list = {4, 16};
    res.values = {0.5, 0.25};
    const std::string csv = ladder_to_csv(res);
    CHECK(csv.rfind("N,estimate\n", 0) == 0);
    CHECK(csv.find("16,0.25\n") != std::string::npos);
  }
  SECTION("hs csv uses 1-based K") {
    const std::string csv = hs_to_csv({1.0, 1.5});
    CHECK(csv == "K,partial_sum\n1,1\n2,1.5\n");
  }
  SECTION("doubles are emitted round-trippably") {
    CsvWriter w({"x"});
    w.row({1.0 / 3.0});
    const std::string s = w.str();
    const double parsed = std::stod(s.substr(s.find('\n') + 1));
    CHECK(parsed == 1.0 / 3.0);
  }
}

TEST_CASE("space JSON") {
  const json jh = space_to_json(SpaceParams::hardy(2.5));
  CHECK(jh.at("kind") == "hardy");
  CHECK(jh.at("alpha").is_null());
  const json jb = space_to_json(SpaceParams::bergman(2, -0.5));
  CHECK(jb.at("alpha").get<double>() == -0.5);
}
