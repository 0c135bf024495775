#include <doctest.h>

#include <functional>
#include <random>

#include "fixtures.hpp"
#include "random_models.hpp"
#include "vass_asym/errors.hpp"
#include "vass_asym/report.hpp"
#include "vass_asym/verify.hpp"

using namespace vass;
using nlohmann::json;

namespace {

json analyze_all(const VassMdp& m) {
  return report::analyze(m, report::all_measures(m), report::kDefaultMaxTypeLength);
}

// Applies `edit` to a copy of the report and expects the verifier to reject it.
void expect_rejected(const VassMdp& m, const json& rep, const std::function<void(json&)>& edit) {
  REQUIRE(verify::verify_report(m, rep).ok());
  json bad = rep;
  edit(bad);
  REQUIRE(bad != rep);
  CHECK_FALSE(verify::verify_report(m, bad).ok());
}

json& estimate_for(json& rep, const std::string& measure, int type) {
  for (auto& e : rep["estimates"])
    if (e["measure"] == measure && e["type"] == type) return e;
  throw std::runtime_error("no estimate " + measure);
}

json& type_with(json& rep, const std::vector<std::string>& mecs) {
  for (auto& t : rep["types"])
    if (t["mecs"] == json(mecs)) return t;
  throw std::runtime_error("no such type");
}

}  // namespace

TEST_CASE("model digest") {
  const auto a = testing::four_mecs();
  const auto d = report::model_digest(a);
  CHECK(d.rfind("fnv1a64:", 0) == 0);
  CHECK(d.size() == 8 + 16);
  CHECK(report::model_digest(parse_vass(serialize_vass(a))) == d);
  CHECK(report::model_digest(testing::random_walk()) != d);
}

TEST_CASE("measure list") {
  const auto m = testing::four_mecs();
  const auto fs = report::all_measures(m);
  CHECK(fs.size() == 1 + m.dimension() + m.transitions().size());
}

TEST_CASE("mecs and types reports") {
  const auto m = testing::four_mecs();
  const auto mecs = report::mecs_report(m);
  REQUIRE(mecs["mecs"].size() == 4);
  CHECK(mecs["mecs"][0]["id"] == "M1");
  CHECK(mecs["dag_like"] == true);
  CHECK(verify::verify_report(m, mecs).ok());

  const auto types = report::types_report(m, report::kDefaultMaxTypeLength);
  CHECK(types["types"].size() == 7);
  const auto v = verify::verify_report(m, types);
  CHECK(v.ok());
  CHECK(v.checked > 0);
}

TEST_CASE("analyze random walk") {
  const auto m = testing::random_walk();
  auto rep = analyze_all(m);
  CHECK(rep["engine"] == "one-dimensional");
  CHECK(rep["overall"]["L"] == "TightQuadratic");
  CHECK(rep["overall"]["C:1"] == "TightLinear");
  CHECK(rep["overall"]["T:t_minus"] == "TightQuadratic");
  CHECK(rep["overall"]["T:t_plus"] == "TightQuadratic");
  CHECK(estimate_for(rep, "L", 0)["witness"]["class"] == "UnboundedZero");
  CHECK(rep["attestation"]["failures"].empty());
  CHECK(rep["attestation"]["witnesses_checked"].get<int>() > 0);
  CHECK(analyze_all(m) == rep);
}

TEST_CASE("analyze four-MEC example, counter 3") {
  const auto m = testing::four_mecs();
  auto rep = report::analyze(m, {parse_measure("C:3", m)}, report::kDefaultMaxTypeLength);
  CHECK(rep["engine"] == "counter-pipeline");
  const auto idx = [&](std::vector<std::string> t) { return type_with(rep, t)["index"].get<int>(); };
  CHECK(estimate_for(rep, "C:3", idx({"M1", "M2"}))["label"] == "LowerQuadratic");
  CHECK(estimate_for(rep, "C:3", idx({"M1", "M3"}))["label"] == "TightLinear");
  const auto& e14 = estimate_for(rep, "C:3", idx({"M1", "M4"}));
  CHECK(e14["label"] == "LowerQuadratic");
  CHECK(e14["beyond_quadratic"] == true);
  CHECK(verify::verify_report(m, rep).ok());
}

TEST_CASE("non DAG-like models are out of scope") {
  const auto m = testing::non_dag();
  CHECK_THROWS_AS(report::analyze(m, report::all_measures(m), 3), NotDagLike);
  CHECK_THROWS_WITH(report::analyze(m, report::all_measures(m), 3), doctest::Contains("not DAG-like"));
}

TEST_CASE("verifier rejects tampered witnesses") {
  const auto m2 = testing::four_mecs();
  const auto rep2 = report::analyze(m2, {parse_measure("C:3", m2)}, report::kDefaultMaxTypeLength);
  const auto rep1 = analyze_all(testing::random_walk());
  const auto m1 = testing::random_walk();

  SUBCASE("reach certificate value") {
    expect_rejected(m2, rep2, [](json& r) {
      type_with(r, {"M1", "M2"})["steps"][0]["certificate"]["values"]["m1_a"] = "1/2";
    });
  }
  SUBCASE("reach certificate strategy") {
    expect_rejected(m2, rep2, [](json& r) {
      type_with(r, {"M1", "M2"})["steps"][0]["certificate"]["strategy"]["m1_a"] = "a_to_q";
    });
  }
  SUBCASE("type weight") {
    expect_rejected(m2, rep2, [](json& r) { type_with(r, {"M1", "M4"})["weight"] = "1"; });
  }
  SUBCASE("multicycle solution") {
    expect_rejected(m2, rep2, [](json& r) {
      for (auto& e : r["estimates"])
        if (!e["steps"].empty()) {
          auto& x = e["steps"][0]["multicycle"]["x"];
          x[x.begin().key()] = "7";
          return;
        }
    });
  }
  SUBCASE("ranking function") {
    expect_rejected(m2, rep2, [](json& r) {
      for (auto& e : r["estimates"])
        if (!e["steps"].empty()) {
          for (auto& y : e["steps"][0]["ranking"]["y"]) y = "0";
          return;
        }
    });
  }
  SUBCASE("claimed MEC") {
    expect_rejected(m2, rep2, [](json& r) { r["mecs"][0]["states"] = json::array({"m1_a"}); });
  }
  SUBCASE("stationary distribution") {
    expect_rejected(m1, rep1, [](json& r) { estimate_for(r, "L", 0)["witness"]["stationary"]["p"] = "1/2"; });
  }
  SUBCASE("drift") {
    expect_rejected(m1, rep1, [](json& r) { estimate_for(r, "L", 0)["witness"]["drift"] = "1"; });
  }
  SUBCASE("class") {
    expect_rejected(m1, rep1, [](json& r) { estimate_for(r, "L", 0)["witness"]["class"] = "BoundedZero"; });
  }
  SUBCASE("profile multicycle") {
    expect_rejected(m1, rep1, [](json& r) { r["mec_profiles"][0]["multicycle"]["x"]["t_plus"] = "2"; });
  }
}

TEST_CASE("energy report") {
  const auto up = parse_vass(R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"t","from":"p","update":[1],"to":"p"},{"id":"u","from":"p","update":[-1],"to":"p"}]})");
  const auto rep = report::energy_report(up, 1000);
  CHECK(rep["answer"] == "Safe");
  CHECK(verify::verify_report(up, rep).ok());
  REQUIRE_FALSE(rep["witness"].is_null());
  expect_rejected(up, rep, [](json& r) { r["witness"]["drift"] = "-1"; });
  CHECK(report::energy_report(testing::random_walk(), 1000)["answer"] == "Unsafe");
}

TEST_CASE("random models attest") {
  std::mt19937_64 rng(77);
  for (std::size_t d : {1u, 2u}) {
    testing::RandomModelOptions opt;
    opt.dimension = d;
    opt.max_states = 4;
    for (int i = 0; i < 25; ++i) {
      const auto m = testing::random_model(rng, opt);
      const auto rep = report::analyze(m, report::all_measures(m), 3);
      CHECK(rep["attestation"]["failures"].empty());
      CHECK(verify::verify_report(m, rep).ok());
    }
  }
}

TEST_CASE("text rendering carries the JSON data") {
  const auto rep = analyze_all(testing::random_walk());
  const auto text = report::render_text(rep);
  CHECK(text.find("TightQuadratic") != std::string::npos);
  CHECK(text.find(rep["model_digest"].get<std::string>()) != std::string::npos);
  CHECK(text.find("unbounded-zero-bscc-in-type") != std::string::npos);
}
