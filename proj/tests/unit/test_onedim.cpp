#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "onedim_oracles.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "vass_asym/errors.hpp"
#include "vass_asym/onedim.hpp"

using namespace vass;
using onedim::BsccClass;
using onedim::Label;
using oracle::brute_inventory;
using oracle::hamiltonian;
using oracle::named_graph;
using oracle::oracle_bsccs;
using oracle::zero_mean;

namespace {

VassMdp parse(const std::string& s) { return parse_vass(s); }

// Two nondeterministic states with a +1/-1 cycle and a -1 escape.
VassMdp two_cycle() {
  return parse(R"({"dimension":1,"states":[{"name":"a","kind":"nondet"},{"name":"b","kind":"nondet"}],
    "transitions":[{"id":"ab","from":"a","update":[1],"to":"b"},{"id":"ba","from":"b","update":[-1],"to":"a"},
                   {"id":"bb","from":"b","update":[-1],"to":"b"}]})");
}

VassMdp minus_loop() {
  return parse(R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"t","from":"p","update":[-1],"to":"p"}]})");
}

}  // namespace

TEST_CASE("random walk BSCC is unbounded zero") {
  const auto m = testing::random_walk();
  const auto s = default_md_strategy(m);
  const auto b = graph::bottom_sccs(m, s).front();
  const auto a = onedim::analyze_bscc(m, s, b);
  CHECK(a.cls == BsccClass::UnboundedZero);
  CHECK(a.drift == 0);
  CHECK(a.stationary == std::vector<Rational>{1});
  CHECK_FALSE(a.potential);
  CHECK_FALSE(onedim::detect_increasing(m));
  CHECK_FALSE(onedim::detect_bounded_zero(m));
  const auto uz = onedim::detect_unbounded_zero(m);
  REQUIRE(uz);
  CHECK(uz->witness.cls == BsccClass::UnboundedZero);
}

TEST_CASE("random walk labels") {
  const auto m = testing::random_walk();
  const auto rep = onedim::classify_onedim(
      m, {ComplexityMeasure::termination(), ComplexityMeasure::counter_of(0), ComplexityMeasure::transition_count("t_plus")},
      4);
  REQUIRE(rep.types.size() == 1);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].label == Label::TightQuadratic);
  REQUIRE(rep.entries[0].witness);
  CHECK(rep.entries[0].witness->cls == BsccClass::UnboundedZero);
  CHECK(rep.entries[1].label == Label::TightLinear);
  CHECK(rep.entries[2].label == Label::TightQuadratic);
  for (const auto& e : rep.entries) CHECK_FALSE(e.ambiguous);
}

TEST_CASE("bounded zero cycle and decreasing loop") {
  const auto m = two_cycle();
  CHECK_FALSE(onedim::detect_increasing(m));
  const auto bz = onedim::detect_bounded_zero(m);
  REQUIRE(bz);
  CHECK(bz->witness.cls == BsccClass::BoundedZero);
  CHECK(bz->transitions.size() == 2);
  CHECK_FALSE(onedim::detect_unbounded_zero(m));
  const auto rep = onedim::classify_onedim(m, {ComplexityMeasure::termination(), ComplexityMeasure::transition_count("bb")}, 2);
  CHECK(rep.entries[0].label == Label::Unbounded);
  CHECK(rep.entries[1].label == Label::UpperLinear);
  CHECK(rep.entries[1].ambiguous);

  const auto d = minus_loop();
  const auto rd = onedim::classify_onedim(d, {ComplexityMeasure::termination(), ComplexityMeasure::transition_count("t")}, 2);
  CHECK(rd.entries[0].label == Label::TightLinear);
  CHECK(rd.entries[1].label == Label::UpperLinear);
  CHECK_FALSE(rd.entries[1].ambiguous);
}

TEST_CASE("zero detectors require the absence of increasing BSCCs") {
  const auto m = parse(R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"up","from":"p","update":[1],"to":"p"},{"id":"down","from":"p","update":[-1],"to":"p"}]})");
  const auto inc = onedim::detect_increasing(m);
  REQUIRE(inc);
  CHECK(inc->witness.cls == BsccClass::Increasing);
  CHECK(inc->witness.strategy.choice.at("p") == "up");
  CHECK_THROWS_AS(onedim::detect_bounded_zero(m), PreconditionViolated);
  CHECK_THROWS_AS(onedim::detect_unbounded_zero(m), PreconditionViolated);
}

TEST_CASE("analyze_bscc rejects non-bottom sets") {
  const auto m = two_cycle();
  MdStrategy s{{{"a", "ab"}, {"b", "bb"}}};
  const graph::Bscc wrong{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(onedim::analyze_bscc(m, s, wrong), NotABottomScc);
}

TEST_CASE("transition outside MECs and unvisited MECs") {
  const auto m = parse(R"({"dimension":1,"states":[{"name":"a","kind":"nondet"},{"name":"b","kind":"nondet"},{"name":"c","kind":"nondet"}],
    "transitions":[{"id":"aa","from":"a","update":[-1],"to":"a"},{"id":"ab","from":"a","update":[0],"to":"b"},
                   {"id":"ac","from":"a","update":[0],"to":"c"},{"id":"bb","from":"b","update":[-1],"to":"b"},
                   {"id":"cc","from":"c","update":[-1],"to":"c"}]})");
  const auto rep = onedim::classify_onedim(
      m, {ComplexityMeasure::transition_count("ab"), ComplexityMeasure::transition_count("cc")}, 2);
  // Types: (a), (b), (c), (a,b), (a,c).
  REQUIRE(rep.types.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(rep.entries[i].label == Label::UpperTypeLength);
    CHECK(rep.entries[i].type_length == rep.types[i].mecs.size());
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const bool visits_c = std::count(rep.types[i].mecs.begin(), rep.types[i].mecs.end(), 2) > 0;
    CHECK(rep.entries[5 + i].label == (visits_c ? Label::UpperLinear : Label::TightZero));
  }
}

TEST_CASE("detectors and labels agree with brute-force enumeration") {
  std::mt19937_64 rng(20261019);
  testing::RandomModelOptions opt;
  opt.min_states = 2;
  opt.max_states = 5;
  opt.strongly_connected = false;
  std::size_t checked = 0, with_inc = 0, with_bz = 0, with_uz = 0;
  for (int iter = 0; iter < 240; ++iter) {
    opt.strongly_connected = iter % 3 == 0;
    // Every other instance favours zero-drift behaviour.
    const bool zeroish = iter % 2 == 1;
    opt.min_update = zeroish ? -1 : -3;
    opt.max_update = zeroish ? 1 : 3;
    opt.prob_state_share = zeroish ? 0.8 : 0.5;
    const auto m = iter % 4 == 3 ? zero_mean(testing::random_model(rng, opt), rng) : testing::random_model(rng, opt);
    CAPTURE(serialize_vass(m));
    const auto mecs = graph::mec_decomposition(m);
    const auto want = brute_inventory(m, mecs);

    std::vector<onedim::MecProfile> profiles;
    for (std::size_t i = 0; i < mecs.size(); ++i) profiles.push_back(onedim::profile_mec(m, mecs, i));
    const auto got = onedim::inventory_from_profiles(m, profiles);
    CHECK(got.increasing == want.increasing);
    CHECK(got.bounded_zero == want.bounded_zero);
    CHECK(got.unbounded_zero == want.unbounded_zero);
    CHECK(got.bz_transition == want.bz_transition);
    CHECK(got.uz_transition == want.uz_transition);

    const bool any_inc = std::count(want.increasing.begin(), want.increasing.end(), true) > 0;
    CHECK(onedim::detect_increasing(m).has_value() == any_inc);
    if (any_inc) {
      ++with_inc;
      CHECK_THROWS_AS(onedim::detect_bounded_zero(m), PreconditionViolated);
    } else {
      const bool any_bz = std::count(want.bounded_zero.begin(), want.bounded_zero.end(), true) > 0;
      const bool any_uz = std::count(want.unbounded_zero.begin(), want.unbounded_zero.end(), true) > 0;
      with_bz += any_bz;
      with_uz += any_uz;
      const auto bz = onedim::detect_bounded_zero(m);
      const auto uz = onedim::detect_unbounded_zero(m);
      CHECK(bz.has_value() == any_bz);
      CHECK(uz.has_value() == any_uz);
      if (bz) CHECK(oracle_bsccs(m, bz->witness.strategy).size() > 0);
    }

    std::vector<ComplexityMeasure> measures{ComplexityMeasure::termination(), ComplexityMeasure::counter_of(0)};
    for (std::size_t t = 0; t < m.num_transitions(); ++t) measures.push_back(ComplexityMeasure::transition_count(m.transition(t).id));
    const auto rep = onedim::classify_onedim(m, measures, 3);
    std::size_t e = 0;
    for (const auto& f : measures) {
      for (std::size_t ti = 0; ti < rep.types.size(); ++ti, ++e) {
        const auto expect = onedim::label_for(m, mecs, rep.types[ti], ti, f, want);
        CHECK(rep.entries[e].label == expect.label);
        CHECK(rep.entries[e].ambiguous == expect.ambiguous);
        if (rep.entries[e].witness) {
          // Witness class must match what the oracle sees on that BSCC.
          bool found = false;
          for (const auto& b : oracle_bsccs(m, rep.entries[e].witness->strategy)) {
            if (b.states == rep.entries[e].witness->bscc.states) {
              found = true;
              CHECK(b.cls == rep.entries[e].witness->cls);
            }
          }
          CHECK(found);
        }
      }
    }
    ++checked;
  }
  CHECK(checked >= 200);
  // The sample must exercise every class.
  CHECK(with_inc > 10);
  CHECK(with_bz > 5);
  CHECK(with_uz > 5);
}

TEST_CASE("energy answers") {
  CHECK(onedim::energy_safe(two_cycle()).kind == onedim::EnergyAnswer::Kind::Safe);
  CHECK(onedim::energy_safe(minus_loop()).kind == onedim::EnergyAnswer::Kind::Unsafe);
  CHECK(onedim::energy_safe(testing::random_walk()).kind == onedim::EnergyAnswer::Kind::Unsafe);
  const auto k3 = onedim::hamiltonian_reduction(named_graph(3, {{0, 1}, {1, 2}, {0, 2}}), "v0");
  const auto ans = onedim::energy_safe(k3);
  CHECK(ans.kind == onedim::EnergyAnswer::Kind::Safe);
  // K3 has +2 cycles avoiding v0, so the detector path does not apply.
  CHECK(ans.method == "brute-force");
  const auto safe = onedim::energy_safe(two_cycle());
  CHECK(safe.method == "bounded-zero-detector");
}

TEST_CASE("hamiltonian gadget matches Held-Karp") {
  std::vector<onedim::UndirectedGraph> graphs;
  graphs.push_back(named_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  graphs.push_back(named_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  for (int n = 3; n <= 6; ++n) {
    std::vector<std::pair<int, int>> path;
    for (int i = 0; i + 1 < n; ++i) path.emplace_back(i, i + 1);
    graphs.push_back(named_graph(n, path));
  }
  const std::vector<std::pair<int, int>> petersen{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                  {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  std::mt19937_64 rng(7);
  for (int sample = 0; sample < 40; ++sample) {
    std::vector<int> keep{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(keep.begin(), keep.end(), rng);
    const std::size_t n = 5 + rng() % 4;
    keep.resize(n);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < n; ++i) pos[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : petersen) {
      if (pos.count(a) && pos.count(b) && rng() % 5 != 0) edges.emplace_back(pos[a], pos[b]);
    }
    // Random chords make Hamiltonian instances likely.
    for (int extra = rng() % 8; extra > 0; --extra) {
      const int a = rng() % n, b = rng() % n;
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      if (std::find_if(edges.begin(), edges.end(), [&](auto e) { return std::minmax(e.first, e.second) == key; }) ==
          edges.end()) {
        edges.emplace_back(a, b);
      }
    }
    graphs.push_back(named_graph(n, edges));
  }
  std::size_t yes = 0;
  for (const auto& g : graphs) {
    const bool expect = hamiltonian(g);
    yes += expect;
    for (const auto& p : g.vertices) {
      const auto m = onedim::hamiltonian_reduction(g, p);
      CAPTURE(serialize_vass(m));
      const auto w = onedim::find_nondecreasing_bscc(m, m.state_index(p));
      CHECK(w.has_value() == expect);
    }
  }
  CHECK(yes >= 5);
  CHECK(yes < graphs.size());
}

TEST_CASE("hamiltonian reduction input checks") {
  const auto g = named_graph(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(onedim::hamiltonian_reduction(g, "zz"), VertexNotInGraph);
  auto loop = g;
  loop.edges.emplace_back("v0", "v0");
  CHECK_THROWS_AS(onedim::hamiltonian_reduction(loop, "v0"), ValidationError);
  auto dup = g;
  dup.edges.emplace_back("v1", "v0");
  CHECK_THROWS_AS(onedim::hamiltonian_reduction(dup, "v0"), ValidationError);
  const auto parsed = onedim::parse_graph(R"({"vertices":["x","y","z"],"edges":[["x","y"],["y","z"],["x","z"]]})");
  CHECK(parsed.vertices.size() == 3);
  CHECK(parsed.edges.size() == 3);
  CHECK_THROWS_AS(onedim::parse_graph(R"({"vertices":["x"]})"), SchemaError);
  const auto m = onedim::hamiltonian_reduction(named_graph(4, {{0, 1}, {1, 2}}), "v0");
  CHECK(m.num_transitions() == 5);  // isolated v3 gets a loop
}

TEST_CASE("strategy enumeration bound") {
  const auto m = testing::four_mecs();
  CHECK(onedim::count_md_strategies(m) == 3);
  CHECK_THROWS_AS(onedim::brute_force_classify(minus_loop(), 0), TooManyStrategies);
  CHECK(onedim::brute_force_classify(two_cycle()).size() == 2);
}
