#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "random_models.hpp"
#include "vass_asym/errors.hpp"
#include "vass_asym/model.hpp"

using namespace vass;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK_THROWS_AS(parse_rational("0.5"), SchemaError);
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK(to_string(parse_rational("3/6")) == "1/2");
  CHECK(scaled_threshold_2_64(Rational(1, 2)) == Integer(1) << 63);
}

TEST_CASE("parse the random walk") {
  const auto m = testing::random_walk();
  CHECK(m.dimension() == 1);
  CHECK(m.num_states() == 1);
  CHECK(m.num_transitions() == 2);
  CHECK(m.is_prob(0));
  CHECK(m.weight(0) == Rational(1, 2));
}

TEST_CASE("validation errors") {
  const char* bad_sum = R"({"dimension":1,"states":[{"name":"p","kind":"prob"}],
    "transitions":[{"id":"a","from":"p","update":[1],"to":"p","prob":"1/2"},
                   {"id":"b","from":"p","update":[-1],"to":"p","prob":"1/4"}]})";
  CHECK_THROWS_AS(parse_vass(bad_sum), ValidationError);

  const char* no_out = R"({"dimension":1,"states":[{"name":"p","kind":"nondet"},{"name":"q","kind":"nondet"}],
    "transitions":[{"id":"a","from":"p","update":[1],"to":"q"}]})";
  CHECK_THROWS_AS(parse_vass(no_out), ValidationError);

  const char* float_prob = R"({"dimension":1,"states":[{"name":"p","kind":"prob"}],
    "transitions":[{"id":"a","from":"p","update":[1],"to":"p","prob":1.0}]})";
  CHECK_THROWS_AS(parse_vass(float_prob), SchemaError);

  const char* prob_on_nondet = R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"a","from":"p","update":[1],"to":"p","prob":"1/1"}]})";
  CHECK_THROWS_AS(parse_vass(prob_on_nondet), ValidationError);

  const char* wrong_len = R"({"dimension":2,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"a","from":"p","update":[1],"to":"p"}]})";
  CHECK_THROWS_AS(parse_vass(wrong_len), ValidationError);

  CHECK_THROWS_AS(parse_vass("{not json"), SchemaError);
  CHECK_THROWS_AS(parse_vass(R"({"dimension":1})"), SchemaError);
}

TEST_CASE("big updates survive a round trip") {
  const char* doc = R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"a","from":"p","update":["123456789012345678901234567890"],"to":"p"}]})";
  const auto m = parse_vass(doc);
  CHECK(m.transition(0).update[0] == Integer("123456789012345678901234567890"));
  CHECK(parse_vass(serialize_vass(m)) == m);
}

TEST_CASE("round trip on random models") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    testing::RandomModelOptions opt;
    opt.dimension = 1 + i % 3;
    const auto m = testing::random_model(rng, opt);
    CHECK(parse_vass(serialize_vass(m)) == m);
  }
}

TEST_CASE("step counter augmentation") {
  const auto m = testing::random_walk();
  const auto all = augment_step_counter(m, StepCounterTarget::every_transition());
  REQUIRE(all.dimension() == 2);
  CHECK(all.transition(all.transition_index("t_plus")).update == std::vector<Integer>{1, 1});
  CHECK(all.transition(all.transition_index("t_minus")).update == std::vector<Integer>{-1, 1});

  const auto only = augment_step_counter(m, StepCounterTarget::only_transition("t_plus"));
  CHECK(only.transition(only.transition_index("t_plus")).update == std::vector<Integer>{1, 1});
  CHECK(only.transition(only.transition_index("t_minus")).update == std::vector<Integer>{-1, 0});

  CHECK(project_counters(all, 1) == m);
  CHECK_THROWS_AS(augment_step_counter(m, StepCounterTarget::only_transition("nope")), UnknownTransition);
}

TEST_CASE("apply an MD strategy") {
  const char* doc = R"({"dimension":1,"states":[{"name":"p","kind":"nondet"}],
    "transitions":[{"id":"dec","from":"p","update":[-1],"to":"p"},{"id":"inc","from":"p","update":[1],"to":"p"}]})";
  const auto m = parse_vass(doc);
  MdStrategy s;
  s.choice["p"] = "inc";
  const auto chain = apply_md_strategy(m, s);
  REQUIRE(chain.num_transitions() == 1);
  CHECK(chain.transition(0).id == "inc");
  CHECK_THROWS_AS(apply_md_strategy(m, MdStrategy{}), IncompleteStrategy);
  MdStrategy wrong;
  wrong.choice["p"] = "zzz";
  CHECK_THROWS_AS(apply_md_strategy(m, wrong), IncompleteStrategy);

  const auto walk = testing::random_walk();
  CHECK(apply_md_strategy(walk, MdStrategy{}) == walk);
}

TEST_CASE("applied chains keep one transition per nondeterministic state") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    testing::RandomModelOptions opt;
    opt.min_states = opt.max_states = 4;
    const auto m = testing::random_model(rng, opt);
    const auto s = default_md_strategy(m);
    const auto chain = apply_md_strategy(m, s);
    std::size_t expected = 0;
    for (std::size_t p = 0; p < m.num_states(); ++p) expected += m.is_prob(p) ? m.out(p).size() : 1;
    CHECK(chain.num_transitions() == expected);
  }
}

TEST_CASE("measures parse against a model") {
  const auto m = testing::random_walk();
  CHECK(parse_measure("L", m) == ComplexityMeasure::termination());
  CHECK(parse_measure("C:1", m) == ComplexityMeasure::counter_of(0));
  CHECK(parse_measure("T:t_plus", m) == ComplexityMeasure::transition_count("t_plus"));
  CHECK(to_string(ComplexityMeasure::counter_of(0)) == "C:1");
  CHECK_THROWS_AS(parse_measure("C:2", m), ValidationError);
  CHECK_THROWS_AS(parse_measure("T:nope", m), UnknownTransition);
}

TEST_CASE("terminal configurations") {
  CHECK(Configuration{"p", {0, 3}}.terminal() == false);
  CHECK(Configuration{"p", {0, -1}}.terminal() == true);
}
