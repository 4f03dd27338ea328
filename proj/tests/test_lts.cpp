#include "cfsub/gen.hpp"
#include "cfsub/lts.hpp"
#include "cfsub/syntax.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfsub;

TEST_CASE("transitions of the core constructors") {
  auto out_int = transitions(parse_type("!int"));
  REQUIRE(out_int.size() == 2);
  CHECK(equal(out_int.at(act_msg_payload(Polarity::Out)), base("int")));
  CHECK(equal(out_int.at(act_msg_cont(Polarity::Out)), skip()));

  CHECK(transitions(skip()).empty());

  auto lin = transitions(parse_type("unit -o unit"));
  REQUIRE(lin.size() == 3);
  CHECK(equal(lin.at(act_dom()), unit()));
  CHECK(equal(lin.at(act_rng()), unit()));
  CHECK(equal(lin.at(act_lin()), skip()));
  CHECK(transitions(parse_type("unit -> unit")).count(act_lin()) == 0);
}

TEST_CASE("sequencing distributes over choices in the LTS") {
  TypePtr s = parse_type("!int");
  TypePtr r = parse_type("?bool");
  TypePtr t = seq(choice(View::Internal, {{"Nil", skip()}, {"Node", s}}), r);
  auto tr = transitions(t);
  REQUIRE(tr.size() == 3);
  CHECK(equal(tr.at(act_choice_default(View::Internal)), skip()));
  CHECK(equal(tr.at(act_choice_field(View::Internal, "Nil")), seq(skip(), r)));
  CHECK(equal(tr.at(act_choice_field(View::Internal, "Node")), seq(s, r)));
}

TEST_CASE("unravel normalizes heads") {
  CHECK(equal(unravel(parse_type("skip ; !unit")), parse_type("!unit")));
  CHECK(equal(unravel(parse_type("end ; !unit")), end()));
  TypePtr loop = parse_type("rec s . !unit ; s");
  TypePtr unrolled = unravel(loop);
  const auto* sq = as<TSeq>(unrolled);
  REQUIRE(sq != nullptr);
  CHECK(equal(sq->head, msg(Polarity::Out, unit())));
  CHECK(equal(sq->tail, loop));
  CHECK(equal(unravel(unrolled), unrolled));
}

TEST_CASE("transitions agree with transitions of the unraveling") {
  for (unsigned seed = 0; seed < 150; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size = 12;
    TypePtr t = random_type(cfg);
    auto a = transitions(t);
    auto b = transitions(unravel(t));
    REQUIRE(a.size() == b.size());
    for (const auto& [act, der] : a) {
      REQUIRE(b.count(act) == 1);
      CHECK(equal(der, b.at(act)));
    }
  }
}

TEST_CASE("classification of the subtyping label sets") {
  auto zset = classify_subtyping(act_msg_payload(Polarity::Out));
  CHECK_FALSE(zset.in_x);
  CHECK_FALSE(zset.in_y);
  CHECK(zset.in_z);
  CHECK(zset.in_w);

  auto lin = classify_subtyping(act_lin());
  CHECK(lin.in_x);
  CHECK_FALSE(lin.in_y);
  CHECK_FALSE(lin.in_z);
  CHECK_FALSE(lin.in_w);

  auto pick = classify_subtyping(act_choice_field(View::Internal, "k"));
  CHECK_FALSE(pick.in_x);
  CHECK(pick.in_y);
  CHECK_FALSE(pick.in_z);
  CHECK_FALSE(pick.in_w);
}

TEST_CASE("class structure over a representative action sample") {
  std::vector<Action> base_actions = {
      act_unit(),       act_base("int"),
      act_rng(),        act_rcd_default(),
      act_vrt_default(), act_msg_payload(Polarity::In),
      act_msg_cont(Polarity::In), act_msg_cont(Polarity::Out),
      act_choice_default(View::Internal), act_choice_default(View::External),
      act_end()};
  for (const Action& a : base_actions) {
    auto c = classify_subtyping(a);
    CHECK(c.in_x);
    CHECK(c.in_y);
    CHECK_FALSE(c.in_z);
    CHECK_FALSE(c.in_w);
  }
  // Z and W coincide on every action
  std::vector<Action> all = base_actions;
  all.push_back(act_dom());
  all.push_back(act_lin());
  all.push_back(act_msg_payload(Polarity::Out));
  all.push_back(act_rcd_field("l"));
  all.push_back(act_vrt_field("l"));
  all.push_back(act_choice_field(View::Internal, "l"));
  all.push_back(act_choice_field(View::External, "l"));
  for (const Action& a : all) {
    auto c = classify_subtyping(a);
    CHECK(c.in_z == c.in_w);
    auto b = classify_bisimulation(a);
    CHECK(b.in_x);
    CHECK(b.in_y);
    CHECK_FALSE(b.in_z);
    CHECK_FALSE(b.in_w);
  }
  // field labels live in exactly one of X/Y
  for (const Action& a : {act_rcd_field("l"), act_vrt_field("l"),
                          act_choice_field(View::Internal, "l"),
                          act_choice_field(View::External, "l")}) {
    auto c = classify_subtyping(a);
    CHECK(c.in_x != c.in_y);
  }
}

TEST_CASE("determinism: one derivative per action") {
  // maps enforce this shape; spot-check a type whose branches overlap
  auto tr = transitions(fixtures::stree());
  CHECK(tr.size() == 3);
}
