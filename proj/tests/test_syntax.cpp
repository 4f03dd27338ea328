#include "cfsub/gen.hpp"
#include "cfsub/syntax.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfsub;

TEST_CASE("parse basics") {
  CHECK(equal(parse_type("skip"), skip()));
  CHECK(equal(parse_type("!int ; ?bool"),
              seq(msg(Polarity::Out, base("int")), msg(Polarity::In, base("bool")))));

  TypePtr stree = fixtures::stree();
  const auto* r = as<TRec>(stree);
  REQUIRE(r != nullptr);
  const auto* c = as<TChoice>(r->body);
  REQUIRE(c != nullptr);
  CHECK(c->view == View::Internal);
  CHECK(c->branches.size() == 2);
  CHECK(equal(c->branches.at("Nil"), skip()));
  // Node: s ; !int ; s with ';' right-associated
  CHECK(equal(c->branches.at("Node"),
              seq(tvar(r->var), seq(msg(Polarity::Out, base("int")), tvar(r->var)))));
}

TEST_CASE("parse precedence and arrows") {
  // ';' binds tighter than arrows; arrows associate to the right
  TypePtr t = parse_type("skip ; end -> unit -> unit");
  const auto* a = as<TArrow>(t);
  REQUIRE(a != nullptr);
  CHECK(a->mult == Multiplicity::Un);
  CHECK(is<TSeq>(a->dom));
  CHECK(is<TArrow>(a->rng));

  TypePtr lin = parse_type("unit -o unit");
  CHECK(as<TArrow>(lin)->mult == Multiplicity::Lin);

  CHECK(is<TRecord>(parse_type("{}")));
  CHECK(is<TVariant>(parse_type("<A: unit>")));
  CHECK_THROWS_AS(parse_type("+{}"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_type("+{A: skip,\n B: }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
  CHECK_THROWS_AS(parse_type("!"), ParseError);
  CHECK_THROWS_AS(parse_type("{A: unit"), ParseError);
  CHECK_THROWS_AS(parse_type("unit unit"), ParseError);
}

TEST_CASE("duplicate binders are freshened at parse time") {
  TypePtr t = parse_type("(rec s . !int ; s) ; (rec s . ?int ; s)");
  const auto* sq = as<TSeq>(t);
  REQUIRE(sq != nullptr);
  const auto* r1 = as<TRec>(sq->head);
  const auto* r2 = as<TRec>(sq->tail);
  REQUIRE(r1 != nullptr);
  REQUIRE(r2 != nullptr);
  CHECK(r1->var != r2->var);
  CHECK(well_formed(t));
}

TEST_CASE("print basics") {
  CHECK(print_type(skip()) == "skip");
  CHECK(print_type(msg(Polarity::Out, base("int"))) == "!int");
  CHECK(print_type(seq(seq(skip(), end()), skip())) == "(skip ; end) ; skip");
}

TEST_CASE("print/parse round-trip on generated types") {
  for (unsigned seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size = 1 + seed % 20;
    TypePtr t = random_type(cfg);
    std::string text = print_type(t);
    CAPTURE(text);
    TypePtr back = parse_type(text);
    CHECK(equal(t, back));
  }
}
