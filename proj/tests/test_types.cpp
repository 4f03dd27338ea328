#include <vector>

#include "cfsub/gen.hpp"
#include "cfsub/syntax.hpp"
#include "cfsub/types.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfsub;

TEST_CASE("substitute replaces free occurrences only") {
  TypePtr hit = substitute(tvar("s"), "s", skip());
  CHECK(equal(hit, skip()));

  TypePtr bound = parse_type("rec s . !unit ; s");
  CHECK(equal(substitute(bound, "s", end()), bound));

  TypePtr open = seq(tvar("s"), msg(Polarity::Out, unit()));
  TypePtr closed = substitute(open, "s", bound);
  CHECK(equal(closed, seq(bound, msg(Polarity::Out, unit()))));
}

TEST_CASE("substitute renames binders to avoid capture") {
  // [ !t / s ] (rec t . ?unit ; s): the binder t must not capture the
  // free t of the replacement
  TypePtr replacement = msg(Polarity::Out, tvar("t"));
  TypePtr body = rec("t", seq(msg(Polarity::In, unit()), tvar("s")));
  TypePtr out = substitute(body, "s", replacement);
  const auto* r = as<TRec>(out);
  REQUIRE(r != nullptr);
  CHECK(r->var != "t");
  CHECK(free_refs(out) == std::set<Ident>{"t"});
}

TEST_CASE("is_terminated") {
  CHECK(is_terminated(skip()));
  CHECK(is_terminated(seq(skip(), rec("s", skip()))));
  CHECK_FALSE(is_terminated(msg(Polarity::Out, unit())));
}

namespace {

// Rule-by-rule derivability search for the terminated judgement, kept
// independent of the implementation: tries Skip, Seq and SRec axioms.
bool terminated_oracle(const TypePtr& t) {
  if (is<TSkip>(t)) return true;
  if (const auto* s = as<TSeq>(t))
    return terminated_oracle(s->head) && terminated_oracle(s->tail);
  if (const auto* r = as<TRec>(t)) return terminated_oracle(r->body);
  return false;
}

// All session-sorted trees up to the given size over a fixed alphabet,
// indexed by size.
std::vector<std::vector<TypePtr>> enumerate_up_to(int max_size) {
  std::vector<std::vector<TypePtr>> by_size(static_cast<std::size_t>(max_size) + 1);
  by_size[1] = {skip(), end(), tvar("a"), tvar("b")};
  for (int size = 2; size <= max_size; ++size) {
    auto& out = by_size[static_cast<std::size_t>(size)];
    for (const TypePtr& sub : by_size[static_cast<std::size_t>(size - 1)]) {
      out.push_back(rec("a", sub));
      out.push_back(rec("b", sub));
      out.push_back(msg(Polarity::Out, sub));
    }
    for (int left = 1; left < size - 1; ++left)
      for (const TypePtr& l : by_size[static_cast<std::size_t>(left)])
        for (const TypePtr& r : by_size[static_cast<std::size_t>(size - 1 - left)])
          out.push_back(seq(l, r));
  }
  return by_size;
}

TypePtr rename_binders(const TypePtr& t, int& counter) {
  if (const auto* r = as<TRec>(t)) {
    Ident fresh = "renamed" + std::to_string(counter++);
    TypePtr body = substitute(r->body, r->var, tvar(fresh));
    return rec(fresh, rename_binders(body, counter));
  }
  if (const auto* s = as<TSeq>(t))
    return seq(rename_binders(s->head, counter), rename_binders(s->tail, counter));
  if (const auto* m = as<TMsg>(t))
    return msg(m->pol, rename_binders(m->payload, counter));
  return t;
}

}  // namespace

TEST_CASE("is_terminated agrees with derivability search on small types") {
  std::size_t mismatches = 0, total = 0;
  for (const auto& bucket : enumerate_up_to(8)) {
    for (const TypePtr& t : bucket) {
      ++total;
      if (is_terminated(t) != terminated_oracle(t)) ++mismatches;
    }
  }
  CHECK(total > 100000);
  CHECK(mismatches == 0);
}

TEST_CASE("is_contractive") {
  CHECK(is_contractive(msg(Polarity::Out, unit()), "s"));
  CHECK_FALSE(is_contractive(seq(tvar("s"), msg(Polarity::Out, unit())), "s"));
  CHECK_FALSE(is_contractive(
      seq(skip(), seq(tvar("s"), msg(Polarity::Out, unit()))), "s"));
}

TEST_CASE("is_contractive is invariant under renaming of bound identifiers") {
  for (unsigned seed = 0; seed < 80; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size = 10;
    TypePtr t = random_type(cfg);
    int counter = 0;
    TypePtr renamed = rename_binders(t, counter);
    CHECK(is_contractive(t, "zz") == is_contractive(renamed, "zz"));
  }
}

TEST_CASE("well_formed rejects the classic failures") {
  auto bad = rec("s", seq(tvar("s"), msg(Polarity::Out, unit())));
  auto diag = check_formation({}, bad);
  REQUIRE(diag.has_value());
  CHECK(diag->rule == "rec-not-contractive");

  auto free_var = check_formation({}, tvar("s"));
  REQUIRE(free_var.has_value());
  CHECK(free_var->rule == "ref-unbound");

  CHECK(well_formed(fixtures::stree()));
}

TEST_CASE("well_formed rejects sort violations and terminated rec bodies") {
  auto func_in_seq = check_formation({}, seq(unit(), skip()));
  REQUIRE(func_in_seq.has_value());
  CHECK(func_in_seq->rule == "sort");

  auto term = check_formation({}, rec("s", seq(skip(), skip())));
  REQUIRE(term.has_value());
  CHECK(term->rule == "rec-terminated");
}

TEST_CASE("unfolding preserves formation for every rec subterm") {
  for (unsigned seed = 100; seed < 160; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size = 14;
    TypePtr t = random_type(cfg);
    REQUIRE(well_formed(t));
    // walk the tree; closed rec subterms must stay well formed when unfolded
    std::vector<TypePtr> stack{t};
    while (!stack.empty()) {
      TypePtr cur = stack.back();
      stack.pop_back();
      if (const auto* r = as<TRec>(cur)) {
        if (free_refs(cur).empty())
          CHECK(well_formed(substitute(r->body, r->var, cur)));
        stack.push_back(r->body);
      } else if (const auto* s = as<TSeq>(cur)) {
        stack.push_back(s->head);
        stack.push_back(s->tail);
      } else if (const auto* a = as<TArrow>(cur)) {
        stack.push_back(a->dom);
        stack.push_back(a->rng);
      } else if (const auto* m = as<TMsg>(cur)) {
        stack.push_back(m->payload);
      } else if (const auto* c = as<TChoice>(cur)) {
        for (const auto& [_, b] : c->branches) stack.push_back(b);
      } else if (const auto* rc = as<TRecord>(cur)) {
        for (const auto& [_, f] : rc->fields) stack.push_back(f);
      } else if (const auto* v = as<TVariant>(cur)) {
        for (const auto& [_, f] : v->fields) stack.push_back(f);
      }
    }
  }
}

TEST_CASE("free_refs") {
  CHECK(free_refs(tvar("s")) == std::set<Ident>{"s"});
  CHECK(free_refs(rec("s", seq(msg(Polarity::Out, unit()), tvar("s")))).empty());
  CHECK(free_refs(arrow(Multiplicity::Un, tvar("t"), tvar("u"))) ==
        std::set<Ident>{"t", "u"});
}
