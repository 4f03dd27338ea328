// Acceptance suite: runs the end-to-end checks the project must satisfy and
// prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "cfsub/bench.hpp"
#include "cfsub/expansion.hpp"
#include "cfsub/gen.hpp"
#include "cfsub/grammar.hpp"
#include "cfsub/lts.hpp"
#include "cfsub/oracle.hpp"
#include "cfsub/syntax.hpp"
#include "fixtures.hpp"

using namespace cfsub;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

TypePtr tree_left() {
  return arrow(Multiplicity::Un, fixtures::sfulltree0_e(), unit());
}
TypePtr tree_right() {
  return arrow(Multiplicity::Lin, fixtures::stree_e(), unit());
}

// ---- 1: golden grammar ----------------------------------------------------

Grammar golden_grammar(Word& x0, Word& y0) {
  Grammar g;
  g.prods.resize(9);
  g.names = {"bot", "X0", "X1", "X2", "X3", "X4", "X5", "Y0", "Y1"};
  const Sym bot = 0, X0 = 1, X1 = 2, X2 = 3, X3 = 4, X4 = 5, X5 = 6, Y0 = 7,
            Y1 = 8;
  auto add = [&](Sym s, Action a, Word rhs) {
    g.prods[static_cast<std::size_t>(s)].emplace(a, std::move(rhs));
  };
  add(X0, act_dom(), {X1});
  add(X0, act_rng(), {X5});
  add(X1, act_choice_field(View::Internal, "Node"), {X2, X3, X2});
  add(X1, act_choice_default(View::Internal), {bot});
  add(X2, act_choice_field(View::Internal, "Empty"), {});
  add(X2, act_choice_default(View::Internal), {bot});
  add(X3, act_msg_payload(Polarity::Out), {X4, bot});
  add(X3, act_msg_cont(Polarity::Out), {});
  add(X4, act_base("int"), {});
  add(X5, act_unit(), {});
  add(Y0, act_dom(), {Y1});
  add(Y0, act_rng(), {X5});
  add(Y0, act_lin(), {});
  add(Y1, act_choice_default(View::Internal), {bot});
  add(Y1, act_choice_field(View::Internal, "Empty"), {});
  add(Y1, act_choice_field(View::Internal, "Node"), {Y1, X3, Y1});
  x0 = {X0};
  y0 = {Y0};
  return g;
}

bool criterion1(std::string& detail) {
  auto t0 = Clock::now();
  GrammarBuilder b;
  Word x = b.translate(tree_left());
  Word y = b.translate(tree_right());
  Grammar actual = std::move(b).take();
  double elapsed = ms_since(t0);

  Word gx, gy;
  Grammar expected = golden_grammar(gx, gy);
  auto renaming = grammar_renaming(actual, {x, y}, expected, {gx, gy});
  std::ostringstream ss;
  ss << actual.production_count() << " productions, renaming "
     << (renaming ? "found" : "missing") << ", " << elapsed << " ms";
  detail = ss.str();
  return renaming.has_value() && actual.production_count() == 16 &&
         elapsed < 1000.0;
}

// ---- 2: the worked run ------------------------------------------------------

bool criterion2(std::string& detail) {
  Result r = subtype(tree_left(), tree_right());
  std::ostringstream ss;
  ss << verdict_name(r.verdict) << " in " << r.visits << " visits";
  detail = ss.str();
  return r.verdict == Verdict::True && r.visits <= 10000;
}

// ---- 3: example suite -------------------------------------------------------

bool criterion3(std::string& detail) {
  TypePtr stree = fixtures::stree();
  std::vector<std::pair<std::pair<TypePtr, TypePtr>, Verdict>> cases = {
      {{stree, fixtures::sfulltree1()}, Verdict::True},
      {{stree, fixtures::sfulltree0()}, Verdict::True},
      {{stree, fixtures::sempty()}, Verdict::True},
      {{fixtures::sfulltree1(), stree}, Verdict::False},
      {{parse_type("+{A: end, B: end}"), parse_type("+{A: end}")}, Verdict::True},
      {{parse_type("+{A: end}"), parse_type("+{A: end, B: end}")}, Verdict::False},
      {{parse_type("&{A: end}"), parse_type("&{A: end, B: end}")}, Verdict::True},
      {{parse_type("&{A: end, B: end}"), parse_type("&{A: end}")}, Verdict::False},
      {{parse_type("!{A: int}"), parse_type("!{A: int, B: bool}")}, Verdict::True},
      {{parse_type("!{A: int, B: bool}"), parse_type("!{A: int}")}, Verdict::False},
      {{parse_type("?{A: int, B: bool}"), parse_type("?{A: int}")}, Verdict::True},
  };
  std::size_t failures = 0;
  double worst = 0;
  for (const auto& [pair, want] : cases) {
    auto t0 = Clock::now();
    Result r = subtype(pair.first, pair.second);
    double elapsed = ms_since(t0);
    worst = std::max(worst, elapsed);
    if (r.verdict != want || elapsed >= 1000.0) ++failures;
  }
  std::ostringstream ss;
  ss << cases.size() - failures << "/" << cases.size()
     << " examples, slowest " << worst << " ms";
  detail = ss.str();
  return failures == 0;
}

// ---- 4: multiplicity --------------------------------------------------------

bool criterion4(std::string& detail) {
  Verdict up = subtype(parse_type("unit -> unit"), parse_type("unit -o unit")).verdict;
  Verdict down = subtype(parse_type("unit -o unit"), parse_type("unit -> unit")).verdict;
  detail = std::string("un<:lin is ") + verdict_name(up) + ", lin<:un is " +
           verdict_name(down);
  return up == Verdict::True && down == Verdict::False;
}

// ---- 5: preorder ------------------------------------------------------------

bool criterion5(std::string& detail) {
  Budget budget;
  budget.max_visits = 200000;
  budget.max_time = std::chrono::milliseconds(2000);
  std::size_t refl_fail = 0;
  for (unsigned i = 0; i < 200; ++i) {
    GenConfig cfg;
    cfg.seed = 50000 + i;
    cfg.size = 1 + i % 30;
    TypePtr t = random_type(cfg);
    if (subtype(t, t, budget).verdict != Verdict::True) ++refl_fail;
  }
  std::size_t chain_fail = 0;
  for (unsigned i = 0; i < 100; ++i) {
    GenConfig cfg;
    cfg.seed = 60000 + i;
    cfg.size = 1 + i % 20;
    auto [a, bb, c] = random_valid_triple(cfg);
    (void)bb;
    if (subtype(a, c, budget).verdict == Verdict::False) ++chain_fail;
  }
  std::ostringstream ss;
  ss << refl_fail << " reflexivity failures, " << chain_fail
     << " transitivity refutations";
  detail = ss.str();
  return refl_fail == 0 && chain_fail == 0;
}

// ---- 6: generator soundness at desk scale -----------------------------------

bool criterion6(std::string& detail) {
  auto t0 = Clock::now();
  std::vector<BenchTask> tasks;
  for (unsigned i = 0; i < 500; ++i) {
    GenConfig cfg;
    cfg.seed = 100000 + i;
    cfg.size = 2 + i % 59;
    auto [l, r] = random_valid_pair(cfg);
    tasks.push_back({"valid-" + std::to_string(i), l, r});
  }
  for (unsigned i = 0; i < 500; ++i) {
    GenConfig cfg;
    cfg.seed = 200000 + i;
    cfg.size = 2 + i % 59;
    auto [l, r] = random_invalid_pair(cfg);
    tasks.push_back({"invalid-" + std::to_string(i), l, r});
  }
  Budget budget;
  budget.max_visits = 10'000'000;
  budget.max_time = std::chrono::milliseconds(1000);
  auto records = run_bench(tasks, budget);
  Summary s = summarize(records);
  double total_s = ms_since(t0) / 1000.0;
  std::ostringstream ss;
  ss << "valid: " << s.valid.no << " false, " << s.valid.timeouts
     << " timeouts; invalid: " << s.invalid.yes << " true, "
     << s.invalid.timeouts << " timeouts; total " << total_s << " s";
  detail = ss.str();
  return s.valid.no == 0 && s.invalid.yes == 0 && total_s < 300.0;
}

// ---- 7: oracle agreement ----------------------------------------------------

bool criterion7(std::string& detail) {
  Budget budget;
  budget.max_visits = 200000;
  budget.max_time = std::chrono::milliseconds(1000);
  std::size_t pairs = 0, sound_fail = 0, agree_fail = 0, accepted = 0;
  for (unsigned seed = 0; pairs < 300 && seed < 5000; ++seed) {
    GenConfig cfg;
    cfg.seed = 300000 + seed;
    cfg.size = 1 + seed % 16;
    auto [l, r] =
        seed % 2 == 0 ? random_valid_pair(cfg) : random_invalid_pair(cfg);
    if (node_count(l) + node_count(r) > 40) continue;
    ++pairs;
    if (subtype(l, r, budget).verdict == Verdict::True) {
      ++accepted;
      for (unsigned n = 1; n <= 6; ++n)
        if (!bounded_similar_types(l, r, n)) ++sound_fail;
    }
    GrammarBuilder b;
    Word x = b.translate(l);
    Word y = b.translate(r);
    Grammar g = std::move(b).take();
    for (unsigned n = 0; n <= 5; ++n)
      if (bounded_similar_types(l, r, n) != bounded_similar_words(x, y, n, g))
        ++agree_fail;
  }
  std::ostringstream ss;
  ss << pairs << " pairs (" << accepted << " accepted), " << sound_fail
     << " soundness misses, " << agree_fail << " type/word disagreements";
  detail = ss.str();
  return pairs == 300 && sound_fail == 0 && agree_fail == 0;
}

// ---- 8: pruning invariance ---------------------------------------------------

bool criterion8(std::string& detail) {
  std::size_t mismatch = 0, not_idempotent = 0;
  for (unsigned i = 0; i < 100; ++i) {
    GenConfig cfg;
    cfg.seed = 400000 + i;
    cfg.size = 1 + i % 14;
    auto [l, r] =
        i % 2 == 0 ? random_valid_pair(cfg) : random_invalid_pair(cfg);
    GrammarBuilder b;
    Word x = b.translate(l);
    Word y = b.translate(r);
    Grammar g = std::move(b).take();
    Grammar p = prune(g);
    Grammar pp = prune(p);
    for (std::size_t s = 0; s < p.symbol_count(); ++s)
      if (p.prods[s] != pp.prods[s]) ++not_idempotent;
    for (unsigned n = 0; n <= 6; ++n) {
      if (bounded_similar_words(x, y, n, g) != bounded_similar_words(x, y, n, p))
        ++mismatch;
    }
  }
  std::ostringstream ss;
  ss << mismatch << " similarity mismatches, " << not_idempotent
     << " idempotence violations";
  detail = ss.str();
  return mismatch == 0 && not_idempotent == 0;
}

// ---- 9: equivalence laws ------------------------------------------------------

// rejection-samples a session-sorted type
TypePtr random_session(std::uint64_t seed, unsigned size) {
  for (unsigned bump = 0; bump < 50; ++bump) {
    GenConfig cfg;
    cfg.seed = seed + bump;
    cfg.size = size;
    TypePtr cand = random_type(cfg);
    if (well_formed(seq(cand, skip()))) return cand;
  }
  return msg(Polarity::Out, unit());
}

bool criterion9(std::string& detail) {
  Budget budget;
  budget.max_visits = 200000;
  budget.max_time = std::chrono::milliseconds(2000);
  std::size_t failures = 0;
  for (unsigned i = 0; i < 100; ++i) {
    unsigned size = 1 + i % 12;
    TypePtr sess = random_session(500000 + i, size);
    TypePtr other = random_session(700000 + i, size);
    if (equivalent(seq(skip(), sess), sess, budget).verdict != Verdict::True)
      ++failures;
    if (equivalent(seq(sess, skip()), sess, budget).verdict != Verdict::True)
      ++failures;
    if (equivalent(seq(seq(sess, other), sess),
                   seq(sess, seq(other, sess)), budget)
            .verdict != Verdict::True)
      ++failures;
    if (equivalent(seq(end(), sess), end(), budget).verdict != Verdict::True)
      ++failures;
  }
  std::ostringstream ss;
  ss << failures << " law violations over 100 samples";
  detail = ss.str();
  return failures == 0;
}

// ---- 10: LTS conformance -------------------------------------------------------

bool lts_agree(const TypePtr& t, const Word& w, const Grammar& g, int depth) {
  if (depth == 0) return true;
  auto tt = transitions(t);
  auto tw = word_transitions(w, g);
  if (tt.size() != tw.size()) return false;
  for (const auto& [a, td] : tt) {
    auto it = tw.find(a);
    if (it == tw.end()) return false;
    if (!lts_agree(td, it->second, g, depth - 1)) return false;
  }
  return true;
}

bool criterion10(std::string& detail) {
  std::size_t failures = 0;
  for (unsigned i = 0; i < 300; ++i) {
    GenConfig cfg;
    cfg.seed = 600000 + i;
    cfg.size = 1 + i % 30;
    TypePtr t = random_type(cfg);
    GrammarBuilder b;
    Word w = b.translate(t);
    Grammar g = std::move(b).take();
    if (!lts_agree(t, w, g, 5)) ++failures;
  }
  std::ostringstream ss;
  ss << failures << " conformance failures over 300 types";
  detail = ss.str();
  return failures == 0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "golden grammar for the tree-protocol arrows", criterion1},
      {2, "worked subtyping run within 10^4 visits", criterion2},
      {3, "example suite", criterion3},
      {4, "multiplicity subtyping", criterion4},
      {5, "preorder properties on generated types", criterion5},
      {6, "generator soundness at desk scale", criterion6},
      {7, "oracle agreement", criterion7},
      {8, "pruning invariance", criterion8},
      {9, "equivalence of the sequencing algebra", criterion9},
      {10, "type-LTS / grammar-LTS conformance", criterion10},
  };
  int failed = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
