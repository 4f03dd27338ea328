#ifndef CFSUB_GRAMMAR_HPP
#define CFSUB_GRAMMAR_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "cfsub/actions.hpp"
#include "cfsub/types.hpp"

namespace cfsub {

// A simple grammar in Greibach normal form: at most one production per
// (nonterminal, action) pair. Symbol 0 is the bottom symbol, which has no
// productions; words containing it past position 0 are dead ends.
using Sym = std::int32_t;
using Word = std::vector<Sym>;

struct Grammar {
  std::vector<std::map<Action, Word>> prods;  // indexed by symbol
  std::vector<std::string> names;

  static constexpr Sym bottom = 0;
  std::size_t symbol_count() const { return prods.size(); }
  std::size_t production_count() const;
  const std::string& name(Sym s) const { return names[static_cast<std::size_t>(s)]; }
};

std::string word_to_string(const Word& w, const Grammar& g);

// Translates types into a shared grammar. Words for repeated subterms are
// reused; each rec subterm gets one nonterminal whose productions are read
// off its unraveling. Display names restart at 0 with a new letter for each
// translate() call so related translations stay readable.
class GrammarBuilder {
 public:
  GrammarBuilder();

  // Requires well_formed(t); use check_formation first on untrusted input.
  Word translate(const TypePtr& t);

  const Grammar& grammar() const { return g_; }
  Grammar take() && { return std::move(g_); }

 private:
  Word word_of(const TypePtr& t);
  Sym fresh_symbol();
  void install(Sym y, const TypePtr& constructor_headed);

  Grammar g_;
  std::map<TypePtr, Sym, TypeLess> memo_;  // closed subterm -> its symbol
  int call_ = 0;
  int next_in_call_ = 0;
};

// The LTS induced by a grammar: X w --a--> rhs ++ w for X -> a rhs.
// The empty word has no transitions.
std::map<Action, Word> word_transitions(const Word& w, const Grammar& g);

// Norms: length of a shortest derivation to the empty word, if any, and the
// action path realizing it. Computed by value iteration over productions.
class NormTable {
 public:
  explicit NormTable(const Grammar& g);

  std::optional<std::uint64_t> symbol_norm(Sym s) const;
  // Sum over symbols; absent when any symbol is unnormed.
  std::optional<std::uint64_t> word_norm(const Word& w) const;
  // Minimal path for a normed symbol; absent when unnormed or when the
  // path would exceed `cap` steps.
  std::optional<std::vector<Action>> minimal_path(Sym s,
                                                  std::size_t cap = 10000) const;

 private:
  const Grammar* g_;
  std::vector<std::optional<std::uint64_t>> norm_;
};

// Truncates every production immediately after its first unnormed symbol.
// Idempotent; preserves simplicity and symbol norms.
Grammar prune(const Grammar& g);

// Dump: one production per line, "X -> a Y1 Y2 ...", ordered by symbol id
// then action.
void dump_grammar(std::ostream& os, const Grammar& g);

// A bijective renaming taking (g1, starts1) to (g2, starts2), if the two
// grammars are identical up to renaming of nonterminals; checked by
// synchronized traversal from the start words.
std::optional<std::map<Sym, Sym>> grammar_renaming(
    const Grammar& g1, const std::vector<Word>& starts1, const Grammar& g2,
    const std::vector<Word>& starts2);

}  // namespace cfsub

#endif
