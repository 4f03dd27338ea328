#ifndef CFSUB_EXPANSION_HPP
#define CFSUB_EXPANSION_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cfsub/grammar.hpp"
#include "cfsub/types.hpp"

namespace cfsub {

// A node of the expansion tree: a finite set of ordered word pairs. The
// empty node is a successful leaf.
using WordPair = std::pair<Word, Word>;
using Node = std::set<WordPair>;
using Ancestors = std::set<WordPair>;

enum class Verdict { True, False, Unknown };
const char* verdict_name(Verdict v);

struct Budget {
  std::uint64_t max_visits = 1'000'000;
  std::chrono::milliseconds max_time{30'000};
};

struct Result {
  Verdict verdict = Verdict::Unknown;
  std::uint64_t visits = 0;
};

// One expansion step: the minimal set of derivative pairs required by the
// four simulation clauses, with the pairs for inverted (Z/W) labels stored
// as (right-derivative, left-derivative). Absent when some required action
// has no match, i.e. the node fails to expand.
std::optional<Node> expand(const Node& n, const Grammar& g, Classifier cls);

// Simplification rules. The first two only delete pairs; the BPA rules
// produce sibling nodes that replace one pair by smaller obligations.
Node simplify_reflexivity(Node n);
Node simplify_preorder(Node n, const Ancestors& ancestors);
std::vector<Node> bpa1_siblings(const Node& n, const Ancestors& ancestors);
std::vector<Node> bpa2_siblings(const Node& n, const Grammar& g,
                                const NormTable& norms);

// Breadth-first exploration of the expansion tree rooted at {(x, y)}.
// True iff an empty node is reached, False iff every branch fails to
// expand, Unknown when the budget runs out. True implies x is
// XYZW-similar to y.
Result simulate_words(const Word& x, const Word& y, const Grammar& g,
                      Classifier cls, const Budget& budget = {});

struct IllFormed : std::runtime_error {
  FormationError error;
  explicit IllFormed(FormationError e)
      : std::runtime_error(e.to_string()), error(std::move(e)) {}
};

// Subtyping: translate both types into one grammar, prune it, and search.
// Throws IllFormed when an argument fails type formation.
Result subtype(const TypePtr& t, const TypePtr& u, const Budget& budget = {});

// Equivalence: the same engine under the bisimulation label sets.
Result equivalent(const TypePtr& t, const TypePtr& u,
                  const Budget& budget = {});

}  // namespace cfsub

#endif
