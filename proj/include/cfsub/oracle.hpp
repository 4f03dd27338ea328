#ifndef CFSUB_ORACLE_HPP
#define CFSUB_ORACLE_HPP

#include "cfsub/actions.hpp"
#include "cfsub/grammar.hpp"
#include "cfsub/types.hpp"

namespace cfsub {

// Brute-force stratified XYZW-similarity, used as an independent check at
// small depths. Depth 0 relates everything; depth n+1 requires the four
// clauses with derivatives related at depth n (order swapped for Z/W
// labels). Antitone in the depth. Exponential without the internal
// memoisation; keep n small (tests use n <= 8).
bool bounded_similar_types(const TypePtr& t, const TypePtr& u, unsigned depth,
                           Classifier cls = classify_subtyping);

bool bounded_similar_words(const Word& x, const Word& y, unsigned depth,
                           const Grammar& g,
                           Classifier cls = classify_subtyping);

}  // namespace cfsub

#endif
