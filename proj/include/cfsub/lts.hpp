#ifndef CFSUB_LTS_HPP
#define CFSUB_LTS_HPP

#include <map>

#include "cfsub/actions.hpp"
#include "cfsub/types.hpp"

namespace cfsub {

// Head-normalizes a type: unfolds rec, drops skip heads, absorbs into end,
// distributes sequencing over choices and reassociates nested sequencing,
// until a constructor is at the head. Terminates on contractive (in
// particular, well-formed) input; throws std::logic_error otherwise.
TypePtr unravel(const TypePtr& t);

// The transitions of a well-formed closed type: at most one derivative per
// action. skip has none.
std::map<Action, TypePtr> transitions(const TypePtr& t);

}  // namespace cfsub

#endif
