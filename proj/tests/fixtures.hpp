#ifndef CFSUB_TESTS_FIXTURES_HPP
#define CFSUB_TESTS_FIXTURES_HPP

#include "cfsub/syntax.hpp"
#include "cfsub/types.hpp"

namespace fixtures {

// Session types for serializing binary trees on a channel: the recursive
// protocol and three fixed-shape specializations.
inline cfsub::TypePtr stree() {
  return cfsub::parse_type("rec s . +{Nil: skip, Node: s ; !int ; s}");
}
inline cfsub::TypePtr sempty() { return cfsub::parse_type("+{Nil: skip}"); }
inline cfsub::TypePtr sfulltree0() {
  return cfsub::parse_type("+{Node: +{Nil: skip} ; !int ; +{Nil: skip}}");
}
inline cfsub::TypePtr sfulltree1() {
  return cfsub::parse_type(
      "+{Node: (+{Node: +{Nil: skip} ; !int ; +{Nil: skip}} ; !int) ; "
      "+{Node: +{Nil: skip} ; !int ; +{Nil: skip}}}");
}

// The same protocol family with the empty-tree label spelled "Empty",
// used by the golden grammar test.
inline cfsub::TypePtr stree_e() {
  return cfsub::parse_type("rec s . +{Empty: skip, Node: s ; !int ; s}");
}
inline cfsub::TypePtr sfulltree0_e() {
  return cfsub::parse_type("+{Node: +{Empty: skip} ; !int ; +{Empty: skip}}");
}

}  // namespace fixtures

#endif
