#ifndef CFSUB_ACTIONS_HPP
#define CFSUB_ACTIONS_HPP

#include <compare>
#include <string>

#include "cfsub/types.hpp"

namespace cfsub {

// Transition labels of the type and grammar LTSs.
enum class ActionKind {
  Unit,
  Base,           // one label per base-type name
  Dom,            // arrow domain
  Rng,            // arrow range
  Lin,            // linear-arrow marker
  End,
  RcdDefault,
  VrtDefault,
  RcdField,
  VrtField,
  MsgPayload,     // carries the polarity
  MsgCont,
  ChoiceDefault,  // carries the view
  ChoiceField
};

struct Action {
  ActionKind kind;
  Polarity pol = Polarity::In;   // MsgPayload, MsgCont
  View view = View::Internal;    // ChoiceDefault, ChoiceField
  std::string label;             // fields and base-type names

  friend std::strong_ordering operator<=>(const Action& a, const Action& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.pol <=> b.pol; c != 0) return c;
    if (auto c = a.view <=> b.view; c != 0) return c;
    return a.label <=> b.label;
  }
  friend bool operator==(const Action& a, const Action& b) {
    return (a <=> b) == 0;
  }
};

Action act_unit();
Action act_base(std::string name);
Action act_dom();
Action act_rng();
Action act_lin();
Action act_end();
Action act_rcd_default();
Action act_vrt_default();
Action act_rcd_field(std::string label);
Action act_vrt_field(std::string label);
Action act_msg_payload(Polarity p);
Action act_msg_cont(Polarity p);
Action act_choice_default(View v);
Action act_choice_field(View v, std::string label);

std::string action_to_string(const Action& a);

// Membership of an action in the four simulation parameter sets. The sets
// may overlap; membership is a pure function of the action.
struct ClassSet {
  bool in_x = false, in_y = false, in_z = false, in_w = false;
};

// Subtyping instantiation: payload-of-output and arrow-domain labels are
// inverted (Z = W); width-subtyping field labels sit in exactly one of X/Y;
// everything else is in both X and Y.
ClassSet classify_subtyping(const Action& a);

// Equivalence instantiation: plain bisimulation, X = Y = all actions.
ClassSet classify_bisimulation(const Action& a);

using Classifier = ClassSet (*)(const Action&);

}  // namespace cfsub

#endif
