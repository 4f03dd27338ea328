#include "cfsub/actions.hpp"

namespace cfsub {

namespace {
Action make(ActionKind k, Polarity p = Polarity::In, View v = View::Internal,
            std::string label = {}) {
  return {k, p, v, std::move(label)};
}
}  // namespace

Action act_unit() { return make(ActionKind::Unit); }
Action act_base(std::string name) {
  return make(ActionKind::Base, Polarity::In, View::Internal, std::move(name));
}
Action act_dom() { return make(ActionKind::Dom); }
Action act_rng() { return make(ActionKind::Rng); }
Action act_lin() { return make(ActionKind::Lin); }
Action act_end() { return make(ActionKind::End); }
Action act_rcd_default() { return make(ActionKind::RcdDefault); }
Action act_vrt_default() { return make(ActionKind::VrtDefault); }
Action act_rcd_field(std::string label) {
  return make(ActionKind::RcdField, Polarity::In, View::Internal,
              std::move(label));
}
Action act_vrt_field(std::string label) {
  return make(ActionKind::VrtField, Polarity::In, View::Internal,
              std::move(label));
}
Action act_msg_payload(Polarity p) { return make(ActionKind::MsgPayload, p); }
Action act_msg_cont(Polarity p) { return make(ActionKind::MsgCont, p); }
Action act_choice_default(View v) {
  return make(ActionKind::ChoiceDefault, Polarity::In, v);
}
Action act_choice_field(View v, std::string label) {
  return make(ActionKind::ChoiceField, Polarity::In, v, std::move(label));
}

std::string action_to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::Unit: return "unit";
    case ActionKind::Base: return a.label;
    case ActionKind::Dom: return "->d";
    case ActionKind::Rng: return "->r";
    case ActionKind::Lin: return "->lin";
    case ActionKind::End: return "end";
    case ActionKind::RcdDefault: return "{}";
    case ActionKind::VrtDefault: return "<>";
    case ActionKind::RcdField: return "{" + a.label + "}";
    case ActionKind::VrtField: return "<" + a.label + ">";
    case ActionKind::MsgPayload:
      return a.pol == Polarity::Out ? "!p" : "?p";
    case ActionKind::MsgCont: return a.pol == Polarity::Out ? "!c" : "?c";
    case ActionKind::ChoiceDefault:
      return a.view == View::Internal ? "+" : "&";
    case ActionKind::ChoiceField:
      return (a.view == View::Internal ? "+" : "&") + a.label;
  }
  return "?";
}

ClassSet classify_subtyping(const Action& a) {
  switch (a.kind) {
    // contravariant positions of output and arrow constructors
    case ActionKind::Dom: return {false, false, true, true};
    case ActionKind::MsgPayload:
      if (a.pol == Polarity::Out) return {false, false, true, true};
      return {true, true, false, false};
    // covariant-on-multiplicity marker
    case ActionKind::Lin: return {true, false, false, false};
    // width subtyping: covariant label sets
    case ActionKind::VrtField: return {true, false, false, false};
    case ActionKind::ChoiceField:
      if (a.view == View::External) return {true, false, false, false};
      return {false, true, false, false};
    // width subtyping: contravariant label sets
    case ActionKind::RcdField: return {false, true, false, false};
    default: return {true, true, false, false};
  }
}

ClassSet classify_bisimulation(const Action&) {
  return {true, true, false, false};
}

}  // namespace cfsub
