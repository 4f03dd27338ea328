#include "cfsub/lts.hpp"

#include <stdexcept>

namespace cfsub {

TypePtr unravel(const TypePtr& t) {
  TypePtr cur = t;
  // each step strictly reduces the number of rewrites a contractive type
  // admits; the cap guards against non-contractive input
  for (long guard = 0; guard < 1'000'000; ++guard) {
    if (const auto* r = as<TRec>(cur)) {
      cur = substitute(r->body, r->var, cur);
      continue;
    }
    const auto* s = as<TSeq>(cur);
    if (!s) return cur;
    if (is<TSkip>(s->head)) {
      cur = s->tail;
      continue;
    }
    if (is<TEnd>(s->head)) return end();
    if (const auto* c = as<TChoice>(s->head)) {
      LabelMap distributed;
      for (const auto& [l, b] : c->branches)
        distributed.emplace(l, seq(b, s->tail));
      return choice(c->view, std::move(distributed));
    }
    if (const auto* inner = as<TSeq>(s->head)) {
      cur = seq(inner->head, seq(inner->tail, s->tail));
      continue;
    }
    if (const auto* r = as<TRec>(s->head)) {
      cur = seq(substitute(r->body, r->var, s->head), s->tail);
      continue;
    }
    return cur;  // message- or reference-headed sequencing
  }
  throw std::logic_error("unravel: type is not contractive");
}

std::map<Action, TypePtr> transitions(const TypePtr& t) {
  TypePtr u = unravel(t);
  std::map<Action, TypePtr> out;
  if (is<TUnit>(u)) {
    out.emplace(act_unit(), skip());
  } else if (const auto* b = as<TBase>(u)) {
    out.emplace(act_base(b->name), skip());
  } else if (const auto* a = as<TArrow>(u)) {
    out.emplace(act_dom(), a->dom);
    out.emplace(act_rng(), a->rng);
    if (a->mult == Multiplicity::Lin) out.emplace(act_lin(), skip());
  } else if (const auto* r = as<TRecord>(u)) {
    out.emplace(act_rcd_default(), skip());
    for (const auto& [l, f] : r->fields) out.emplace(act_rcd_field(l), f);
  } else if (const auto* v = as<TVariant>(u)) {
    out.emplace(act_vrt_default(), skip());
    for (const auto& [l, f] : v->fields) out.emplace(act_vrt_field(l), f);
  } else if (const auto* m = as<TMsg>(u)) {
    out.emplace(act_msg_payload(m->pol), m->payload);
    out.emplace(act_msg_cont(m->pol), skip());
  } else if (const auto* c = as<TChoice>(u)) {
    out.emplace(act_choice_default(c->view), skip());
    for (const auto& [l, b] : c->branches)
      out.emplace(act_choice_field(c->view, l), b);
  } else if (is<TEnd>(u)) {
    out.emplace(act_end(), skip());
  } else if (const auto* s = as<TSeq>(u)) {
    // after unraveling, only a message can head a sequencing
    if (const auto* m = as<TMsg>(s->head)) {
      out.emplace(act_msg_payload(m->pol), m->payload);
      out.emplace(act_msg_cont(m->pol), s->tail);
    }
  }
  // skip and free references have no transitions
  return out;
}

}  // namespace cfsub
