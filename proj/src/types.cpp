#include "cfsub/types.hpp"

#include <stdexcept>

namespace cfsub {

namespace {
TypePtr make(Type&& t) { return std::make_shared<const Type>(std::move(t)); }
}  // namespace

TypePtr unit() {
  static const TypePtr t = make(Type{TUnit{}});
  return t;
}
TypePtr base(std::string name) { return make(Type{TBase{std::move(name)}}); }
TypePtr arrow(Multiplicity m, TypePtr dom, TypePtr rng) {
  return make(Type{TArrow{m, std::move(dom), std::move(rng)}});
}
TypePtr record(LabelMap fields) { return make(Type{TRecord{std::move(fields)}}); }
TypePtr variant(LabelMap fields) { return make(Type{TVariant{std::move(fields)}}); }
TypePtr msg(Polarity p, TypePtr payload) {
  return make(Type{TMsg{p, std::move(payload)}});
}
TypePtr choice(View v, LabelMap branches) {
  if (branches.empty())
    throw std::invalid_argument("choice types require at least one branch");
  return make(Type{TChoice{v, std::move(branches)}});
}
TypePtr skip() {
  static const TypePtr t = make(Type{TSkip{}});
  return t;
}
TypePtr end() {
  static const TypePtr t = make(Type{TEnd{}});
  return t;
}
TypePtr seq(TypePtr head, TypePtr tail) {
  return make(Type{TSeq{std::move(head), std::move(tail)}});
}
TypePtr tvar(Ident name) { return make(Type{TVar{std::move(name)}}); }
TypePtr rec(Ident var, TypePtr body) {
  return make(Type{TRec{std::move(var), std::move(body)}});
}

namespace {

std::strong_ordering compare_maps(const LabelMap& a, const LabelMap& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (auto c = compare(*ia->second, *ib->second); c != 0) return c;
  }
  if (ia != a.end()) return std::strong_ordering::greater;
  if (ib != b.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare(const Type& a, const Type& b) {
  if (auto c = a.node.index() <=> b.node.index(); c != 0) return c;
  switch (a.node.index()) {
    case 0: return std::strong_ordering::equal;  // Unit
    case 1:
      return std::get<TBase>(a.node).name <=> std::get<TBase>(b.node).name;
    case 2: {
      const auto& x = std::get<TArrow>(a.node);
      const auto& y = std::get<TArrow>(b.node);
      if (auto c = x.mult <=> y.mult; c != 0) return c;
      if (auto c = compare(*x.dom, *y.dom); c != 0) return c;
      return compare(*x.rng, *y.rng);
    }
    case 3:
      return compare_maps(std::get<TRecord>(a.node).fields,
                          std::get<TRecord>(b.node).fields);
    case 4:
      return compare_maps(std::get<TVariant>(a.node).fields,
                          std::get<TVariant>(b.node).fields);
    case 5: {
      const auto& x = std::get<TMsg>(a.node);
      const auto& y = std::get<TMsg>(b.node);
      if (auto c = x.pol <=> y.pol; c != 0) return c;
      return compare(*x.payload, *y.payload);
    }
    case 6: {
      const auto& x = std::get<TChoice>(a.node);
      const auto& y = std::get<TChoice>(b.node);
      if (auto c = x.view <=> y.view; c != 0) return c;
      return compare_maps(x.branches, y.branches);
    }
    case 7:
    case 8: return std::strong_ordering::equal;  // Skip, End
    case 9: {
      const auto& x = std::get<TSeq>(a.node);
      const auto& y = std::get<TSeq>(b.node);
      if (auto c = compare(*x.head, *y.head); c != 0) return c;
      return compare(*x.tail, *y.tail);
    }
    case 10:
      return std::get<TVar>(a.node).name <=> std::get<TVar>(b.node).name;
    default: {
      const auto& x = std::get<TRec>(a.node);
      const auto& y = std::get<TRec>(b.node);
      if (auto c = x.var <=> y.var; c != 0) return c;
      return compare(*x.body, *y.body);
    }
  }
}

bool equal(const TypePtr& a, const TypePtr& b) {
  return a.get() == b.get() || compare(*a, *b) == 0;
}

std::size_t node_count(const TypePtr& t) {
  struct V {
    std::size_t operator()(const TUnit&) const { return 1; }
    std::size_t operator()(const TBase&) const { return 1; }
    std::size_t operator()(const TSkip&) const { return 1; }
    std::size_t operator()(const TEnd&) const { return 1; }
    std::size_t operator()(const TVar&) const { return 1; }
    std::size_t operator()(const TArrow& a) const {
      return 1 + node_count(a.dom) + node_count(a.rng);
    }
    std::size_t operator()(const TRecord& r) const { return 1 + fields(r.fields); }
    std::size_t operator()(const TVariant& v) const { return 1 + fields(v.fields); }
    std::size_t operator()(const TMsg& m) const { return 1 + node_count(m.payload); }
    std::size_t operator()(const TChoice& c) const { return 1 + fields(c.branches); }
    std::size_t operator()(const TSeq& s) const {
      return 1 + node_count(s.head) + node_count(s.tail);
    }
    std::size_t operator()(const TRec& r) const { return 1 + node_count(r.body); }
    static std::size_t fields(const LabelMap& m) {
      std::size_t n = 0;
      for (const auto& [_, v] : m) n += node_count(v);
      return n;
    }
  };
  return std::visit(V{}, t->node);
}

namespace {

void free_refs_into(const TypePtr& t, std::set<Ident>& bound,
                    std::set<Ident>& out) {
  if (const auto* v = as<TVar>(t)) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (const auto* a = as<TArrow>(t)) {
    free_refs_into(a->dom, bound, out);
    free_refs_into(a->rng, bound, out);
  } else if (const auto* r = as<TRecord>(t)) {
    for (const auto& [_, f] : r->fields) free_refs_into(f, bound, out);
  } else if (const auto* v2 = as<TVariant>(t)) {
    for (const auto& [_, f] : v2->fields) free_refs_into(f, bound, out);
  } else if (const auto* m = as<TMsg>(t)) {
    free_refs_into(m->payload, bound, out);
  } else if (const auto* c = as<TChoice>(t)) {
    for (const auto& [_, f] : c->branches) free_refs_into(f, bound, out);
  } else if (const auto* s = as<TSeq>(t)) {
    free_refs_into(s->head, bound, out);
    free_refs_into(s->tail, bound, out);
  } else if (const auto* r2 = as<TRec>(t)) {
    bool inserted = bound.insert(r2->var).second;
    free_refs_into(r2->body, bound, out);
    if (inserted) bound.erase(r2->var);
  }
}

}  // namespace

std::set<Ident> free_refs(const TypePtr& t) {
  std::set<Ident> bound, out;
  free_refs_into(t, bound, out);
  return out;
}

Ident fresh_name(const Ident& base, const std::set<Ident>& avoid) {
  if (!avoid.count(base)) return base;
  for (unsigned long long i = 0;; ++i) {
    Ident candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

LabelMap substitute_map(const LabelMap& m, const Ident& x, const TypePtr& r) {
  LabelMap out;
  for (const auto& [k, v] : m) out.emplace(k, substitute(v, x, r));
  return out;
}

void all_names_into(const TypePtr& t, std::set<Ident>& out) {
  if (const auto* v = as<TVar>(t)) {
    out.insert(v->name);
  } else if (const auto* a = as<TArrow>(t)) {
    all_names_into(a->dom, out);
    all_names_into(a->rng, out);
  } else if (const auto* r = as<TRecord>(t)) {
    for (const auto& [_, f] : r->fields) all_names_into(f, out);
  } else if (const auto* v2 = as<TVariant>(t)) {
    for (const auto& [_, f] : v2->fields) all_names_into(f, out);
  } else if (const auto* m = as<TMsg>(t)) {
    all_names_into(m->payload, out);
  } else if (const auto* c = as<TChoice>(t)) {
    for (const auto& [_, f] : c->branches) all_names_into(f, out);
  } else if (const auto* s = as<TSeq>(t)) {
    all_names_into(s->head, out);
    all_names_into(s->tail, out);
  } else if (const auto* r2 = as<TRec>(t)) {
    out.insert(r2->var);
    all_names_into(r2->body, out);
  }
}

std::set<Ident> all_names(const TypePtr& t) {
  std::set<Ident> out;
  all_names_into(t, out);
  return out;
}

}  // namespace

TypePtr substitute(const TypePtr& body, const Ident& x,
                   const TypePtr& replacement) {
  struct V {
    const TypePtr& t;
    const Ident& x;
    const TypePtr& r;
    TypePtr operator()(const TUnit&) const { return t; }
    TypePtr operator()(const TBase&) const { return t; }
    TypePtr operator()(const TSkip&) const { return t; }
    TypePtr operator()(const TEnd&) const { return t; }
    TypePtr operator()(const TVar& v) const { return v.name == x ? r : t; }
    TypePtr operator()(const TArrow& a) const {
      return arrow(a.mult, substitute(a.dom, x, r), substitute(a.rng, x, r));
    }
    TypePtr operator()(const TRecord& m) const {
      return record(substitute_map(m.fields, x, r));
    }
    TypePtr operator()(const TVariant& m) const {
      return variant(substitute_map(m.fields, x, r));
    }
    TypePtr operator()(const TMsg& m) const {
      return msg(m.pol, substitute(m.payload, x, r));
    }
    TypePtr operator()(const TChoice& c) const {
      return choice(c.view, substitute_map(c.branches, x, r));
    }
    TypePtr operator()(const TSeq& s) const {
      return seq(substitute(s.head, x, r), substitute(s.tail, x, r));
    }
    TypePtr operator()(const TRec& rc) const {
      if (rc.var == x) return t;  // x is rebound here
      if (!free_refs(rc.body).count(x)) return t;
      // rename the binder when the replacement mentions it anywhere: a free
      // occurrence would be captured, a bound one would end up shadowed
      auto repl_names = all_names(r);
      if (repl_names.count(rc.var)) {
        std::set<Ident> avoid = std::move(repl_names);
        all_names_into(rc.body, avoid);
        avoid.insert(x);
        Ident nv = fresh_name(rc.var, avoid);
        TypePtr renamed = substitute(rc.body, rc.var, tvar(nv));
        return rec(nv, substitute(renamed, x, r));
      }
      return rec(rc.var, substitute(rc.body, x, r));
    }
  };
  return std::visit(V{body, x, replacement}, body->node);
}

bool is_terminated(const TypePtr& t) {
  if (is<TSkip>(t)) return true;
  if (const auto* s = as<TSeq>(t))
    return is_terminated(s->head) && is_terminated(s->tail);
  if (const auto* r = as<TRec>(t)) return is_terminated(r->body);
  return false;
}

bool is_contractive(const TypePtr& t, const Ident& x) {
  if (const auto* s = as<TSeq>(t)) {
    if (is_terminated(s->head)) return is_contractive(s->tail, x);
    return is_contractive(s->head, x);
  }
  if (const auto* v = as<TVar>(t)) return v->name != x;
  if (const auto* r = as<TRec>(t)) return is_contractive(r->body, x);
  return true;  // every constructor guards
}

namespace {

enum class Sort { Functional, Session, Unknown };

// Syntactic sort of the head of a type; follows rec bodies and bound
// references. A cycle means some rec is not contractive, reported as
// Unknown and caught by the contractivity check.
Sort head_sort(const TypePtr& t, std::map<Ident, Sort>& env) {
  if (is<TUnit>(t) || is<TBase>(t) || is<TArrow>(t) || is<TRecord>(t) ||
      is<TVariant>(t))
    return Sort::Functional;
  if (is<TMsg>(t) || is<TChoice>(t) || is<TSkip>(t) || is<TEnd>(t) ||
      is<TSeq>(t))
    return Sort::Session;
  if (const auto* v = as<TVar>(t)) {
    auto it = env.find(v->name);
    return it == env.end() ? Sort::Unknown : it->second;
  }
  const auto& r = std::get<TRec>(t->node);
  env[r.var] = Sort::Unknown;  // pending
  Sort s = head_sort(r.body, env);
  env[r.var] = s;
  return s;
}

struct Checker {
  std::map<Ident, Sort> sorts;  // binder -> sort, for session-position checks

  std::optional<FormationError> session_position(const TypePtr& t,
                                                 const char* where) {
    Sort s = head_sort(t, sorts);
    if (s == Sort::Functional)
      return FormationError{"sort", std::string(where) +
                                        " requires a session type", t};
    return std::nullopt;
  }

  std::optional<FormationError> check(const std::set<Ident>& delta,
                                      const TypePtr& t) {
    if (const auto* v = as<TVar>(t)) {
      if (!delta.count(v->name))
        return FormationError{"ref-unbound",
                              "reference '" + v->name + "' is not in scope", t};
      return std::nullopt;
    }
    if (const auto* a = as<TArrow>(t)) {
      if (auto e = check(delta, a->dom)) return e;
      return check(delta, a->rng);
    }
    if (const auto* r = as<TRecord>(t)) return check_fields(delta, r->fields);
    if (const auto* v = as<TVariant>(t)) return check_fields(delta, v->fields);
    if (const auto* m = as<TMsg>(t)) return check(delta, m->payload);
    if (const auto* c = as<TChoice>(t)) {
      for (const auto& [l, b] : c->branches) {
        if (auto e = session_position(b, "a choice branch")) return e;
        if (auto e = check(delta, b)) return e;
      }
      return std::nullopt;
    }
    if (const auto* s = as<TSeq>(t)) {
      if (auto e = session_position(s->head, "the head of ';'")) return e;
      if (auto e = session_position(s->tail, "the tail of ';'")) return e;
      if (auto e = check(delta, s->head)) return e;
      return check(delta, s->tail);
    }
    if (const auto* r = as<TRec>(t)) {
      // binders must be distinct along a scope path; unfolding may duplicate
      // them across parallel branches
      if (delta.count(r->var))
        return FormationError{
            "rec-binder-clash",
            "binder '" + r->var + "' shadows an enclosing binder", t};
      if (is_terminated(r->body))
        return FormationError{
            "rec-terminated",
            "body of 'rec " + r->var + "' is equivalent to skip", t};
      if (!is_contractive(r->body, r->var))
        return FormationError{
            "rec-not-contractive",
            "reference '" + r->var + "' is not guarded in the body", t};
      auto saved = sorts.find(r->var) != sorts.end()
                       ? std::optional<Sort>(sorts[r->var])
                       : std::nullopt;
      sorts[r->var] = head_sort(r->body, sorts);
      auto inner = delta;
      inner.insert(r->var);
      auto result = check(inner, r->body);
      if (saved)
        sorts[r->var] = *saved;
      else
        sorts.erase(r->var);
      return result;
    }
    return std::nullopt;  // unit, base, skip, end
  }

  std::optional<FormationError> check_fields(const std::set<Ident>& delta,
                                             const LabelMap& fields) {
    for (const auto& [l, f] : fields)
      if (auto e = check(delta, f)) return e;
    return std::nullopt;
  }
};

}  // namespace

std::optional<FormationError> check_formation(const std::set<Ident>& delta,
                                              const TypePtr& t) {
  Checker c;
  for (const auto& x : delta) c.sorts[x] = Sort::Unknown;
  return c.check(delta, t);
}

bool well_formed(const std::set<Ident>& delta, const TypePtr& t) {
  return !check_formation(delta, t).has_value();
}

bool well_formed(const TypePtr& t) { return well_formed({}, t); }

}  // namespace cfsub
