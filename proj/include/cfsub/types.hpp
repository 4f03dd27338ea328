#ifndef CFSUB_TYPES_HPP
#define CFSUB_TYPES_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace cfsub {

// Functional and higher-order context-free session types. Values are
// immutable after construction and freely shareable between threads.

using Ident = std::string;

enum class Multiplicity { Un, Lin };  // Un may stand in for Lin, not vice versa
enum class Polarity { In, Out };      // ? and !
enum class View { Internal, External };  // + and &

struct Type;
using TypePtr = std::shared_ptr<const Type>;
using LabelMap = std::map<std::string, TypePtr>;

struct TUnit {};
struct TBase { std::string name; };
struct TArrow { Multiplicity mult; TypePtr dom; TypePtr rng; };
struct TRecord { LabelMap fields; };
struct TVariant { LabelMap fields; };
struct TMsg { Polarity pol; TypePtr payload; };
struct TChoice { View view; LabelMap branches; };
struct TSkip {};
struct TEnd {};
struct TSeq { TypePtr head; TypePtr tail; };
struct TVar { Ident name; };
struct TRec { Ident var; TypePtr body; };

struct Type {
  std::variant<TUnit, TBase, TArrow, TRecord, TVariant, TMsg, TChoice, TSkip,
               TEnd, TSeq, TVar, TRec>
      node;
};

TypePtr unit();
TypePtr base(std::string name);
TypePtr arrow(Multiplicity m, TypePtr dom, TypePtr rng);
TypePtr record(LabelMap fields);
TypePtr variant(LabelMap fields);
TypePtr msg(Polarity p, TypePtr payload);
// Throws std::invalid_argument on an empty branch map.
TypePtr choice(View v, LabelMap branches);
TypePtr skip();
TypePtr end();
TypePtr seq(TypePtr head, TypePtr tail);
TypePtr tvar(Ident name);
TypePtr rec(Ident var, TypePtr body);

template <typename T>
const T* as(const TypePtr& t) {
  return std::get_if<T>(&t->node);
}
template <typename T>
bool is(const TypePtr& t) {
  return std::holds_alternative<T>(t->node);
}

// Structural comparison; a total order usable as a map key.
std::strong_ordering compare(const Type& a, const Type& b);
bool equal(const TypePtr& a, const TypePtr& b);

struct TypeLess {
  bool operator()(const TypePtr& a, const TypePtr& b) const {
    if (a.get() == b.get()) return false;
    return compare(*a, *b) < 0;
  }
};

std::size_t node_count(const TypePtr& t);

std::set<Ident> free_refs(const TypePtr& t);

// Capture-avoiding substitution of `replacement` for free occurrences of `x`.
TypePtr substitute(const TypePtr& body, const Ident& x,
                   const TypePtr& replacement);

// A name based on `base` that does not occur in `avoid`.
Ident fresh_name(const Ident& base, const std::set<Ident>& avoid);

// The terminated judgement: the type exhibits no communication action.
bool is_terminated(const TypePtr& t);

// Contractivity on reference x: unfolding resolves a head constructor
// before reaching x.
bool is_contractive(const TypePtr& t, const Ident& x);

// First violated formation premise, for diagnostics.
struct FormationError {
  std::string rule;     // e.g. "ref-unbound", "rec-not-contractive"
  std::string detail;   // human-readable, names the offending subterm
  TypePtr subterm;
  std::string to_string() const { return rule + ": " + detail; }
};

// Type formation: all free references bound in delta, every rec body
// contractive and not terminated, binders pairwise distinct, and the
// two-sorted syntax respected (session positions hold session types).
std::optional<FormationError> check_formation(const std::set<Ident>& delta,
                                              const TypePtr& t);
bool well_formed(const std::set<Ident>& delta, const TypePtr& t);
bool well_formed(const TypePtr& t);

}  // namespace cfsub

#endif
