#include "cfsub/gen.hpp"

#include <algorithm>
#include <random>

#include "cfsub/oracle.hpp"

namespace cfsub {

namespace {

void cov_refs(const TypePtr& t, bool covariant, std::set<Ident>& bound,
              std::set<Ident>& cov, std::set<Ident>& contrav) {
  if (const auto* v = as<TVar>(t)) {
    if (bound.count(v->name)) return;
    (covariant ? cov : contrav).insert(v->name);
    return;
  }
  if (const auto* a = as<TArrow>(t)) {
    cov_refs(a->dom, !covariant, bound, cov, contrav);
    cov_refs(a->rng, covariant, bound, cov, contrav);
    return;
  }
  if (const auto* m = as<TMsg>(t)) {
    cov_refs(m->payload, m->pol == Polarity::Out ? !covariant : covariant,
             bound, cov, contrav);
    return;
  }
  if (const auto* s = as<TSeq>(t)) {
    cov_refs(s->head, covariant, bound, cov, contrav);
    cov_refs(s->tail, covariant, bound, cov, contrav);
    return;
  }
  if (const auto* r = as<TRec>(t)) {
    bool inserted = bound.insert(r->var).second;
    cov_refs(r->body, covariant, bound, cov, contrav);
    if (inserted) bound.erase(r->var);
    return;
  }
  const LabelMap* fields = nullptr;
  if (const auto* r = as<TRecord>(t)) fields = &r->fields;
  if (const auto* v = as<TVariant>(t)) fields = &v->fields;
  if (const auto* c = as<TChoice>(t)) fields = &c->branches;
  if (fields)
    for (const auto& [_, f] : *fields) cov_refs(f, covariant, bound, cov, contrav);
}

}  // namespace

std::set<Ident> free_covariant_refs(const TypePtr& t) {
  std::set<Ident> bound, cov, contrav;
  cov_refs(t, true, bound, cov, contrav);
  return cov;
}

std::set<Ident> free_contravariant_refs(const TypePtr& t) {
  std::set<Ident> bound, cov, contrav;
  cov_refs(t, true, bound, cov, contrav);
  return contrav;
}

namespace {

enum class PSort { Any, Session };

using Pair = std::pair<TypePtr, TypePtr>;
using Triple = std::array<TypePtr, 3>;

struct EnvVar {
  Ident name;
  PSort sort;
  bool equiv_ok;    // usable at either variance (equivalence binder)
  bool birth_pol;   // polarity where the binder was introduced
};

constexpr int kMuRetries = 3;
constexpr int kStrictRetries = 8;
constexpr int kDiscardRetries = 64;

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.labels.empty() || cfg.bases.empty())
      throw GenError("generator needs at least one label and one base type");
  }

  TypePtr single_type() {
    return single(static_cast<int>(cfg_.size), PSort::Any, true);
  }

  Pair valid_pair() {
    return vp(static_cast<int>(cfg_.size), PSort::Any, true);
  }

  Triple valid_triple() {
    return vt(static_cast<int>(cfg_.size), PSort::Any);
  }

  Pair invalid_pair() {
    for (int attempt = 0; attempt < kDiscardRetries; ++attempt) {
      Pair p = iv(static_cast<int>(cfg_.size), PSort::Any, true);
      if (!well_formed(p.first) || !well_formed(p.second)) continue;
      if (!bounded_similar_types(p.first, p.second, 6)) return p;
      // accidentally a subtyping pair (or too deep to refute): discard
    }
    throw GenError(
        "invalid-pair generation exceeded the retry limit; the configuration "
        "produces too few refutable shapes (try a larger size)");
  }

 private:
  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<EnvVar> env_;
  int var_counter_ = 0;

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin() { return pick(2) == 0; }
  int split(int size) { return static_cast<int>(pick(static_cast<std::size_t>(size) + 1)); }
  std::string a_base() { return cfg_.bases[pick(cfg_.bases.size())]; }
  Polarity a_pol() { return coin() ? Polarity::In : Polarity::Out; }
  View a_view() { return coin() ? View::Internal : View::External; }

  Ident fresh_var() { return "v" + std::to_string(var_counter_++); }

  // label sets with small <= big, both nonempty; strict asks for a proper
  // inclusion, degrading when the alphabet is a singleton
  void label_sets(std::vector<std::string>& small, std::vector<std::string>& big,
                  bool strict) {
    std::size_t max = cfg_.labels.size();
    std::size_t nb = 1 + pick(max);
    if (strict && nb < 2) nb = std::min<std::size_t>(2, max);
    std::size_t ns = strict && nb >= 2 ? 1 + pick(nb - 1) : 1 + pick(nb);
    std::vector<std::string> all = cfg_.labels;
    std::shuffle(all.begin(), all.end(), rng_);
    big.assign(all.begin(), all.begin() + static_cast<long>(nb));
    std::sort(big.begin(), big.end());
    std::vector<std::string> shuffled = big;
    std::shuffle(shuffled.begin(), shuffled.end(), rng_);
    small.assign(shuffled.begin(), shuffled.begin() + static_cast<long>(ns));
    std::sort(small.begin(), small.end());
  }

  std::vector<const EnvVar*> usable_vars(PSort sort, bool pol) {
    std::vector<const EnvVar*> out;
    for (const auto& v : env_) {
      if (sort == PSort::Session && v.sort != PSort::Session) continue;
      if (v.equiv_ok || v.birth_pol == pol) out.push_back(&v);
    }
    return out;
  }

  // ---- single well-formed type ------------------------------------------

  TypePtr single(int size, PSort sort, bool pol) {
    if (size <= 0) return single_leaf(sort, pol);
    enum Item { Msg, ChoiceI, SeqI, Mu, EndPad, Arrow, Record, Variant };
    std::vector<Item> items = {Msg, Msg, ChoiceI, SeqI, SeqI, Mu, EndPad};
    if (sort == PSort::Any) {
      items.push_back(Arrow);
      items.push_back(Record);
      items.push_back(Variant);
    }
    Item item = items[pick(items.size())];
    switch (item) {
      case Msg: {
        Polarity p = a_pol();
        return msg(p, single(size - 1, PSort::Any,
                             p == Polarity::Out ? !pol : pol));
      }
      case ChoiceI: {
        std::vector<std::string> ls, unused;
        label_sets(ls, unused, false);
        LabelMap bs;
        int each = (size - 1) / static_cast<int>(ls.size());
        for (const auto& l : ls) bs.emplace(l, single(each, PSort::Session, pol));
        return choice(a_view(), std::move(bs));
      }
      case SeqI: {
        int s1 = split(size - 1);
        return seq(single(s1, PSort::Session, pol),
                   single(size - 1 - s1, PSort::Session, pol));
      }
      case Mu: {
        PSort body_sort = sort == PSort::Session
                              ? PSort::Session
                              : (coin() ? PSort::Session : PSort::Any);
        return mu_single(size, body_sort, pol);
      }
      case EndPad:
        return coin() ? end() : seq(end(), single(size - 1, PSort::Session, pol));
      case Arrow: {
        int s1 = split(size - 1);
        Multiplicity m = coin() ? Multiplicity::Un : Multiplicity::Lin;
        return arrow(m, single(s1, PSort::Any, !pol),
                     single(size - 1 - s1, PSort::Any, pol));
      }
      case Record:
      case Variant: {
        std::vector<std::string> ls, unused;
        label_sets(ls, unused, false);
        LabelMap fs;
        int each = (size - 1) / static_cast<int>(ls.size());
        for (const auto& l : ls) fs.emplace(l, single(each, PSort::Any, pol));
        return item == Record ? record(std::move(fs)) : variant(std::move(fs));
      }
    }
    return skip();
  }

  TypePtr single_leaf(PSort sort, bool pol) {
    auto vars = usable_vars(sort, pol);
    std::size_t options = (sort == PSort::Any ? 4 : 2) + vars.size();
    std::size_t k = pick(options);
    if (sort == PSort::Any) {
      if (k == 0) return unit();
      if (k == 1) return base(a_base());
      if (k == 2) return skip();
      if (k == 3) return end();
      return tvar(vars[k - 4]->name);
    }
    if (k == 0) return skip();
    if (k == 1) return end();
    return tvar(vars[k - 2]->name);
  }

  TypePtr mu_single(int size, PSort body_sort, bool pol) {
    Ident x = fresh_var();
    env_.push_back({x, body_sort, false, pol});
    TypePtr body = skip();
    bool ok = false;
    for (int i = 0; i < kMuRetries && !ok; ++i) {
      body = single(size - 1, body_sort, pol);
      ok = !is_terminated(body) && is_contractive(body, x);
    }
    env_.pop_back();
    if (ok) return rec(x, body);
    // the binder is no longer usable, so this body cannot mention x
    TypePtr closed = single(size - 1, body_sort, pol);
    if (!is_terminated(closed)) return rec(x, closed);
    return closed;
  }

  // ---- valid pairs -------------------------------------------------------

  Pair leaf_pair(PSort sort, bool pol) {
    auto vars = usable_vars(sort, pol);
    std::size_t options = (sort == PSort::Any ? 3 : 2) + vars.size();
    std::size_t k = pick(options);
    if (sort == PSort::Any) {
      if (k == 0) return {unit(), unit()};
      if (k == 1) return {skip(), skip()};
      if (k == 2) return {end(), end()};
      TypePtr v = tvar(vars[k - 3]->name);
      return {v, v};
    }
    if (k == 0) return {skip(), skip()};
    if (k == 1) return {end(), end()};
    TypePtr v = tvar(vars[k - 2]->name);
    return {v, v};
  }

  // multiplicities with left below right
  std::pair<Multiplicity, Multiplicity> sub_mults() {
    switch (pick(3)) {
      case 0: return {Multiplicity::Un, Multiplicity::Un};
      case 1: return {Multiplicity::Lin, Multiplicity::Lin};
      default: return {Multiplicity::Un, Multiplicity::Lin};
    }
  }

  Pair vp(int size, PSort sort, bool pol) {
    if (size <= 0) return leaf_pair(sort, pol);
    enum Item {
      IMsg, IChoice, ISeq, IEndAbs, ISkipPad, IDist, IAssoc, IMu, IMuFree,
      IMuUnfold, IArrow, IRecord, IVariant
    };
    std::vector<Item> items = {IMsg, IChoice, ISeq, IEndAbs, ISkipPad,
                               IDist, IAssoc, IMu, IMuFree, IMuUnfold};
    if (sort == PSort::Any) {
      items.push_back(IArrow);
      items.push_back(IRecord);
      items.push_back(IVariant);
    }
    switch (items[pick(items.size())]) {
      case IMsg: {
        Polarity p = a_pol();
        if (p == Polarity::In) {
          auto [lo, hi] = vp(size - 1, PSort::Any, pol);
          return {msg(p, lo), msg(p, hi)};
        }
        auto [lo, hi] = vp(size - 1, PSort::Any, !pol);
        return {msg(p, hi), msg(p, lo)};
      }
      case IChoice: {
        View v = a_view();
        return choice_pair(v, size, pol);
      }
      case ISeq: {
        int s1 = split(size - 1);
        auto [l1, r1] = vp(s1, PSort::Session, pol);
        auto [l2, r2] = vp(size - 1 - s1, PSort::Session, pol);
        return {seq(l1, l2), seq(r1, r2)};
      }
      case IEndAbs: {
        TypePtr s = single(size - 1, PSort::Session, pol);
        switch (pick(3)) {
          case 0: return {seq(end(), s), end()};
          case 1: return {end(), seq(end(), s)};
          default:
            return {seq(end(), s), seq(end(), single(0, PSort::Session, pol))};
        }
      }
      case ISkipPad: {
        auto [lo, hi] = vp(size - 1, PSort::Session, pol);
        switch (pick(4)) {
          case 0: return {seq(lo, skip()), hi};
          case 1: return {seq(skip(), lo), hi};
          case 2: return {lo, seq(hi, skip())};
          default: return {lo, seq(skip(), hi)};
        }
      }
      case IDist: {
        View v = a_view();
        int s1 = split(size - 1);
        auto [cl, cr] = choice_pair(v, s1, pol);
        auto [tl, tr] = vp(size - 1 - s1, PSort::Session, pol);
        const auto& left_choice = std::get<TChoice>(cl->node);
        const auto& right_choice = std::get<TChoice>(cr->node);
        if (coin()) {
          // choice ; tail on the left, distributed on the right
          LabelMap distributed;
          for (const auto& [l, b] : right_choice.branches)
            distributed.emplace(l, seq(b, tr));
          return {seq(cl, tl), choice(v, std::move(distributed))};
        }
        LabelMap distributed;
        for (const auto& [l, b] : left_choice.branches)
          distributed.emplace(l, seq(b, tl));
        return {choice(v, std::move(distributed)), seq(cr, tr)};
      }
      case IAssoc: {
        int s1 = split(size - 1);
        int s2 = split(size - 1 - s1);
        auto [l1, r1] = vp(s1, PSort::Session, pol);
        auto [l2, r2] = vp(s2, PSort::Session, pol);
        auto [l3, r3] = vp(size - 1 - s1 - s2, PSort::Session, pol);
        if (coin()) return {seq(l1, seq(l2, l3)), seq(seq(r1, r2), r3)};
        return {seq(seq(l1, l2), l3), seq(r1, seq(r2, r3))};
      }
      case IMu: return mu_pair(size, sort, pol, false);
      case IMuFree: {
        auto [lo, hi] = vp(size - 1, sort, pol);
        Ident x = fresh_var();
        if (coin()) {
          if (!is_terminated(lo)) return {rec(x, lo), hi};
        } else {
          if (!is_terminated(hi)) return {lo, rec(x, hi)};
        }
        return {lo, hi};
      }
      case IMuUnfold: {
        Pair p = mu_pair(size, sort, pol, true);
        const auto* r = as<TRec>(p.second);
        if (!r) return p;
        return {p.first, substitute(r->body, r->var, p.second)};
      }
      case IArrow: {
        auto [m, n] = sub_mults();
        int s1 = split(size - 1);
        auto [dlo, dhi] = vp(s1, PSort::Any, !pol);
        auto [rlo, rhi] = vp(size - 1 - s1, PSort::Any, pol);
        return {arrow(m, dhi, rlo), arrow(n, dlo, rhi)};
      }
      case IRecord: {
        // width: the supertype has a subset of the labels
        std::vector<std::string> sub, all;
        label_sets(sub, all, false);
        LabelMap lf, rf;
        int each = (size - 1) / static_cast<int>(all.size());
        std::set<std::string> keep(sub.begin(), sub.end());
        for (const auto& l : all) {
          if (keep.count(l)) {
            auto [lo, hi] = vp(each, PSort::Any, pol);
            lf.emplace(l, lo);
            rf.emplace(l, hi);
          } else {
            lf.emplace(l, single(each, PSort::Any, pol));
          }
        }
        return {record(std::move(lf)), record(std::move(rf))};
      }
      case IVariant: {
        std::vector<std::string> sub, all;
        label_sets(sub, all, false);
        LabelMap lf, rf;
        int each = (size - 1) / static_cast<int>(all.size());
        std::set<std::string> keep(sub.begin(), sub.end());
        for (const auto& l : all) {
          if (keep.count(l)) {
            auto [lo, hi] = vp(each, PSort::Any, pol);
            lf.emplace(l, lo);
            rf.emplace(l, hi);
          } else {
            rf.emplace(l, single(each, PSort::Any, pol));
          }
        }
        return {variant(std::move(lf)), variant(std::move(rf))};
      }
    }
    return leaf_pair(sort, pol);
  }

  // internal choices widen on the left, external on the right
  Pair choice_pair(View v, int size, bool pol, bool strict = false) {
    std::vector<std::string> sub, all;
    label_sets(sub, all, strict);
    LabelMap lf, rf;
    int each = std::max(0, size - 1) / static_cast<int>(all.size());
    std::set<std::string> keep(sub.begin(), sub.end());
    for (const auto& l : all) {
      if (keep.count(l)) {
        auto [lo, hi] = vp(each, PSort::Session, pol);
        lf.emplace(l, lo);
        rf.emplace(l, hi);
      } else if (v == View::Internal) {
        lf.emplace(l, single(each, PSort::Session, pol));
      } else {
        rf.emplace(l, single(each, PSort::Session, pol));
      }
    }
    return {choice(v, std::move(lf)), choice(v, std::move(rf))};
  }

  Pair mu_pair(int size, PSort sort, bool pol, bool force_rec) {
    PSort body_sort = sort == PSort::Session
                          ? PSort::Session
                          : (coin() ? PSort::Session : PSort::Any);
    bool equiv_mode = coin();
    Ident x = fresh_var();
    env_.push_back({x, body_sort, equiv_mode, pol});
    Pair body{skip(), skip()};
    bool ok = false;
    for (int i = 0; i < kMuRetries && !ok; ++i) {
      body = equiv_mode ? ep(size - 1, body_sort, pol)
                        : vp(size - 1, body_sort, pol);
      ok = mu_guards(body, x);
    }
    env_.pop_back();
    if (!ok) {
      // retry with the binder unusable, so the pair stays closed
      body = equiv_mode ? ep(size - 1, body_sort, pol)
                        : vp(size - 1, body_sort, pol);
      ok = mu_guards(body, x);
      if (!ok) {
        if (!force_rec) return body;
        return {rec(x, msg(Polarity::Out, unit())),
                rec(x, msg(Polarity::Out, unit()))};
      }
    }
    return {rec(x, body.first), rec(x, body.second)};
  }

  static bool mu_guards(const Pair& body, const Ident& x) {
    return !is_terminated(body.first) && !is_terminated(body.second) &&
           is_contractive(body.first, x) && is_contractive(body.second, x);
  }

  // ---- equivalent pairs ---------------------------------------------------

  Pair ep(int size, PSort sort, bool pol) {
    if (size <= 0) return leaf_pair(sort, pol);
    enum Item { ESame, EMsg, EChoice, ESeq, ESkipPad, EAssoc, EEnd, EMu,
                EArrow, ERecord, EVariant };
    std::vector<Item> items = {ESame, EMsg, EChoice, ESeq, ESkipPad, EAssoc,
                               EEnd, EMu};
    if (sort == PSort::Any) {
      items.push_back(EArrow);
      items.push_back(ERecord);
      items.push_back(EVariant);
    }
    switch (items[pick(items.size())]) {
      case ESame: {
        TypePtr t = single(size, sort, pol);
        return {t, t};
      }
      case EMsg: {
        Polarity p = a_pol();
        auto [a, b] = ep(size - 1, PSort::Any, p == Polarity::Out ? !pol : pol);
        return {msg(p, a), msg(p, b)};
      }
      case EChoice: {
        View v = a_view();
        std::vector<std::string> ls, unused;
        label_sets(ls, unused, false);
        LabelMap lf, rf;
        int each = (size - 1) / static_cast<int>(ls.size());
        for (const auto& l : ls) {
          auto [a, b] = ep(each, PSort::Session, pol);
          lf.emplace(l, a);
          rf.emplace(l, b);
        }
        return {choice(v, std::move(lf)), choice(v, std::move(rf))};
      }
      case ESeq: {
        int s1 = split(size - 1);
        auto [a1, b1] = ep(s1, PSort::Session, pol);
        auto [a2, b2] = ep(size - 1 - s1, PSort::Session, pol);
        return {seq(a1, a2), seq(b1, b2)};
      }
      case ESkipPad: {
        auto [a, b] = ep(size - 1, PSort::Session, pol);
        switch (pick(4)) {
          case 0: return {seq(a, skip()), b};
          case 1: return {seq(skip(), a), b};
          case 2: return {a, seq(b, skip())};
          default: return {a, seq(skip(), b)};
        }
      }
      case EAssoc: {
        int s1 = split(size - 1);
        int s2 = split(size - 1 - s1);
        auto [a1, b1] = ep(s1, PSort::Session, pol);
        auto [a2, b2] = ep(s2, PSort::Session, pol);
        auto [a3, b3] = ep(size - 1 - s1 - s2, PSort::Session, pol);
        if (coin()) return {seq(a1, seq(a2, a3)), seq(seq(b1, b2), b3)};
        return {seq(seq(a1, a2), a3), seq(b1, seq(b2, b3))};
      }
      case EEnd: {
        switch (pick(3)) {
          case 0:
            return {seq(end(), single(size - 1, PSort::Session, pol)), end()};
          case 1:
            return {end(), seq(end(), single(size - 1, PSort::Session, pol))};
          default: {
            int s1 = split(size - 1);
            return {seq(end(), single(s1, PSort::Session, pol)),
                    seq(end(), single(size - 1 - s1, PSort::Session, pol))};
          }
        }
      }
      case EMu: {
        PSort body_sort = sort == PSort::Session
                              ? PSort::Session
                              : (coin() ? PSort::Session : PSort::Any);
        Ident x = fresh_var();
        env_.push_back({x, body_sort, true, pol});
        Pair body{skip(), skip()};
        bool ok = false;
        for (int i = 0; i < kMuRetries && !ok; ++i) {
          body = ep(size - 1, body_sort, pol);
          ok = mu_guards(body, x);
        }
        env_.pop_back();
        if (!ok) return ep(size > 1 ? size - 1 : 0, sort, pol);
        Pair out{rec(x, body.first), rec(x, body.second)};
        // unfolding preserves equivalence; occasionally unfold one side
        if (coin()) return out;
        if (coin()) {
          const auto& r = std::get<TRec>(out.first->node);
          return {substitute(r.body, r.var, out.first), out.second};
        }
        const auto& r = std::get<TRec>(out.second->node);
        return {out.first, substitute(r.body, r.var, out.second)};
      }
      case EArrow: {
        Multiplicity m = coin() ? Multiplicity::Un : Multiplicity::Lin;
        int s1 = split(size - 1);
        auto [d1, d2] = ep(s1, PSort::Any, !pol);
        auto [r1, r2] = ep(size - 1 - s1, PSort::Any, pol);
        return {arrow(m, d1, r1), arrow(m, d2, r2)};
      }
      case ERecord:
      case EVariant: {
        bool rcd = coin();
        std::vector<std::string> ls, unused;
        label_sets(ls, unused, false);
        LabelMap lf, rf;
        int each = (size - 1) / static_cast<int>(ls.size());
        for (const auto& l : ls) {
          auto [a, b] = ep(each, PSort::Any, pol);
          lf.emplace(l, a);
          rf.emplace(l, b);
        }
        if (rcd) return {record(std::move(lf)), record(std::move(rf))};
        return {variant(std::move(lf)), variant(std::move(rf))};
      }
    }
    return leaf_pair(sort, pol);
  }

  // ---- valid triples (a <= b <= c) ---------------------------------------

  Triple vt(int size, PSort sort) {
    if (size <= 0) {
      Pair p = leaf_pair(sort, true);
      return {p.first, p.first, p.second};
    }
    enum Item { TMsg, TChoice, TSeq, TSkipPad, TEnd, TArrow, TRecord, TLift };
    std::vector<Item> items = {TMsg, TChoice, TSeq, TSkipPad, TEnd, TLift};
    if (sort == PSort::Any) {
      items.push_back(TArrow);
      items.push_back(TRecord);
    }
    switch (items[pick(items.size())]) {
      case TMsg: {
        Polarity p = a_pol();
        auto [a, b, c] = vt(size - 1, PSort::Any);
        if (p == Polarity::In) return {msg(p, a), msg(p, b), msg(p, c)};
        return {msg(p, c), msg(p, b), msg(p, a)};
      }
      case TChoice: {
        View v = a_view();
        std::vector<std::string> small, big;
        label_sets(small, big, false);
        std::set<std::string> keep(small.begin(), small.end());
        LabelMap fa, fb, fc;
        int each = (size - 1) / static_cast<int>(big.size());
        for (const auto& l : big) {
          if (keep.count(l)) {
            auto [a, b, c] = vt(each, PSort::Session);
            fa.emplace(l, a);
            fb.emplace(l, b);
            fc.emplace(l, c);
          } else if (v == View::Internal) {
            // widest set on the smallest type
            auto [a, b] = vp(each, PSort::Session, true);
            fa.emplace(l, a);
            fb.emplace(l, b);
          } else {
            auto [b, c] = vp(each, PSort::Session, true);
            fb.emplace(l, b);
            fc.emplace(l, c);
          }
        }
        return {choice(v, fa, true), choice(v, fb, true), choice(v, fc, true)};
      }
      case TSeq: {
        int s1 = split(size - 1);
        auto [a1, b1, c1] = vt(s1, PSort::Session);
        auto [a2, b2, c2] = vt(size - 1 - s1, PSort::Session);
        return {seq(a1, a2), seq(b1, b2), seq(c1, c2)};
      }
      case TSkipPad: {
        auto [a, b, c] = vt(size - 1, PSort::Session);
        switch (pick(3)) {
          case 0: return {seq(skip(), a), b, seq(c, skip())};
          case 1: return {a, seq(skip(), b), c};
          default: return {seq(a, skip()), b, seq(skip(), c)};
        }
      }
      case TEnd: {
        TypePtr s1 = single(split(size - 1), PSort::Session, true);
        TypePtr s2 = single(split(size - 1), PSort::Session, true);
        return {seq(end(), s1), end(), seq(end(), s2)};
      }
      case TArrow: {
        Multiplicity m1, m2, m3;
        switch (pick(4)) {
          case 0: m1 = m2 = m3 = Multiplicity::Un; break;
          case 1: m1 = m2 = m3 = Multiplicity::Lin; break;
          case 2:
            m1 = Multiplicity::Un;
            m2 = m3 = Multiplicity::Lin;
            break;
          default:
            m1 = m2 = Multiplicity::Un;
            m3 = Multiplicity::Lin;
            break;
        }
        int s1 = split(size - 1);
        auto [da, db, dc] = vt(s1, PSort::Any);
        auto [ra, rb, rc] = vt(size - 1 - s1, PSort::Any);
        return {arrow(m1, dc, ra), arrow(m2, db, rb), arrow(m3, da, rc)};
      }
      case TRecord: {
        std::vector<std::string> small, big;
        label_sets(small, big, false);
        std::set<std::string> keep(small.begin(), small.end());
        LabelMap fa, fb, fc;
        int each = (size - 1) / static_cast<int>(big.size());
        for (const auto& l : big) {
          if (keep.count(l)) {
            auto [a, b, c] = vt(each, PSort::Any);
            fa.emplace(l, a);
            fb.emplace(l, b);
            fc.emplace(l, c);
          } else {
            auto [a, b] = vp(each, PSort::Any, true);
            fa.emplace(l, a);
            fb.emplace(l, b);
          }
        }
        return {record(std::move(fa)), record(std::move(fb)),
                record(std::move(fc))};
      }
      case TLift:
      default: {
        auto [a, b] = vp(size - 1, sort, true);
        return {a, b, b};
      }
    }
  }

  // choice() that tolerates an accidentally empty branch map
  static TypePtr choice(View v, LabelMap m, bool repair = false) {
    if (m.empty() && repair) m.emplace("A", skip());
    return cfsub::choice(v, std::move(m));
  }

  // ---- invalid pairs ------------------------------------------------------

  Pair strict_valid(int size, PSort sort, bool pol) {
    Pair p = vp(size, sort, pol);
    for (int i = 0; i < kStrictRetries; ++i) {
      if (free_refs(p.first).empty() && free_refs(p.second).empty() &&
          !bounded_similar_types(p.first, p.second, 6, classify_bisimulation))
        return p;
      p = vp(size, sort, pol);
    }
    return p;  // best effort; the discard gate has the final say
  }

  Pair iv(int size, PSort sort, bool pol) {
    if (size <= 1) {
      if (sort == PSort::Session)
        return coin() ? Pair{skip(), end()} : Pair{end(), skip()};
      switch (pick(4)) {
        case 0: return {skip(), end()};
        case 1: return {end(), skip()};
        case 2: return {base(cfg_.bases[0]), unit()};
        default: return {unit(), base(cfg_.bases[0])};
      }
    }
    if (coin()) return direct_invalid(size, sort, pol);
    return wrapped_invalid(size, sort, pol);
  }

  Pair direct_invalid(int size, PSort sort, bool pol) {
    enum Item { DMsgPol, DMsgIn, DMsgOut, DChoiceI, DChoiceE,
                DArrowLin, DArrowDom, DArrowRng, DRecord, DVariant };
    std::vector<Item> items = {DMsgPol, DMsgIn, DMsgOut, DChoiceI, DChoiceE};
    if (sort == PSort::Any) {
      items.insert(items.end(),
                   {DArrowLin, DArrowDom, DArrowRng, DRecord, DVariant});
    }
    switch (items[pick(items.size())]) {
      case DMsgPol: {
        TypePtr t = single(size - 1, PSort::Any, pol);
        if (!free_refs(t).empty()) t = unit();
        return coin() ? Pair{msg(Polarity::In, t), msg(Polarity::Out, t)}
                      : Pair{msg(Polarity::Out, t), msg(Polarity::In, t)};
      }
      case DMsgIn: {
        auto [lo, hi] = strict_valid(size - 1, PSort::Any, pol);
        return {msg(Polarity::In, hi), msg(Polarity::In, lo)};
      }
      case DMsgOut: {
        auto [lo, hi] = strict_valid(size - 1, PSort::Any, pol);
        return {msg(Polarity::Out, lo), msg(Polarity::Out, hi)};
      }
      case DChoiceI: {
        // the subtype of an internal choice may not miss labels
        Pair p = choice_pair(View::Internal, size, pol, true);
        return {p.second, p.first};
      }
      case DChoiceE: {
        Pair p = choice_pair(View::External, size, pol, true);
        return {p.second, p.first};
      }
      case DArrowLin: {
        int s1 = split(size - 1);
        auto [dlo, dhi] = vp(s1, PSort::Any, !pol);
        auto [rlo, rhi] = vp(size - 1 - s1, PSort::Any, pol);
        return {arrow(Multiplicity::Lin, dhi, rlo),
                arrow(Multiplicity::Un, dlo, rhi)};
      }
      case DArrowDom: {
        auto [m, n] = sub_mults();
        int s1 = split(size - 1);
        auto [t, v] = strict_valid(s1, PSort::Any, pol);
        auto [rlo, rhi] = vp(size - 1 - s1, PSort::Any, pol);
        return {arrow(m, t, rlo), arrow(n, v, rhi)};
      }
      case DArrowRng: {
        auto [m, n] = sub_mults();
        int s1 = split(size - 1);
        auto [dlo, dhi] = vp(s1, PSort::Any, !pol);
        auto [w, u] = strict_valid(size - 1 - s1, PSort::Any, pol);
        return {arrow(m, dhi, u), arrow(n, dlo, w)};
      }
      case DRecord: {
        // swap a valid width pair: the left misses labels the right has
        Pair p = width_record_pair(size, pol, true);
        return {p.second, p.first};
      }
      case DVariant:
      default: {
        Pair p = width_variant_pair(size, pol, true);
        return {p.second, p.first};
      }
    }
  }

  Pair width_record_pair(int size, bool pol, bool strict) {
    std::vector<std::string> sub, all;
    label_sets(sub, all, strict);
    LabelMap lf, rf;
    int each = (size - 1) / static_cast<int>(all.size());
    std::set<std::string> keep(sub.begin(), sub.end());
    for (const auto& l : all) {
      if (keep.count(l)) {
        auto [lo, hi] = vp(each, PSort::Any, pol);
        lf.emplace(l, lo);
        rf.emplace(l, hi);
      } else {
        lf.emplace(l, single(each, PSort::Any, pol));
      }
    }
    return {record(std::move(lf)), record(std::move(rf))};
  }

  Pair width_variant_pair(int size, bool pol, bool strict) {
    std::vector<std::string> sub, all;
    label_sets(sub, all, strict);
    LabelMap lf, rf;
    int each = (size - 1) / static_cast<int>(all.size());
    std::set<std::string> keep(sub.begin(), sub.end());
    for (const auto& l : all) {
      if (keep.count(l)) {
        auto [lo, hi] = vp(each, PSort::Any, pol);
        lf.emplace(l, lo);
        rf.emplace(l, hi);
      } else {
        rf.emplace(l, single(each, PSort::Any, pol));
      }
    }
    return {variant(std::move(lf)), variant(std::move(rf))};
  }

  Pair wrapped_invalid(int size, PSort sort, bool pol) {
    enum Item { WMsg, WSeq, WSkipPad, WAssoc, WChoice, WArrow, WRecord, WVariant };
    std::vector<Item> items = {WMsg, WSeq, WSkipPad, WAssoc, WChoice};
    if (sort == PSort::Any) {
      items.insert(items.end(), {WArrow, WRecord, WVariant});
    }
    switch (items[pick(items.size())]) {
      case WMsg: {
        Polarity p = a_pol();
        auto [a, b] = iv(size - 1, PSort::Any, p == Polarity::Out ? !pol : pol);
        if (p == Polarity::In) return {msg(p, a), msg(p, b)};
        return {msg(p, b), msg(p, a)};
      }
      case WSeq: {
        int s1 = split(size - 1);
        bool poison_first = coin();
        auto [l1, r1] = poison_first ? iv(s1, PSort::Session, pol)
                                     : vp(s1, PSort::Session, pol);
        auto [l2, r2] = poison_first ? vp(size - 1 - s1, PSort::Session, pol)
                                     : iv(size - 1 - s1, PSort::Session, pol);
        return {seq(l1, l2), seq(r1, r2)};
      }
      case WSkipPad: {
        auto [a, b] = iv(size - 1, PSort::Session, pol);
        switch (pick(4)) {
          case 0: return {seq(a, skip()), b};
          case 1: return {seq(skip(), a), b};
          case 2: return {a, seq(b, skip())};
          default: return {a, seq(skip(), b)};
        }
      }
      case WAssoc: {
        int s1 = split(size - 1);
        int s2 = split(size - 1 - s1);
        std::size_t poison = pick(3);
        auto part = [&](std::size_t idx, int sz) {
          return idx == poison ? iv(sz, PSort::Session, pol)
                               : vp(sz, PSort::Session, pol);
        };
        auto [l1, r1] = part(0, s1);
        auto [l2, r2] = part(1, s2);
        auto [l3, r3] = part(2, size - 1 - s1 - s2);
        if (coin()) return {seq(l1, seq(l2, l3)), seq(seq(r1, r2), r3)};
        return {seq(seq(l1, l2), l3), seq(r1, seq(r2, r3))};
      }
      case WChoice: {
        View v = a_view();
        std::vector<std::string> sub, all;
        label_sets(sub, all, false);
        std::set<std::string> keep(sub.begin(), sub.end());
        std::vector<std::string> common(keep.begin(), keep.end());
        const std::string& poison = common[pick(common.size())];
        LabelMap lf, rf;
        int each = (size - 1) / static_cast<int>(all.size());
        for (const auto& l : all) {
          if (keep.count(l)) {
            auto [lo, hi] = l == poison ? iv(each, PSort::Session, pol)
                                        : vp(each, PSort::Session, pol);
            lf.emplace(l, lo);
            rf.emplace(l, hi);
          } else if (v == View::Internal) {
            lf.emplace(l, single(each, PSort::Session, pol));
          } else {
            rf.emplace(l, single(each, PSort::Session, pol));
          }
        }
        return {choice(v, std::move(lf)), choice(v, std::move(rf))};
      }
      case WArrow: {
        auto [m, n] = sub_mults();
        int s1 = split(size - 1);
        if (coin()) {
          auto [a, b] = iv(s1, PSort::Any, !pol);  // poison the domain
          auto [rlo, rhi] = vp(size - 1 - s1, PSort::Any, pol);
          return {arrow(m, b, rlo), arrow(n, a, rhi)};
        }
        auto [dlo, dhi] = vp(s1, PSort::Any, !pol);
        auto [a, b] = iv(size - 1 - s1, PSort::Any, pol);  // poison the range
        return {arrow(m, dhi, a), arrow(n, dlo, b)};
      }
      case WRecord: {
        Pair shape = width_record_pair(size, pol, false);
        const auto& rf = std::get<TRecord>(shape.second->node).fields;
        std::vector<std::string> common;
        for (const auto& [l, _] : rf) common.push_back(l);
        const std::string& poison = common[pick(common.size())];
        LabelMap lf2 = std::get<TRecord>(shape.first->node).fields;
        LabelMap rf2 = rf;
        auto [a, b] = iv(std::max(1, size / 2), PSort::Any, pol);
        lf2[poison] = a;
        rf2[poison] = b;
        return {record(std::move(lf2)), record(std::move(rf2))};
      }
      case WVariant:
      default: {
        Pair shape = width_variant_pair(size, pol, false);
        const auto& lfr = std::get<TVariant>(shape.first->node).fields;
        std::vector<std::string> common;
        for (const auto& [l, _] : lfr) common.push_back(l);
        const std::string& poison = common[pick(common.size())];
        LabelMap lf2 = lfr;
        LabelMap rf2 = std::get<TVariant>(shape.second->node).fields;
        auto [a, b] = iv(std::max(1, size / 2), PSort::Any, pol);
        lf2[poison] = a;
        rf2[poison] = b;
        return {variant(std::move(lf2)), variant(std::move(rf2))};
      }
    }
  }
};

}  // namespace

TypePtr random_type(const GenConfig& cfg) {
  Generator g(cfg);
  return g.single_type();
}

std::pair<TypePtr, TypePtr> random_valid_pair(const GenConfig& cfg) {
  Generator g(cfg);
  return g.valid_pair();
}

std::array<TypePtr, 3> random_valid_triple(const GenConfig& cfg) {
  Generator g(cfg);
  return g.valid_triple();
}

std::pair<TypePtr, TypePtr> random_invalid_pair(const GenConfig& cfg) {
  Generator g(cfg);
  return g.invalid_pair();
}

}  // namespace cfsub
