#include "cfsub/grammar.hpp"

#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cfsub/lts.hpp"

namespace cfsub {

std::size_t Grammar::production_count() const {
  std::size_t n = 0;
  for (const auto& m : prods) n += m.size();
  return n;
}

std::string word_to_string(const Word& w, const Grammar& g) {
  if (w.empty()) return "<empty>";
  std::string out;
  for (Sym s : w) {
    if (!out.empty()) out += " ";
    out += g.name(s);
  }
  return out;
}

GrammarBuilder::GrammarBuilder() {
  g_.prods.emplace_back();  // bottom: no productions
  g_.names.emplace_back("bot");
}

Sym GrammarBuilder::fresh_symbol() {
  static const char* letters = "XYZWV";
  Sym id = static_cast<Sym>(g_.prods.size());
  g_.prods.emplace_back();
  std::string name;
  if (call_ < 5)
    name = std::string(1, letters[call_]) + std::to_string(next_in_call_++);
  else
    name = "N" + std::to_string(call_) + "_" + std::to_string(next_in_call_++);
  g_.names.push_back(std::move(name));
  return id;
}

Word GrammarBuilder::translate(const TypePtr& t) {
  next_in_call_ = 0;
  Word w = word_of(t);
  ++call_;
  return w;
}

Word GrammarBuilder::word_of(const TypePtr& t) {
  if (is<TSkip>(t)) return {};
  if (const auto* s = as<TSeq>(t)) {
    Word head = word_of(s->head);
    Word tail = word_of(s->tail);
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }
  if (is<TVar>(t))
    throw std::logic_error("grammar translation reached a free reference");
  if (auto it = memo_.find(t); it != memo_.end()) return {it->second};
  Sym y = fresh_symbol();
  memo_.emplace(t, y);  // before descending, so rec subterms can loop back
  if (is<TRec>(t)) {
    install(y, unravel(t));
  } else {
    install(y, t);
  }
  return {y};
}

// Installs under `y` the productions dictated by the head constructor of a
// type produced by unravel (or any bare constructor application).
void GrammarBuilder::install(Sym y, const TypePtr& t) {
  auto add = [&](Action a, Word rhs) {
    g_.prods[static_cast<std::size_t>(y)].emplace(std::move(a), std::move(rhs));
  };
  if (is<TUnit>(t)) {
    add(act_unit(), {});
    return;
  }
  if (const auto* b = as<TBase>(t)) {
    add(act_base(b->name), {});
    return;
  }
  if (const auto* a = as<TArrow>(t)) {
    add(act_dom(), word_of(a->dom));
    add(act_rng(), word_of(a->rng));
    if (a->mult == Multiplicity::Lin) add(act_lin(), {});
    return;
  }
  if (const auto* r = as<TRecord>(t)) {
    add(act_rcd_default(), {Grammar::bottom});
    for (const auto& [l, f] : r->fields) add(act_rcd_field(l), word_of(f));
    return;
  }
  if (const auto* v = as<TVariant>(t)) {
    add(act_vrt_default(), {Grammar::bottom});
    for (const auto& [l, f] : v->fields) add(act_vrt_field(l), word_of(f));
    return;
  }
  if (is<TEnd>(t)) {
    add(act_end(), {Grammar::bottom});
    return;
  }
  if (const auto* m = as<TMsg>(t)) {
    Word payload = word_of(m->payload);
    payload.push_back(Grammar::bottom);
    add(act_msg_payload(m->pol), std::move(payload));
    add(act_msg_cont(m->pol), {});
    return;
  }
  if (const auto* c = as<TChoice>(t)) {
    add(act_choice_default(c->view), {Grammar::bottom});
    for (const auto& [l, b] : c->branches)
      add(act_choice_field(c->view, l), word_of(b));
    return;
  }
  if (const auto* s = as<TSeq>(t)) {
    // unravel leaves at most a message at the head of a sequencing
    const auto* m = as<TMsg>(s->head);
    if (!m) throw std::logic_error("unexpected sequencing head in translation");
    Word cont = word_of(s->tail);
    Word payload = word_of(m->payload);
    payload.push_back(Grammar::bottom);
    payload.insert(payload.end(), cont.begin(), cont.end());
    add(act_msg_payload(m->pol), std::move(payload));
    add(act_msg_cont(m->pol), std::move(cont));
    return;
  }
  throw std::logic_error("grammar translation reached an ill-formed head");
}

std::map<Action, Word> word_transitions(const Word& w, const Grammar& g) {
  std::map<Action, Word> out;
  if (w.empty()) return out;
  const auto& prods = g.prods[static_cast<std::size_t>(w.front())];
  for (const auto& [a, rhs] : prods) {
    Word next = rhs;
    next.insert(next.end(), w.begin() + 1, w.end());
    out.emplace(a, std::move(next));
  }
  return out;
}

namespace {
constexpr std::uint64_t kNormCap = std::numeric_limits<std::uint64_t>::max() / 4;

std::optional<std::uint64_t> add_norms(std::optional<std::uint64_t> a,
                                       std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  std::uint64_t s = *a + *b;
  return s > kNormCap ? kNormCap : s;
}
}  // namespace

NormTable::NormTable(const Grammar& g) : g_(&g), norm_(g.symbol_count()) {
  // value iteration; stabilizes within symbol_count rounds
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < g.symbol_count(); ++s) {
      for (const auto& [a, rhs] : g.prods[s]) {
        std::optional<std::uint64_t> candidate = 1;
        for (Sym x : rhs)
          candidate = add_norms(candidate, norm_[static_cast<std::size_t>(x)]);
        if (candidate && (!norm_[s] || *candidate < *norm_[s])) {
          norm_[s] = candidate;
          changed = true;
        }
      }
    }
  }
}

std::optional<std::uint64_t> NormTable::symbol_norm(Sym s) const {
  return norm_[static_cast<std::size_t>(s)];
}

std::optional<std::uint64_t> NormTable::word_norm(const Word& w) const {
  std::optional<std::uint64_t> total = 0;
  for (Sym s : w) total = add_norms(total, symbol_norm(s));
  return total;
}

std::optional<std::vector<Action>> NormTable::minimal_path(
    Sym s, std::size_t cap) const {
  if (!symbol_norm(s)) return std::nullopt;
  std::vector<Action> path;
  Word w{s};
  while (!w.empty()) {
    if (path.size() >= cap) return std::nullopt;
    Sym head = w.front();
    const auto& prods = g_->prods[static_cast<std::size_t>(head)];
    const Action* best_a = nullptr;
    const Word* best_rhs = nullptr;
    std::uint64_t best = 0;
    for (const auto& [a, rhs] : prods) {
      auto n = word_norm(rhs);
      if (!n) continue;
      if (!best_a || *n + 1 < best) {
        best_a = &a;
        best_rhs = &rhs;
        best = *n + 1;
      }
    }
    if (!best_a) return std::nullopt;  // inconsistent table; defensive
    path.push_back(*best_a);
    Word next = *best_rhs;
    next.insert(next.end(), w.begin() + 1, w.end());
    w = std::move(next);
  }
  return path;
}

Grammar prune(const Grammar& g) {
  NormTable norms(g);
  Grammar out = g;
  for (auto& prods : out.prods) {
    for (auto& [a, rhs] : prods) {
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (!norms.symbol_norm(rhs[i])) {
          rhs.resize(i + 1);
          break;
        }
      }
    }
  }
  return out;
}

void dump_grammar(std::ostream& os, const Grammar& g) {
  for (std::size_t s = 0; s < g.symbol_count(); ++s) {
    for (const auto& [a, rhs] : g.prods[s]) {
      os << g.names[s] << " -> " << action_to_string(a);
      for (Sym x : rhs) os << " " << g.name(x);
      os << "\n";
    }
  }
}

std::optional<std::map<Sym, Sym>> grammar_renaming(
    const Grammar& g1, const std::vector<Word>& starts1, const Grammar& g2,
    const std::vector<Word>& starts2) {
  if (starts1.size() != starts2.size()) return std::nullopt;
  if (g1.symbol_count() != g2.symbol_count()) return std::nullopt;
  if (g1.production_count() != g2.production_count()) return std::nullopt;

  std::map<Sym, Sym> fwd;
  std::map<Sym, Sym> bwd;
  std::vector<std::pair<Sym, Sym>> stack;

  auto match = [&](Sym a, Sym b) {
    auto f = fwd.find(a);
    auto r = bwd.find(b);
    if (f != fwd.end() || r != bwd.end())
      return f != fwd.end() && f->second == b && r != bwd.end() &&
             r->second == a;
    fwd.emplace(a, b);
    bwd.emplace(b, a);
    stack.emplace_back(a, b);
    return true;
  };

  auto match_word = [&](const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!match(a[i], b[i])) return false;
    return true;
  };

  if (!match(Grammar::bottom, Grammar::bottom)) return std::nullopt;
  for (std::size_t i = 0; i < starts1.size(); ++i)
    if (!match_word(starts1[i], starts2[i])) return std::nullopt;

  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const auto& pa = g1.prods[static_cast<std::size_t>(a)];
    const auto& pb = g2.prods[static_cast<std::size_t>(b)];
    if (pa.size() != pb.size()) return std::nullopt;
    for (const auto& [act, rhs] : pa) {
      auto it = pb.find(act);
      if (it == pb.end()) return std::nullopt;
      if (!match_word(rhs, it->second)) return std::nullopt;
    }
  }
  // every symbol must be covered for the renaming to be a bijection on
  // the whole grammar
  if (fwd.size() != g1.symbol_count()) return std::nullopt;
  return fwd;
}

}  // namespace cfsub
