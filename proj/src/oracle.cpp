#include "cfsub/oracle.hpp"

#include <map>
#include <tuple>

#include "cfsub/lts.hpp"

namespace cfsub {

namespace {

struct TypeOracle {
  Classifier cls;
  std::map<TypePtr, std::map<Action, TypePtr>, TypeLess> trans_cache;
  std::map<std::tuple<TypePtr, TypePtr, unsigned>, bool,
           bool (*)(const std::tuple<TypePtr, TypePtr, unsigned>&,
                    const std::tuple<TypePtr, TypePtr, unsigned>&)>
      memo;

  explicit TypeOracle(Classifier c)
      : cls(c), memo([](const auto& a, const auto& b) {
          if (auto c = compare(*std::get<0>(a), *std::get<0>(b)); c != 0)
            return c < 0;
          if (auto c = compare(*std::get<1>(a), *std::get<1>(b)); c != 0)
            return c < 0;
          return std::get<2>(a) < std::get<2>(b);
        }) {}

  const std::map<Action, TypePtr>& trans(const TypePtr& t) {
    auto it = trans_cache.find(t);
    if (it == trans_cache.end())
      it = trans_cache.emplace(t, transitions(t)).first;
    return it->second;
  }

  bool run(const TypePtr& t, const TypePtr& u, unsigned n) {
    if (n == 0) return true;
    auto key = std::make_tuple(t, u, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool r = clauses(t, u, n);
    memo.emplace(std::move(key), r);
    return r;
  }

  bool clauses(const TypePtr& t, const TypePtr& u, unsigned n) {
    const auto& tt = trans(t);
    const auto& tu = trans(u);
    for (const auto& [a, td] : tt) {
      ClassSet c = cls(a);
      if (!c.in_x && !c.in_z) continue;
      auto it = tu.find(a);
      if (it == tu.end()) return false;
      if (c.in_x && !run(td, it->second, n - 1)) return false;
      if (c.in_z && !run(it->second, td, n - 1)) return false;
    }
    for (const auto& [a, ud] : tu) {
      ClassSet c = cls(a);
      if (!c.in_y && !c.in_w) continue;
      auto it = tt.find(a);
      if (it == tt.end()) return false;
      if (c.in_y && !run(it->second, ud, n - 1)) return false;
      if (c.in_w && !run(ud, it->second, n - 1)) return false;
    }
    return true;
  }
};

struct WordOracle {
  Classifier cls;
  const Grammar& g;
  std::map<std::tuple<Word, Word, unsigned>, bool> memo;

  bool run(const Word& x, const Word& y, unsigned n) {
    if (n == 0) return true;
    auto key = std::make_tuple(x, y, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool r = clauses(x, y, n);
    memo.emplace(std::move(key), r);
    return r;
  }

  bool clauses(const Word& x, const Word& y, unsigned n) {
    auto tx = word_transitions(x, g);
    auto ty = word_transitions(y, g);
    for (const auto& [a, xd] : tx) {
      ClassSet c = cls(a);
      if (!c.in_x && !c.in_z) continue;
      auto it = ty.find(a);
      if (it == ty.end()) return false;
      if (c.in_x && !run(xd, it->second, n - 1)) return false;
      if (c.in_z && !run(it->second, xd, n - 1)) return false;
    }
    for (const auto& [a, yd] : ty) {
      ClassSet c = cls(a);
      if (!c.in_y && !c.in_w) continue;
      auto it = tx.find(a);
      if (it == tx.end()) return false;
      if (c.in_y && !run(it->second, yd, n - 1)) return false;
      if (c.in_w && !run(yd, it->second, n - 1)) return false;
    }
    return true;
  }
};

}  // namespace

bool bounded_similar_types(const TypePtr& t, const TypePtr& u, unsigned depth,
                           Classifier cls) {
  TypeOracle o(cls);
  return o.run(t, u, depth);
}

bool bounded_similar_words(const Word& x, const Word& y, unsigned depth,
                           const Grammar& g, Classifier cls) {
  WordOracle o{cls, g, {}};
  return o.run(x, y, depth);
}

}  // namespace cfsub
