#include "cfsub/expansion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

namespace cfsub {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
  }
}

std::optional<Node> expand(const Node& n, const Grammar& g, Classifier cls) {
  Node child;
  for (const auto& [x, y] : n) {
    auto tx = word_transitions(x, g);
    auto ty = word_transitions(y, g);
    for (const auto& [a, xd] : tx) {
      ClassSet c = cls(a);
      if (!c.in_x && !c.in_z) continue;
      auto it = ty.find(a);
      if (it == ty.end()) return std::nullopt;
      if (c.in_x) child.insert({xd, it->second});
      if (c.in_z) child.insert({it->second, xd});
    }
    for (const auto& [a, yd] : ty) {
      ClassSet c = cls(a);
      if (!c.in_y && !c.in_w) continue;
      auto it = tx.find(a);
      if (it == tx.end()) return std::nullopt;
      if (c.in_y) child.insert({it->second, yd});
      if (c.in_w) child.insert({yd, it->second});
    }
  }
  return child;
}

Node simplify_reflexivity(Node n) {
  for (auto it = n.begin(); it != n.end();)
    it = it->first == it->second ? n.erase(it) : std::next(it);
  return n;
}

namespace {

// Reachability in the digraph whose edges are the ancestor pairs; the
// least preorder containing them relates x to y iff x == y or y is
// reachable from x.
bool in_ancestor_preorder(const Word& x, const Word& y,
                          const std::map<Word, std::vector<const Word*>>& adj) {
  if (x == y) return true;
  std::set<Word> seen{x};
  std::vector<const Word*> frontier;
  if (auto it = adj.find(x); it != adj.end())
    frontier.assign(it->second.begin(), it->second.end());
  while (!frontier.empty()) {
    const Word* w = frontier.back();
    frontier.pop_back();
    if (*w == y) return true;
    if (!seen.insert(*w).second) continue;
    if (auto it = adj.find(*w); it != adj.end())
      frontier.insert(frontier.end(), it->second.begin(), it->second.end());
  }
  return false;
}

}  // namespace

Node simplify_preorder(Node n, const Ancestors& ancestors) {
  std::map<Word, std::vector<const Word*>> adj;
  for (const auto& [from, to] : ancestors) adj[from].push_back(&to);
  for (auto it = n.begin(); it != n.end();) {
    if (in_ancestor_preorder(it->first, it->second, adj))
      it = n.erase(it);
    else
      ++it;
  }
  return n;
}

std::vector<Node> bpa1_siblings(const Node& n, const Ancestors& ancestors) {
  std::vector<Node> out;
  for (const auto& pair : n) {
    const auto& [x, y] = pair;
    if (x.empty() || y.empty()) continue;
    for (const auto& anc : ancestors) {
      const auto& [ax, ay] = anc;
      if (ax.empty() || ay.empty()) continue;
      if (ax.front() != x.front() || ay.front() != y.front()) continue;
      Node sibling = n;
      sibling.erase(pair);
      sibling.insert({Word(x.begin() + 1, x.end()), Word(ax.begin() + 1, ax.end())});
      sibling.insert({Word(y.begin() + 1, y.end()), Word(ay.begin() + 1, ay.end())});
      out.push_back(std::move(sibling));
    }
  }
  return out;
}

namespace {

// Runs the deterministic grammar LTS along a fixed action path.
std::optional<Word> run_path(Word w, const std::vector<Action>& path,
                             const Grammar& g) {
  for (const Action& a : path) {
    if (w.empty()) return std::nullopt;
    const auto& prods = g.prods[static_cast<std::size_t>(w.front())];
    auto it = prods.find(a);
    if (it == prods.end()) return std::nullopt;
    Word next = it->second;
    next.insert(next.end(), w.begin() + 1, w.end());
    w = std::move(next);
  }
  return w;
}

}  // namespace

std::vector<Node> bpa2_siblings(const Node& n, const Grammar& g,
                                const NormTable& norms) {
  std::vector<Node> out;
  for (const auto& pair : n) {
    const auto& [x, y] = pair;
    if (x.empty() || y.empty()) continue;
    Sym hx = x.front(), hy = y.front();
    auto nx = norms.symbol_norm(hx);
    auto ny = norms.symbol_norm(hy);
    if (!nx || !ny) continue;

    Node sibling = n;
    sibling.erase(pair);
    if (*nx <= *ny) {
      auto path = norms.minimal_path(hx);
      if (!path) continue;
      auto z = run_path({hy}, *path, g);
      if (!z) continue;
      Word left{hx};
      left.insert(left.end(), z->begin(), z->end());
      sibling.insert({std::move(left), {hy}});
      Word rest = *z;
      rest.insert(rest.end(), y.begin() + 1, y.end());
      sibling.insert({Word(x.begin() + 1, x.end()), std::move(rest)});
    } else {
      auto path = norms.minimal_path(hy);
      if (!path) continue;
      auto z = run_path({hx}, *path, g);
      if (!z) continue;
      Word right{hy};
      right.insert(right.end(), z->begin(), z->end());
      sibling.insert({{hx}, std::move(right)});
      Word rest = *z;
      rest.insert(rest.end(), x.begin() + 1, x.end());
      sibling.insert({std::move(rest), Word(y.begin() + 1, y.end())});
    }
    out.push_back(std::move(sibling));
  }
  return out;
}

namespace {

struct Entry {
  Node node;
  std::shared_ptr<const Ancestors> ancestors;
};

}  // namespace

Result simulate_words(const Word& x, const Word& y, const Grammar& g,
                      Classifier cls, const Budget& budget) {
  NormTable norms(g);
  auto start = std::chrono::steady_clock::now();

  std::deque<Entry> queue;
  // node -> ancestor sets it was already enqueued with; a node recurring
  // with an ancestor-superset is duplicate work and is not re-enqueued
  std::map<Node, std::vector<std::shared_ptr<const Ancestors>>> seen;

  auto try_enqueue = [&](Node node, std::shared_ptr<const Ancestors> anc) {
    auto& entries = seen[node];
    for (const auto& prior : entries)
      if (std::includes(anc->begin(), anc->end(), prior->begin(), prior->end()))
        return;
    entries.push_back(anc);
    queue.push_back({std::move(node), std::move(anc)});
  };

  try_enqueue(Node{{x, y}}, std::make_shared<const Ancestors>());

  Result res;
  while (!queue.empty()) {
    ++res.visits;
    if (res.visits > budget.max_visits ||
        std::chrono::steady_clock::now() - start > budget.max_time) {
      res.verdict = Verdict::Unknown;
      return res;
    }
    Entry cur = std::move(queue.front());
    queue.pop_front();

    if (cur.node.empty()) {
      res.verdict = Verdict::True;
      return res;
    }
    auto expanded = expand(cur.node, g, cls);
    if (!expanded) continue;  // this branch dies

    auto anc = std::make_shared<Ancestors>(*cur.ancestors);
    anc->insert(cur.node.begin(), cur.node.end());
    std::shared_ptr<const Ancestors> shared_anc = std::move(anc);

    auto clean = [&](Node n) {
      return simplify_preorder(simplify_reflexivity(std::move(n)), *shared_anc);
    };

    Node child = clean(*expanded);
    for (Node& s : bpa1_siblings(child, *shared_anc))
      try_enqueue(clean(std::move(s)), shared_anc);
    for (Node& s : bpa2_siblings(child, g, norms))
      try_enqueue(clean(std::move(s)), shared_anc);
    try_enqueue(std::move(child), shared_anc);
  }
  res.verdict = Verdict::False;
  return res;
}

namespace {

Result decide(const TypePtr& t, const TypePtr& u, Classifier cls,
              const Budget& budget) {
  if (auto e = check_formation({}, t)) throw IllFormed(std::move(*e));
  if (auto e = check_formation({}, u)) throw IllFormed(std::move(*e));
  GrammarBuilder builder;
  Word x = builder.translate(t);
  Word y = builder.translate(u);
  Grammar pruned = prune(std::move(builder).take());
  return simulate_words(x, y, pruned, cls, budget);
}

}  // namespace

Result subtype(const TypePtr& t, const TypePtr& u, const Budget& budget) {
  return decide(t, u, classify_subtyping, budget);
}

Result equivalent(const TypePtr& t, const TypePtr& u, const Budget& budget) {
  return decide(t, u, classify_bisimulation, budget);
}

}  // namespace cfsub
