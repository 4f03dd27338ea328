#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cfsub/bench.hpp"
#include "cfsub/expansion.hpp"
#include "cfsub/gen.hpp"
#include "cfsub/grammar.hpp"
#include "cfsub/oracle.hpp"
#include "cfsub/syntax.hpp"

namespace {

using namespace cfsub;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

// Arguments are inline type text, or @path to read the text from a file.
std::string resolve_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw std::runtime_error("cannot read file: " + arg.substr(1));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TypePtr parse_arg(const std::string& arg) {
  return parse_type(resolve_arg(arg));
}

TypePtr parse_checked(const std::string& arg) {
  TypePtr t = parse_arg(arg);
  if (auto e = check_formation({}, t))
    throw IllFormed(std::move(*e));
  return t;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::True: return kExitTrue;
    case Verdict::False: return kExitFalse;
    default: return kExitUnknown;
  }
}

struct BudgetOpts {
  std::uint64_t visits = 1'000'000;
  std::uint64_t timeout_ms = 30'000;
  Budget budget() const {
    return {visits, std::chrono::milliseconds(timeout_ms)};
  }
};

void add_budget_opts(CLI::App* cmd, BudgetOpts& opts) {
  cmd->add_option("--budget-visits", opts.visits, "node-visit cap");
  cmd->add_option("--timeout-ms", opts.timeout_ms, "wall-clock cap in ms");
}

std::pair<TypePtr, TypePtr> parse_pair_line(const std::string& line) {
  auto sep = line.find(" <: ");
  if (sep == std::string::npos)
    throw std::runtime_error("expected 'LEFT <: RIGHT' in: " + line);
  return {parse_type(line.substr(0, sep)), parse_type(line.substr(sep + 4))};
}

int run(int argc, char** argv) {
  CLI::App app{"subtyping and equivalence for context-free session types"};
  app.require_subcommand(1);

  std::string left, right, type_text;
  BudgetOpts budget;
  GenConfig gen_cfg;

  auto* check = app.add_subcommand("check", "decide LEFT <: RIGHT");
  check->add_option("left", left, "subtype candidate (inline or @file)")->required();
  check->add_option("right", right, "supertype candidate (inline or @file)")->required();
  add_budget_opts(check, budget);

  auto* equiv = app.add_subcommand("equiv", "decide LEFT ~ RIGHT");
  equiv->add_option("left", left)->required();
  equiv->add_option("right", right)->required();
  add_budget_opts(equiv, budget);

  std::vector<std::string> grammar_types;
  auto* grammar_cmd = app.add_subcommand("grammar", "dump the grammar of TYPEs");
  grammar_cmd->add_option("types", grammar_types, "types to translate")->required();
  bool do_prune = false;
  grammar_cmd->add_flag("--prune", do_prune, "prune unreachable symbols");

  bool gen_valid = false, gen_invalid = false;
  unsigned gen_count = 1;
  std::string labels_csv, bases_csv;
  auto* gen_cmd = app.add_subcommand("gen", "emit random subtyping pairs");
  gen_cmd->add_flag("--valid", gen_valid, "emit valid pairs");
  gen_cmd->add_flag("--invalid", gen_invalid, "emit invalid pairs");
  gen_cmd->add_option("--size", gen_cfg.size, "pair size parameter");
  gen_cmd->add_option("--count", gen_count, "number of pairs");
  gen_cmd->add_option("--seed", gen_cfg.seed, "base seed");
  gen_cmd->add_option("--labels", labels_csv, "comma-separated label alphabet");
  gen_cmd->add_option("--bases", bases_csv, "comma-separated base types");

  unsigned oracle_depth = 6;
  bool oracle_equiv = false;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "bounded stratified similarity (debugging)");
  oracle_cmd->add_option("left", left)->required();
  oracle_cmd->add_option("right", right)->required();
  oracle_cmd->add_option("--depth", oracle_depth, "stratification depth");
  oracle_cmd->add_flag("--equiv", oracle_equiv, "bisimulation label sets");

  std::string suite_path, out_path, summarize_path;
  unsigned bench_valid = 0, bench_invalid = 0, workers = 0;
  BudgetOpts bench_budget;
  bench_budget.timeout_ms = 1000;
  auto* bench_cmd = app.add_subcommand("bench", "time subtype checks over a suite");
  bench_cmd->add_option("--suite", suite_path, "file of 'T <: U' lines");
  bench_cmd->add_option("--valid", bench_valid, "generate N valid pairs");
  bench_cmd->add_option("--invalid", bench_invalid, "generate N invalid pairs");
  bench_cmd->add_option("--size", gen_cfg.size, "generated pair size");
  bench_cmd->add_option("--seed", gen_cfg.seed, "base seed");
  bench_cmd->add_option("--workers", workers, "parallel workers (0 = cores)");
  bench_cmd->add_option("--out", out_path, "CSV output path");
  bench_cmd->add_option("--summarize", summarize_path,
                        "summarize an existing CSV instead of running");
  add_budget_opts(bench_cmd, bench_budget);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) {
    Result r = subtype(parse_checked(left), parse_checked(right), budget.budget());
    std::cout << verdict_name(r.verdict) << " (visits=" << r.visits << ")\n";
    return verdict_exit(r.verdict);
  }

  if (equiv->parsed()) {
    Result r = equivalent(parse_checked(left), parse_checked(right), budget.budget());
    std::cout << verdict_name(r.verdict) << " (visits=" << r.visits << ")\n";
    return verdict_exit(r.verdict);
  }

  if (grammar_cmd->parsed()) {
    GrammarBuilder builder;
    std::vector<Word> starts;
    for (const auto& text : grammar_types)
      starts.push_back(builder.translate(parse_checked(text)));
    Grammar g = std::move(builder).take();
    if (do_prune) g = prune(g);
    for (const auto& w : starts)
      std::cout << "start: " << word_to_string(w, g) << "\n";
    dump_grammar(std::cout, g);
    return kExitTrue;
  }

  if (gen_cmd->parsed()) {
    if (gen_valid == gen_invalid)
      throw std::runtime_error("pass exactly one of --valid / --invalid");
    auto split_csv = [](const std::string& s, std::vector<std::string>& out) {
      if (s.empty()) return;
      out.clear();
      std::istringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(item);
    };
    split_csv(labels_csv, gen_cfg.labels);
    split_csv(bases_csv, gen_cfg.bases);
    GenConfig cfg = gen_cfg;
    for (unsigned i = 0; i < gen_count; ++i) {
      cfg.seed = gen_cfg.seed + i;
      auto [l, r] = gen_valid ? random_valid_pair(cfg) : random_invalid_pair(cfg);
      std::cout << print_type(l) << " <: " << print_type(r) << "\n";
    }
    return kExitTrue;
  }

  if (oracle_cmd->parsed()) {
    TypePtr l = parse_checked(left);
    TypePtr r = parse_checked(right);
    bool ok = bounded_similar_types(
        l, r, oracle_depth,
        oracle_equiv ? classify_bisimulation : classify_subtyping);
    std::cout << (ok ? "true" : "false") << " at depth " << oracle_depth << "\n";
    return ok ? kExitTrue : kExitFalse;
  }

  if (bench_cmd->parsed()) {
    if (!summarize_path.empty()) {
      std::ifstream in(summarize_path);
      if (!in) throw std::runtime_error("cannot read: " + summarize_path);
      print_summary(std::cout, summarize(read_csv(in)));
      return kExitTrue;
    }
    std::vector<BenchTask> tasks;
    if (!suite_path.empty()) {
      std::ifstream in(suite_path);
      if (!in) throw std::runtime_error("cannot read suite: " + suite_path);
      std::string line;
      std::size_t i = 0;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto [l, r] = parse_pair_line(line);
        tasks.push_back({"pair-" + std::to_string(i++), l, r});
      }
    }
    GenConfig cfg = gen_cfg;
    for (unsigned i = 0; i < bench_valid; ++i) {
      cfg.seed = gen_cfg.seed + i;
      auto [l, r] = random_valid_pair(cfg);
      tasks.push_back({"valid-" + std::to_string(i), l, r});
    }
    for (unsigned i = 0; i < bench_invalid; ++i) {
      cfg.seed = gen_cfg.seed + 1'000'000 + i;
      auto [l, r] = random_invalid_pair(cfg);
      tasks.push_back({"invalid-" + std::to_string(i), l, r});
    }
    auto records = run_bench(tasks, bench_budget.budget(), workers);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write: " + out_path);
      write_csv(out, records);
    } else {
      write_csv(std::cout, records);
    }
    print_summary(std::cout, summarize(records));
    return kExitTrue;
  }

  return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": "
              << e.what() << "\n";
    return kExitInputError;
  } catch (const IllFormed& e) {
    std::cerr << "ill-formed type: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
