#include "cfsub/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cfsub {

std::vector<BenchRecord> run_bench(const std::vector<BenchTask>& tasks,
                                   const Budget& budget, unsigned workers) {
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, tasks.empty() ? 1u : static_cast<unsigned>(tasks.size()));

  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const BenchTask& task = tasks[i];
      BenchRecord rec;
      rec.id = task.id;
      rec.nodes = node_count(task.left) + node_count(task.right);
      auto t0 = std::chrono::steady_clock::now();
      Result r = subtype(task.left, task.right, budget);
      auto t1 = std::chrono::steady_clock::now();
      rec.micros = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
      rec.visits = r.visits;
      rec.verdict = r.verdict;
      auto timeout_us = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::microseconds>(budget.max_time)
              .count());
      if (rec.micros > timeout_us) rec.verdict = Verdict::Unknown;
      records[i] = std::move(rec);
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "# " << kCsvSchema << "\n";
  os << "id,nodes,verdict,micros,visits\n";
  for (const auto& r : records)
    os << r.id << "," << r.nodes << "," << verdict_name(r.verdict) << ","
       << r.micros << "," << r.visits << "\n";
}

namespace {

Verdict parse_verdict(const std::string& s) {
  if (s == "true") return Verdict::True;
  if (s == "false") return Verdict::False;
  if (s == "unknown") return Verdict::Unknown;
  throw std::runtime_error("bad verdict in CSV: " + s);
}

}  // namespace

std::vector<BenchRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != std::string("# ") + kCsvSchema)
    throw std::runtime_error("unrecognized CSV schema line");
  if (!std::getline(is, line) || line != "id,nodes,verdict,micros,visits")
    throw std::runtime_error("unrecognized CSV header");
  std::vector<BenchRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string id, nodes, verdict, micros, visits;
    if (!std::getline(ss, id, ',') || !std::getline(ss, nodes, ',') ||
        !std::getline(ss, verdict, ',') || !std::getline(ss, micros, ',') ||
        !std::getline(ss, visits))
      throw std::runtime_error("short CSV row: " + line);
    BenchRecord r;
    r.id = id;
    r.nodes = std::stoull(nodes);
    r.verdict = parse_verdict(verdict);
    r.micros = std::stoull(micros);
    r.visits = std::stoull(visits);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

void accumulate(ClassStats& s, std::vector<std::uint64_t>& times,
                const BenchRecord& r) {
  ++s.count;
  switch (r.verdict) {
    case Verdict::True: ++s.yes; break;
    case Verdict::False: ++s.no; break;
    case Verdict::Unknown: ++s.timeouts; break;
  }
  times.push_back(r.micros);
}

void finish(ClassStats& s, std::vector<std::uint64_t>& times) {
  if (times.empty()) return;
  std::sort(times.begin(), times.end());
  s.median_micros = times[times.size() / 2];
  s.p90_micros = times[times.size() * 9 / 10];
}

void print_class(std::ostream& os, const char* name, const ClassStats& s) {
  os << "  " << name << ": count=" << s.count << " true=" << s.yes
     << " false=" << s.no << " timeouts=" << s.timeouts
     << " median=" << s.median_micros << "us p90=" << s.p90_micros << "us\n";
}

}  // namespace

Summary summarize(const std::vector<BenchRecord>& records) {
  Summary out;
  std::vector<std::uint64_t> t_all, t_valid, t_invalid;
  for (const auto& r : records) {
    accumulate(out.all, t_all, r);
    if (r.id.rfind("valid", 0) == 0) accumulate(out.valid, t_valid, r);
    if (r.id.rfind("invalid", 0) == 0) accumulate(out.invalid, t_invalid, r);
  }
  finish(out.all, t_all);
  finish(out.valid, t_valid);
  finish(out.invalid, t_invalid);
  return out;
}

void print_summary(std::ostream& os, const Summary& s) {
  os << "bench summary:\n";
  print_class(os, "all", s.all);
  if (s.valid.count) print_class(os, "valid", s.valid);
  if (s.invalid.count) print_class(os, "invalid", s.invalid);
}

}  // namespace cfsub
