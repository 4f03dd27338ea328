#ifndef CFSUB_BENCH_HPP
#define CFSUB_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfsub/expansion.hpp"
#include "cfsub/types.hpp"

namespace cfsub {

struct BenchTask {
  std::string id;  // ids starting with "valid"/"invalid" drive the summary split
  TypePtr left;
  TypePtr right;
};

struct BenchRecord {
  std::string id;
  std::size_t nodes = 0;  // total AST nodes of the pair
  Verdict verdict = Verdict::Unknown;
  std::uint64_t micros = 0;
  std::uint64_t visits = 0;
};

// Runs subtype() on every task, `workers` at a time; records come back in
// task order. A run that outlives the budget's wall clock is reported
// Unknown so that wall time <= timeout holds for decided records.
std::vector<BenchRecord> run_bench(const std::vector<BenchTask>& tasks,
                                   const Budget& budget, unsigned workers = 0);

inline constexpr const char* kCsvSchema = "cfsub-bench-csv v1";

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);
// Throws std::runtime_error on a schema mismatch.
std::vector<BenchRecord> read_csv(std::istream& is);

struct ClassStats {
  std::size_t count = 0;
  std::size_t timeouts = 0;
  std::size_t yes = 0, no = 0;
  std::uint64_t median_micros = 0;
  std::uint64_t p90_micros = 0;
};

struct Summary {
  ClassStats all, valid, invalid;
};

Summary summarize(const std::vector<BenchRecord>& records);
void print_summary(std::ostream& os, const Summary& s);

}  // namespace cfsub

#endif
