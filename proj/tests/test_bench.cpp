#include <sstream>

#include "cfsub/bench.hpp"
#include "cfsub/gen.hpp"
#include "cfsub/syntax.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cfsub;

TEST_CASE("bench runs tasks and respects the timeout invariant") {
  std::vector<BenchTask> tasks;
  for (unsigned i = 0; i < 10; ++i) {
    GenConfig cfg;
    cfg.seed = i;
    cfg.size = 8;
    auto [l, r] = random_valid_pair(cfg);
    tasks.push_back({"valid-" + std::to_string(i), l, r});
  }
  Budget budget;
  budget.max_time = std::chrono::milliseconds(1000);
  auto records = run_bench(tasks, budget, 2);
  REQUIRE(records.size() == tasks.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].id == tasks[i].id);  // merged in input order
    CHECK(records[i].verdict != Verdict::False);
    CHECK((records[i].verdict == Verdict::Unknown || records[i].micros <= 1000000));
    CHECK(records[i].nodes ==
          node_count(tasks[i].left) + node_count(tasks[i].right));
  }
}

TEST_CASE("empty suite produces an empty run") {
  auto records = run_bench({}, Budget{});
  CHECK(records.empty());
  Summary s = summarize(records);
  CHECK(s.all.count == 0);
}

TEST_CASE("a zero timeout reports unknown everywhere") {
  std::vector<BenchTask> tasks{
      {"pair-0", fixtures::stree(), fixtures::sempty()}};
  Budget budget;
  budget.max_time = std::chrono::milliseconds(0);
  auto records = run_bench(tasks, budget, 1);
  REQUIRE(records.size() == 1);
  CHECK(records[0].verdict == Verdict::Unknown);
}

TEST_CASE("CSV round-trips through the summary tooling") {
  std::vector<BenchRecord> records{
      {"valid-0", 12, Verdict::True, 1500, 7},
      {"invalid-0", 30, Verdict::False, 900, 3},
      {"invalid-1", 44, Verdict::Unknown, 1000000, 12345},
  };
  std::ostringstream out;
  write_csv(out, records);
  std::istringstream in(out.str());
  auto back = read_csv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].id == records[i].id);
    CHECK(back[i].nodes == records[i].nodes);
    CHECK(back[i].verdict == records[i].verdict);
    CHECK(back[i].micros == records[i].micros);
    CHECK(back[i].visits == records[i].visits);
  }
  Summary s = summarize(back);
  CHECK(s.all.count == 3);
  CHECK(s.valid.count == 1);
  CHECK(s.invalid.count == 2);
  CHECK(s.invalid.timeouts == 1);

  std::istringstream bad("# other-schema v9\nid\n");
  CHECK_THROWS(read_csv(bad));
}
