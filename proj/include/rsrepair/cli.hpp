#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rsrepair {

// Exit codes: 0 success, 1 verification failure or infeasible parameters,
// 2 usage, file or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Table1Row {
  std::string scheme;
  int q = 2;
  int m = 0;
  int n = 0;
  int k = 0;
  int r = -1;        // -1 when helpers do not send a uniform amount
  double bits = 0;   // per repair
  bool simulated = false;
  bool exact = false;  // every simulated repair returned the erased value
  std::string note;
};

std::vector<Table1Row> compute_table1(std::uint64_t seed, int codewords);

}  // namespace rsrepair
