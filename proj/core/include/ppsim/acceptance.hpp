#ifndef PPSIM_ACCEPTANCE_HPP
#define PPSIM_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ppsim::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);

/// Runs the selected criterion (or all when id == 0), printing one
/// pass/fail line per criterion. Returns true when everything passed.
bool run_all(std::ostream& os, int id = 0);

}  // namespace ppsim::acceptance

#endif
