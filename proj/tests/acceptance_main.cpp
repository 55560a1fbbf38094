#include <cstring>
#include <iostream>
#include <string>

#include "ppsim/acceptance.hpp"

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
      if (criterion < 1 || criterion > ppsim::acceptance::kCriterionCount) {
        std::cerr << "usage: acceptance [--criterion 1.." << ppsim::acceptance::kCriterionCount
                  << "]\n";
        return 2;
      }
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool ok = ppsim::acceptance::run_all(std::cout, criterion);
  return ok ? 0 : 1;
}
