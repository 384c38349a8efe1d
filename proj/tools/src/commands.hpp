#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "document.hpp"

namespace coarsecat::cli {

struct Flags {
  std::size_t test_cap = kDefaultTestCap;
  std::size_t search_cap = kDefaultSearchCap;
  std::uint64_t seed = 0;
  // Mutated candidates the oracle command also checks (each must fail).
  std::size_t mutations = 0;
  std::vector<std::string> spaces;
  std::vector<std::string> maps;
  std::string diagram;
  // "limit" or "colimit"; empty picks the command's default.
  std::string side;
  std::vector<std::string> y;
  std::vector<std::string> z;
  bool exhaustive = false;
};

struct Report {
  Json body;
  // 0 computed/true, 1 computed/false with a witness, 2 error.
  int exit_code = 0;
};

const std::vector<std::string>& command_names();

// Errors from the library propagate; error_report turns them into reports.
Report run(const std::string& command, const Document& doc, const Flags& flags);
Report error_report(const std::string& command, const std::exception& e);

}  // namespace coarsecat::cli
