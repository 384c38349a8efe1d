#pragma once

// Brute-force check of the universal property of a (co)limit candidate
// against every test object up to a size bound.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsecat/limits.hpp"

namespace coarsecat {

inline constexpr std::size_t kDefaultTestCap = 3;

struct OracleOptions {
  std::size_t test_cap = kDefaultTestCap;
  // Restrict test objects to locally bounded ones.
  bool classical_tests_only = false;
};

struct Counterexample {
  GBCSpace test;
  // Leg maps of the offending (co)cone on `test`.
  std::vector<SetMap> legs;
  // Number of mediating morphisms found (0, or 2 meaning "at least two").
  std::size_t mediators = 0;
};

struct Verdict {
  bool pass = false;
  std::string reason;
  std::optional<Counterexample> counterexample;
  std::size_t tests = 0;
  std::size_t cones = 0;
};

// Candidate given by raw leg maps: apex -> D(j) for a limit, D(j) -> apex for
// a colimit. Legs that are not morphisms or do not commute fail the check.
// Throws UnsupportedDiagram for diagrams with actions and CapExceeded when
// test_cap exceeds the enumeration cap.
Verdict universal_property_check(const GBCSpace& apex, std::span<const SetMap> legs,
                                 const Diagram& d, Side side, const OracleOptions& options = {});
Verdict universal_property_check(const Cone& candidate, const Diagram& d,
                                 const OracleOptions& options = {});
Verdict universal_property_check(const Cocone& candidate, const Diagram& d,
                                 const OracleOptions& options = {});

// Every normal-form space of size <= cap, cached.
const std::vector<GBCSpace>& test_objects(std::size_t cap, bool classical_only);

}  // namespace coarsecat
