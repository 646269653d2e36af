// Shared helpers for the test suites.
#pragma once

#include <gtest/gtest.h>

#include "cspbt/cspbt.hpp"

namespace cspbt::test {

inline Process P(std::string_view text) { return parse(text); }

/// (label, target text) pairs of one step, sorted.
inline std::vector<std::pair<std::string, std::string>> steps_of(const Process& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : step(p)) out.emplace_back(s.label, unparse(s.target));
  std::sort(out.begin(), out.end());
  return out;
}

using StepList = std::vector<std::pair<std::string, std::string>>;

}  // namespace cspbt::test
