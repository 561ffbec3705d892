#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dsurf/isomorph.hpp"

namespace dsurf::cli {

enum ExitCode : int { kPositive = 0, kNegative = 1, kMalformed = 2, kOverflow = 3 };

struct ExampleResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in example corpus. SearchOverflow and other errors propagate.
std::vector<ExampleResult> paper_examples(const DecideOptions& opts = {});

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsurf::cli
