#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace ebloch::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kShapeError = 3;
inline constexpr int kFlatteningError = 4;
inline constexpr int kEvaluationError = 5;
inline constexpr int kUnsupported = 6;

struct Options {
  double tolerance = 1e-9;
  std::string mode = "ep";
  std::string format = "json";
  int max_iter = 100;
};

struct Outcome {
  int exit_code = kOk;
  nlohmann::ordered_json report;
};

Outcome cmd_cvol(const std::string& file, const Options& o);
Outcome cmd_verify(int count, unsigned long long seed, const Options& o);
Outcome cmd_homology(const std::string& file, const Options& o);
Outcome cmd_edges(const std::string& file, const Options& o);
Outcome cmd_flatten(const std::string& file, const Options& o);

/// Full command line: parses arguments, runs, prints, returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ebloch::cli
