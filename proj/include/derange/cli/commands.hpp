#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace derange::cli {

enum class OutputFormat { csv, json, lines };

OutputFormat parse_format(const std::string& name);

struct CommonConfig {
  std::uint64_t seed = 0;
  bool seed_from_entropy = false;  // recorded in output metadata
  unsigned workers = 1;
  OutputFormat format = OutputFormat::csv;
};

struct ExactParams {
  std::uint32_t n = 64;
};

struct SampleParams {
  std::string algorithm = "t";  // t | s | sattolo | reject | matching
  std::uint32_t n = 64;
  std::uint64_t count = 1;
  std::uint64_t mix = 0;  // 0 = default 2n
};

struct Table1Params {
  std::uint32_t n = 64;
  std::uint64_t count = 10000;
  std::vector<std::uint64_t> mix_list;  // empty = {n, 2n}
  std::string checkpoint;               // optional path
};

struct MixingParams {
  std::vector<std::uint32_t> n_list;
  std::uint64_t runs = 1000;
  double epsilon = 0;     // 0 = default e^-1/2
  std::uint64_t max_t = 0;  // 0 = auto per n
  std::string trajectory_output;  // optional path for the trajectory block
};

struct FailureParams {
  std::vector<std::uint32_t> n_list;
  std::uint64_t samples = 10000;
  std::string checkpoint;
};

struct UniformityParams {
  std::uint32_t n = 8;
  std::uint64_t multiplier = 100;
  std::string sampler = "s";  // s | reject | t | sattolo
};

struct CollisionParams {
  std::uint32_t n = 20;
  std::uint64_t samples = 100000;
};

// Default epsilon for mixing runs: e^-1 / 2.
double default_epsilon();

// Each command validates its parameters (std::invalid_argument on usage
// errors), prints the resolved configuration and seed before any results,
// and writes everything to `out`.
void cmd_exact(const ExactParams& p, const CommonConfig& c, std::ostream& out);
void cmd_sample(const SampleParams& p, const CommonConfig& c, std::ostream& out);
void cmd_table1(const Table1Params& p, const CommonConfig& c, std::ostream& out);
void cmd_mixing(const MixingParams& p, const CommonConfig& c, std::ostream& out);
void cmd_failure(const FailureParams& p, const CommonConfig& c, std::ostream& out);
void cmd_uniformity(const UniformityParams& p, const CommonConfig& c, std::ostream& out);
void cmd_collisions(const CollisionParams& p, const CommonConfig& c, std::ostream& out);

}  // namespace derange::cli
