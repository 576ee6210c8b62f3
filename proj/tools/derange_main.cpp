#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "derange/cli/commands.hpp"
#include "derange/errors.hpp"

namespace {

using namespace derange::cli;

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag,
                           bool& from_entropy) {
  from_entropy = false;
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("DERANGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("DERANGE_SEED must be a 64-bit unsigned integer");
    }
  }
  from_entropy = true;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random derangement generators with exact cycle-count statistics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string format = "csv";
  std::string output;
  auto* seed_opt = app.add_option("--seed", seed, "master seed (fallback: DERANGE_SEED, then entropy)");
  app.add_option("--workers", workers, "parallel workers with derived RNG streams")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--format", format, "output format: csv|json|lines");
  app.add_option("--output", output, "write primary output to this file instead of stdout");

  ExactParams exact;
  auto* c_exact = app.add_subcommand("exact", "exact d_n^(k) table and derived quantities");
  c_exact->add_option("--n", exact.n, "derangement length (2..1024)")->required();

  SampleParams sample;
  auto* c_sample = app.add_subcommand("sample", "emit random derangements");
  c_sample->add_option("--algorithm", sample.algorithm, "t|s|sattolo|reject|matching");
  c_sample->add_option("--n", sample.n, "derangement length")->required();
  c_sample->add_option("--count", sample.count, "number of samples");
  c_sample->add_option("--mix", sample.mix, "attempted transpositions (t/matching; default 2n)");

  Table1Params table1;
  auto* c_table1 = app.add_subcommand("table1", "empirical vs exact cycle-count distribution");
  c_table1->add_option("--n", table1.n, "derangement length")->required();
  c_table1->add_option("--count", table1.count, "samples per column (>= 10^4)")->required();
  c_table1->add_option("--mix-list", table1.mix_list, "walk mix values (default: n and 2n)");
  c_table1->add_option("--checkpoint", table1.checkpoint, "checkpoint file prefix");

  MixingParams mixing;
  auto* c_mixing = app.add_subcommand("mixing", "TV-distance trajectories and mixing times");
  c_mixing->add_option("--n-list", mixing.n_list, "derangement lengths")->required();
  c_mixing->add_option("--runs", mixing.runs, "independent walks (>= 10^3)")->required();
  c_mixing->add_option("--epsilon", mixing.epsilon, "threshold (default e^-1/2)");
  c_mixing->add_option("--max-t", mixing.max_t, "step budget (default 8 sqrt(n) log n)");
  c_mixing->add_option("--trajectory-output", mixing.trajectory_output,
                       "write the trajectory block to this file");

  FailureParams failure;
  auto* c_failure = app.add_subcommand("failure", "SIS failure rates against bounds");
  c_failure->add_option("--n-list", failure.n_list, "derangement lengths")->required();
  c_failure->add_option("--samples", failure.samples, "attempts per n (>= 10^4)")->required();
  c_failure->add_option("--checkpoint", failure.checkpoint, "checkpoint file prefix");

  UniformityParams uniformity;
  auto* c_uniformity = app.add_subcommand("uniformity", "occurrence counts over all of D_n");
  c_uniformity->add_option("--n", uniformity.n, "derangement length (4..11)")->required();
  c_uniformity->add_option("--multiplier", uniformity.multiplier, "samples per derangement");
  c_uniformity->add_option("--algorithm", uniformity.sampler, "s|reject|t|sattolo");

  CollisionParams collisions;
  auto* c_collisions = app.add_subcommand("collisions", "exact repeat counts in SIS samples");
  c_collisions->add_option("--n", collisions.n, "derangement length")->required();
  c_collisions->add_option("--samples", collisions.samples, "number of samples")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or help text
    return code == 0 ? 0 : 1;      // usage problems exit 1
  }

  try {
    CommonConfig common;
    common.seed = resolve_seed(seed_opt, seed, common.seed_from_entropy);
    common.workers = workers;
    common.format = parse_format(format);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!output.empty()) {
      file.open(output, std::ios::trunc);
      if (!file) throw std::invalid_argument("cannot open output file '" + output + "'");
      out = &file;
    }

    if (c_exact->parsed()) cmd_exact(exact, common, *out);
    else if (c_sample->parsed()) cmd_sample(sample, common, *out);
    else if (c_table1->parsed()) cmd_table1(table1, common, *out);
    else if (c_mixing->parsed()) cmd_mixing(mixing, common, *out);
    else if (c_failure->parsed()) cmd_failure(failure, common, *out);
    else if (c_uniformity->parsed()) cmd_uniformity(uniformity, common, *out);
    else if (c_collisions->parsed()) cmd_collisions(collisions, common, *out);
    out->flush();
    return 0;
  } catch (const derange::internal_consistency_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 2;
  }
}
