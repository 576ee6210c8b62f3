#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "derange/rng.hpp"

namespace derange::cli {

// Checkpointed per-sample counting: `samples` calls of a step function are
// split across workers with derived RNG streams, each call incrementing one
// of `nbins` counters. With a checkpoint path set, per-worker progress
// (counts plus RNG states) is persisted between chunks so an interrupted run
// resumes bit-exactly; the file is keyed on `config_key` and removed on
// completion.

struct StepContext {
  Rng* rng = nullptr;
  std::span<std::uint64_t> counts;
};

using StepFn = std::function<void(StepContext&)>;
using StepFactory = std::function<StepFn()>;  // one closure (own scratch) per worker

struct CountingResult {
  std::vector<std::uint64_t> counts;  // merged across workers
  bool complete = false;              // false only when max_chunks cut the run short
};

inline constexpr std::uint64_t kCheckpointInterval = 10'000'000;  // samples per chunk

// max_chunks = 0 runs to completion; a positive value stops after that many
// chunk rounds with the checkpoint left on disk (used to exercise resumption).
CountingResult counting_experiment(const std::string& config_key, std::uint32_t nbins,
                                   std::uint64_t samples, std::uint64_t master_seed,
                                   unsigned workers, std::uint64_t stream_base,
                                   const StepFactory& make_step,
                                   const std::string& checkpoint_path,
                                   std::uint64_t chunk_interval = kCheckpointInterval,
                                   std::uint64_t max_chunks = 0);

}  // namespace derange::cli
