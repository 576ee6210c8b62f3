#include "derange/cli/counting.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace derange::cli {

using nlohmann::json;

CountingResult counting_experiment(const std::string& config_key, std::uint32_t nbins,
                                   std::uint64_t samples, std::uint64_t master_seed,
                                   unsigned workers, std::uint64_t stream_base,
                                   const StepFactory& make_step,
                                   const std::string& checkpoint_path,
                                   std::uint64_t chunk_interval, std::uint64_t max_chunks) {
  struct WorkerState {
    Rng rng{0};
    std::uint64_t done = 0;
    std::vector<std::uint64_t> counts;
  };
  std::vector<WorkerState> ws(workers);
  std::vector<std::uint64_t> share(workers, samples / workers);
  for (unsigned w = 0; w < samples % workers; ++w) ++share[w];
  for (unsigned w = 0; w < workers; ++w) {
    ws[w].rng = Rng::derive_stream(master_seed, stream_base + w);
    ws[w].counts.assign(nbins, 0);
  }

  if (!checkpoint_path.empty()) {
    std::ifstream in(checkpoint_path);
    if (in) {
      json j = json::parse(in, nullptr, false);
      if (!j.is_discarded() && j.value("config_key", "") == config_key &&
          j["workers"].size() == workers) {
        for (unsigned w = 0; w < workers; ++w) {
          const auto& jw = j["workers"][w];
          std::array<std::uint64_t, 4> st{};
          for (int i = 0; i < 4; ++i) st[i] = jw["rng_state"][i].get<std::uint64_t>();
          ws[w].rng.restore(st, master_seed);
          ws[w].done = jw["done"].get<std::uint64_t>();
          ws[w].counts = jw["counts"].get<std::vector<std::uint64_t>>();
          if (ws[w].counts.size() != nbins)
            throw std::invalid_argument("checkpoint: bin count mismatch");
        }
      }
    }
  }

  const std::uint64_t chunk_per_worker =
      std::max<std::uint64_t>(1, chunk_interval / std::max(1u, workers));
  std::uint64_t chunks_run = 0;
  bool finished = false;
  for (;;) {
    finished = true;
    for (unsigned w = 0; w < workers; ++w)
      if (ws[w].done < share[w]) finished = false;
    if (finished) break;
    if (max_chunks > 0 && chunks_run >= max_chunks) break;

    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      if (ws[w].done >= share[w]) continue;
      threads.emplace_back([&, w] {
        StepFn step = make_step();
        const std::uint64_t todo = std::min(chunk_per_worker, share[w] - ws[w].done);
        StepContext ctx{&ws[w].rng, ws[w].counts};
        for (std::uint64_t s = 0; s < todo; ++s) step(ctx);
        ws[w].done += todo;
      });
    }
    for (auto& t : threads) t.join();
    ++chunks_run;

    bool now_finished = true;
    for (unsigned w = 0; w < workers; ++w)
      if (ws[w].done < share[w]) now_finished = false;
    if (!checkpoint_path.empty() && !now_finished) {
      json j;
      j["config_key"] = config_key;
      j["workers"] = json::array();
      for (unsigned w = 0; w < workers; ++w) {
        json jw;
        jw["rng_state"] = ws[w].rng.state();
        jw["done"] = ws[w].done;
        jw["counts"] = ws[w].counts;
        j["workers"].push_back(std::move(jw));
      }
      const std::string tmp = checkpoint_path + ".tmp";
      {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump();
      }
      std::rename(tmp.c_str(), checkpoint_path.c_str());
    }
  }

  CountingResult res;
  res.complete = finished;
  res.counts.assign(nbins, 0);
  for (const auto& w : ws)
    for (std::uint32_t b = 0; b < nbins; ++b) res.counts[b] += w.counts[b];
  if (finished && !checkpoint_path.empty()) std::remove(checkpoint_path.c_str());
  return res;
}

}  // namespace derange::cli
