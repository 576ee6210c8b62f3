#include "derange/statistics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "derange/errors.hpp"
#include "derange/gamma.hpp"
#include "derange/ranking.hpp"
#include "derange/rng.hpp"
#include "derange/samplers.hpp"

namespace derange {
namespace {

template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back([&fn, w] { fn(w); });
  for (auto& t : threads) t.join();
}

// Split `total` into `workers` contiguous shares (first shares get the remainder).
std::vector<std::uint64_t> split_shares(std::uint64_t total, unsigned workers) {
  std::vector<std::uint64_t> shares(workers, total / workers);
  for (unsigned w = 0; w < total % workers; ++w) ++shares[w];
  return shares;
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::uint32_t n) : n_(n), counts_(n / 2, 0) {
  if (n < 2) throw std::invalid_argument("EmpiricalMeasure: n must be >= 2");
}

void EmpiricalMeasure::accumulate(const Permutation& p) {
  if (p.size() != n_) throw std::invalid_argument("accumulate: length mismatch");
  if (!is_derangement(p)) throw std::invalid_argument("accumulate: not a derangement");
  add_cycle_count(cycle_count(p));
}

void EmpiricalMeasure::add_cycle_count(std::uint32_t k, std::uint64_t weight) {
  if (k < 1 || k > counts_.size())
    throw std::invalid_argument("add_cycle_count: cycle count " + std::to_string(k) +
                                " out of range for n=" + std::to_string(n_));
  counts_[k - 1] += weight;
  total_ += weight;
}

double EmpiricalMeasure::mass(std::uint32_t k) const {
  if (total_ == 0 || k < 1 || k > counts_.size()) return 0.0;
  return static_cast<double>(counts_[k - 1]) / static_cast<double>(total_);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: support mismatch");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return 0.5 * s;
}

double tv_distance(const EmpiricalMeasure& m, const CycleCountDistribution& nu) {
  if (m.n() != nu.n) throw std::invalid_argument("tv_distance: n mismatch");
  if (m.total() == 0) throw std::invalid_argument("tv_distance: empty measure");
  const double inv = 1.0 / static_cast<double>(m.total());
  double s = 0;
  const auto counts = m.counts();
  for (std::size_t i = 0; i < counts.size(); ++i)
    s += std::fabs(static_cast<double>(counts[i]) * inv - nu.nu[i]);
  return 0.5 * s;
}

namespace {

// One worker's share of ensemble-mode walks: all walkers advance in lockstep,
// the pooled cycle-count histogram is snapshotted after every step.
void ensemble_worker(std::uint32_t n, std::uint64_t local_runs, std::uint64_t max_t, Rng rng,
                     std::vector<std::uint64_t>& counts /* (max_t+1) x K */) {
  const std::uint32_t K = n / 2;
  std::vector<std::uint32_t> sigma(local_runs * n);
  std::vector<std::uint32_t> kcur(local_runs, 1);
  for (std::uint64_t w = 0; w < local_runs; ++w)
    for (std::uint32_t i = 0; i < n; ++i) sigma[w * n + i] = (i + 1) % n;

  std::vector<std::uint64_t> hist(K, 0);
  hist[0] = local_runs;  // everyone starts cyclic
  std::copy(hist.begin(), hist.end(), counts.begin());

  for (std::uint64_t t = 1; t <= max_t; ++t) {
    for (std::uint64_t w = 0; w < local_runs; ++w) {
      const auto i = static_cast<std::uint32_t>(rng.next_index(n) - 1);
      const auto j = static_cast<std::uint32_t>(rng.next_index(n) - 1);
      std::span<std::uint32_t> s(sigma.data() + w * n, n);
      const StepOutcome out = attempt_restricted_swap(s, i, j);
      if (out == StepOutcome::split || out == StepOutcome::joined) {
        const std::uint32_t old_k = kcur[w];
        const std::uint32_t new_k = (out == StepOutcome::split) ? old_k + 1 : old_k - 1;
        kcur[w] = new_k;
        --hist[old_k - 1];
        ++hist[new_k - 1];
#ifndef NDEBUG
        if (n <= 64) assert(new_k == cycle_count(std::span<const std::uint32_t>(s)));
#endif
      }
    }
    std::copy(hist.begin(), hist.end(), counts.begin() + t * K);
#ifndef NDEBUG
    std::uint64_t pooled = 0;
    for (std::uint64_t h : hist) pooled += h;
    assert(pooled == local_runs);
#endif
  }
}

// One worker's share of time-average-mode walks: each run keeps its own
// running state-visit counts; per-step distances are summed across runs.
void time_average_worker(std::uint32_t n, std::uint64_t local_runs, std::uint64_t max_t, Rng rng,
                         const std::vector<double>& nu, std::vector<double>& tv_sum) {
  const std::uint32_t K = n / 2;
  std::vector<std::uint32_t> sigma(n);
  std::vector<std::uint64_t> cum(K);
  for (std::uint64_t r = 0; r < local_runs; ++r) {
    for (std::uint32_t i = 0; i < n; ++i) sigma[i] = (i + 1) % n;
    std::fill(cum.begin(), cum.end(), 0);
    std::uint32_t k = 1;
    tv_sum[0] += 1.0 - nu[0];  // point mass at the cyclic start
    for (std::uint64_t t = 1; t <= max_t; ++t) {
      const auto i = static_cast<std::uint32_t>(rng.next_index(n) - 1);
      const auto j = static_cast<std::uint32_t>(rng.next_index(n) - 1);
      const StepOutcome out = attempt_restricted_swap(sigma, i, j);
      if (out == StepOutcome::split)
        ++k;
      else if (out == StepOutcome::joined)
        --k;
      ++cum[k - 1];
      double s = 0;
      const double inv = 1.0 / static_cast<double>(t);
      for (std::uint32_t b = 0; b < K; ++b)
        s += std::fabs(static_cast<double>(cum[b]) * inv - nu[b]);
      tv_sum[t] += 0.5 * s;
    }
  }
}

}  // namespace

MixingResult mixing_time(std::uint32_t n, double epsilon, std::uint64_t runs,
                         std::uint64_t max_t, std::uint64_t master_seed, unsigned workers,
                         TrajectoryAveraging averaging, std::uint64_t stream_base) {
  if (n < 4) throw std::invalid_argument("mixing_time: n must be >= 4");
  if (!(epsilon > 0.0)) throw std::invalid_argument("mixing_time: epsilon must be positive");
  if (runs < 1) throw std::invalid_argument("mixing_time: runs must be >= 1");
  if (workers < 1) throw std::invalid_argument("mixing_time: workers must be >= 1");

  const CycleCountDistribution nu = cycle_count_distribution(n);
  const std::uint32_t K = n / 2;
  const auto shares = split_shares(runs, workers);

  MixingResult res;
  res.n = n;
  res.epsilon = epsilon;
  res.runs = runs;
  res.trajectory.assign(max_t + 1, 0.0);

  if (averaging == TrajectoryAveraging::ensemble) {
    std::vector<std::vector<std::uint64_t>> per_worker(workers);
    run_workers(workers, [&](unsigned w) {
      per_worker[w].assign((max_t + 1) * K, 0);
      if (shares[w] > 0)
        ensemble_worker(n, shares[w], max_t, Rng::derive_stream(master_seed, stream_base + w),
                        per_worker[w]);
    });
    std::vector<std::uint64_t> pooled((max_t + 1) * K, 0);
    for (const auto& pc : per_worker)
      for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += pc[i];
    const double inv = 1.0 / static_cast<double>(runs);
    for (std::uint64_t t = 0; t <= max_t; ++t) {
      double s = 0;
      for (std::uint32_t b = 0; b < K; ++b)
        s += std::fabs(static_cast<double>(pooled[t * K + b]) * inv - nu.nu[b]);
      res.trajectory[t] = 0.5 * s;
    }
  } else {
    std::vector<std::vector<double>> per_worker(workers);
    run_workers(workers, [&](unsigned w) {
      per_worker[w].assign(max_t + 1, 0.0);
      if (shares[w] > 0)
        time_average_worker(n, shares[w], max_t, Rng::derive_stream(master_seed, stream_base + w),
                            nu.nu, per_worker[w]);
    });
    for (std::uint64_t t = 0; t <= max_t; ++t) {
      double s = 0;
      for (const auto& pw : per_worker) s += pw[t];
      res.trajectory[t] = s / static_cast<double>(runs);
    }
  }

  for (std::uint64_t t = 0; t <= max_t; ++t) {
    if (res.trajectory[t] < epsilon) {
      res.mixed = true;
      res.t_mix = static_cast<std::int64_t>(t);
      break;
    }
  }
  return res;
}

FitResult fit_mixing_law(std::span<const FitPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("fit_mixing_law: need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(points.size());
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.n >= 4) || !(p.t_mix > 0))
      throw std::invalid_argument("fit_mixing_law: points need n >= 4 and t_mix > 0");
    const double x = std::log(p.n);
    const double y = std::log(p.t_mix) - std::log(2.0 * std::log(p.n));
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (std::fabs(det) < 1e-12 * m * sxx)
    throw std::invalid_argument("fit_mixing_law: degenerate design matrix (need distinct n)");
  FitResult r;
  r.a = (m * sxy - sx * sy) / det;
  const double intercept = (sy - r.a * sx) / m;
  r.c = std::exp(intercept);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + r.a * xs[i]);
    r.residual += e * e;
  }
  return r;
}

double refined_failure_bound(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("refined_failure_bound: n must be >= 3");
  double prod = 1.0;
  for (std::uint32_t i = 1; i <= n - 1; ++i)
    prod /= 1.0 + 1.0 / (static_cast<double>(n - 2) * static_cast<double>(n - i));
  return prod / static_cast<double>(n - 1);
}

FailureReport failure_experiment_single(std::uint32_t n, std::uint64_t samples,
                                        std::uint64_t master_seed, unsigned workers,
                                        std::uint64_t stream_base) {
  if (n < 2) throw std::invalid_argument("failure_experiment: n must be >= 2");
  if (samples < 1) throw std::invalid_argument("failure_experiment: samples must be >= 1");
  const auto shares = split_shares(samples, workers);
  std::vector<std::uint64_t> fails(workers, 0);
  run_workers(workers, [&](unsigned w) {
    Rng rng = Rng::derive_stream(master_seed, stream_base + w);
    std::vector<std::uint32_t> im(n), pool(n), pos(n);
    std::uint64_t f = 0;
    for (std::uint64_t s = 0; s < shares[w]; ++s)
      if (!detail::sis_fill(im, pool, pos, rng)) ++f;
    fails[w] = f;
  });
  FailureReport rep;
  rep.n = n;
  rep.samples = samples;
  for (auto f : fails) rep.failures += f;
  rep.rate = static_cast<double>(rep.failures) / static_cast<double>(samples);
  rep.std_error = std::sqrt(rep.rate * (1.0 - rep.rate) / static_cast<double>(samples));
  rep.bound_one_over_n = 1.0 / static_cast<double>(n);
  rep.bound_refined = (n >= 3) ? refined_failure_bound(n) : 0.0;
  return rep;
}

std::vector<FailureReport> failure_experiment(std::span<const std::uint32_t> n_list,
                                              std::uint64_t samples, std::uint64_t master_seed,
                                              unsigned workers) {
  std::vector<FailureReport> out;
  out.reserve(n_list.size());
  for (std::size_t idx = 0; idx < n_list.size(); ++idx)
    out.push_back(failure_experiment_single(n_list[idx], samples, master_seed, workers,
                                            static_cast<std::uint64_t>(idx) * workers));
  return out;
}

GofResult chi_square_gof(const EmpiricalMeasure& m, const CycleCountDistribution& nu) {
  if (m.n() != nu.n) throw std::invalid_argument("chi_square_gof: n mismatch");
  if (m.total() == 0) throw std::invalid_argument("chi_square_gof: empty measure");
  const double total = static_cast<double>(m.total());
  const auto counts = m.counts();
  std::vector<double> obs(counts.begin(), counts.end());
  std::vector<double> expd(nu.nu.size());
  for (std::size_t i = 0; i < expd.size(); ++i) expd[i] = total * nu.nu[i];
  // Merge the right tail leftwards until every merged bin expects >= 5.
  while (expd.size() >= 2 && expd.back() < 5.0) {
    expd[expd.size() - 2] += expd.back();
    obs[obs.size() - 2] += obs.back();
    expd.pop_back();
    obs.pop_back();
  }
  if (expd.size() < 2 || expd.back() < 5.0)
    throw std::invalid_argument("chi_square_gof: fewer than 2 usable bins after merging");
  GofResult r;
  r.bins = static_cast<std::uint32_t>(expd.size());
  for (std::size_t i = 0; i < expd.size(); ++i) {
    const double d = obs[i] - expd[i];
    r.statistic += d * d / expd[i];
  }
  r.dof = r.bins - 1;
  r.p_value = chi_squared_sf(r.statistic, static_cast<double>(r.dof));
  return r;
}

UniformityResult uniformity_experiment(std::uint32_t n, std::uint64_t multiplier,
                                       SamplerKind sampler, std::uint64_t master_seed) {
  if (n < 4 || n > 11)
    throw std::invalid_argument("uniformity_experiment: supported range is 4 <= n <= 11");
  if (multiplier < 1) throw std::invalid_argument("uniformity_experiment: multiplier >= 1");

  const DerangementRanker ranker(n);
  const std::uint64_t dn = ranker.count();
  const std::uint64_t total = multiplier * dn;

  std::vector<std::uint32_t> occurrences(dn, 0);
  Rng rng(master_seed);
  std::vector<std::uint32_t> im(n), pool(n), pos(n);
  const std::uint64_t mix = 2 * static_cast<std::uint64_t>(n);
  for (std::uint64_t s = 0; s < total; ++s) {
    switch (sampler) {
      case SamplerKind::sis:
        while (!detail::sis_fill(im, pool, pos, rng)) {
        }
        break;
      case SamplerKind::rejection:
        detail::rejection_fill(im, rng);
        break;
      case SamplerKind::sattolo:
        detail::sattolo_fill(im, rng);
        break;
      case SamplerKind::walk: {
        for (std::uint32_t i = 0; i < n; ++i) im[i] = (i + 1) % n;
        for (std::uint64_t t = 0; t < mix; ++t) {
          const auto i = static_cast<std::uint32_t>(rng.next_index(n) - 1);
          const auto j = static_cast<std::uint32_t>(rng.next_index(n) - 1);
          try_restricted_swap(im, i, j);
        }
        break;
      }
    }
    ++occurrences[ranker.rank(im)];
  }

  UniformityResult res;
  res.n = n;
  res.multiplier = multiplier;
  res.dn = dn;
  res.total_samples = total;
  double sum = 0, sumsq = 0;
  std::uint32_t mn = occurrences[0], mx = occurrences[0];
  for (std::uint32_t c : occurrences) {
    sum += c;
    sumsq += static_cast<double>(c) * c;
    mn = std::min(mn, c);
    mx = std::max(mx, c);
  }
  const double mean = sum / static_cast<double>(dn);
  res.mean = mean;
  res.sd = std::sqrt(std::max(0.0, sumsq / static_cast<double>(dn) - mean * mean));
  res.min_count = mn;
  res.max_count = mx;
  res.full_coverage = mn > 0;
  std::vector<std::uint64_t> bins(static_cast<std::size_t>(mx / 5) + 1, 0);
  for (std::uint32_t c : occurrences) ++bins[c / 5];
  for (std::size_t b = 0; b < bins.size(); ++b)
    if (bins[b] > 0) res.histogram.emplace_back(b * 5, bins[b]);
  return res;
}

CollisionResult repeat_collision_check(std::uint32_t n, std::uint64_t samples,
                                       std::uint64_t master_seed) {
  if (n < 2) throw std::invalid_argument("repeat_collision_check: n must be >= 2");
  auto hash_images = [](std::span<const std::uint32_t> im) {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (std::uint32_t v : im) h = splitmix64_mix(h ^ (v + 1));
    return h;
  };

  // Pass 1: collect hashes of the one-line forms.
  std::vector<std::uint64_t> hashes(samples);
  {
    Rng rng(master_seed);
    std::vector<std::uint32_t> im(n), pool(n), pos(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
      while (!detail::sis_fill(im, pool, pos, rng)) {
      }
      hashes[s] = hash_images(im);
    }
  }
  std::vector<std::uint64_t> sorted = hashes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> dup_hashes;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && (dup_hashes.empty() || dup_hashes.back() != sorted[i]))
      dup_hashes.push_back(sorted[i]);

  CollisionResult res;
  res.n = n;
  res.samples = samples;
  if (dup_hashes.empty()) return res;

  // Pass 2: replay the same stream and compare the colliding samples exactly.
  std::unordered_map<std::string, std::uint64_t> exact;
  {
    Rng rng(master_seed);
    std::vector<std::uint32_t> im(n), pool(n), pos(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
      while (!detail::sis_fill(im, pool, pos, rng)) {
      }
      if (std::binary_search(dup_hashes.begin(), dup_hashes.end(), hashes[s])) {
        std::string key(reinterpret_cast<const char*>(im.data()),
                        im.size() * sizeof(std::uint32_t));
        ++exact[key];
      }
    }
  }
  for (const auto& [key, cnt] : exact)
    if (cnt > 1) res.repeats += cnt - 1;
  return res;
}

}  // namespace derange
