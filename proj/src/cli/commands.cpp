#include "derange/cli/commands.hpp"

#include "derange/cli/counting.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "derange/combinatorics.hpp"
#include "derange/rng.hpp"
#include "derange/samplers.hpp"
#include "derange/statistics.hpp"

namespace derange::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::lines: return "lines";
  }
  return "?";
}

// '#'-prefixed key/value preamble for csv and lines outputs.
class Preamble {
 public:
  Preamble(std::ostream& out, bool enabled) : out_(out), enabled_(enabled) {}
  void kv(std::string_view key, std::string_view value) {
    if (enabled_) out_ << "# " << key << ": " << value << "\n";
  }
  void kv(std::string_view key, std::uint64_t value) { kv(key, std::to_string(value)); }
  void kv(std::string_view key, double value) { kv(key, fmt(value)); }

 private:
  std::ostream& out_;
  bool enabled_;
};

json base_metadata(const std::string& command, const CommonConfig& c) {
  json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["seed_source"] = c.seed_from_entropy ? "entropy" : "explicit";
  j["workers"] = c.workers;
  return j;
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_common_preamble(Preamble& pre, const std::string& command, const CommonConfig& c) {
  pre.kv("command", command);
  pre.kv("seed", c.seed);
  pre.kv("seed_source", c.seed_from_entropy ? "entropy" : "explicit");
  pre.kv("workers", static_cast<std::uint64_t>(c.workers));
  pre.kv("format", format_name(c.format));
}

// Cycle-count sampling steps for table1 columns. Bin layout: bins 0..K-1 are
// cycle counts 1..K; for SIS one extra trailing bin counts failed attempts.
StepFactory walk_step_factory(std::uint32_t n, std::uint64_t mix) {
  return [n, mix]() -> StepFn {
    auto im = std::make_shared<std::vector<std::uint32_t>>(n);
    return [n, mix, im](StepContext& ctx) {
      auto& v = *im;
      for (std::uint32_t i = 0; i < n; ++i) v[i] = (i + 1) % n;
      for (std::uint64_t t = 0; t < mix; ++t) {
        const auto i = static_cast<std::uint32_t>(ctx.rng->next_index(n) - 1);
        const auto j = static_cast<std::uint32_t>(ctx.rng->next_index(n) - 1);
        try_restricted_swap(v, i, j);
      }
      ++ctx.counts[cycle_count(std::span<const std::uint32_t>(v)) - 1];
    };
  };
}

StepFactory sis_step_factory(std::uint32_t n) {
  return [n]() -> StepFn {
    auto im = std::make_shared<std::vector<std::uint32_t>>(n);
    auto pool = std::make_shared<std::vector<std::uint32_t>>(n);
    auto pos = std::make_shared<std::vector<std::uint32_t>>(n);
    return [n, im, pool, pos](StepContext& ctx) {
      for (;;) {
        if (detail::sis_fill(*im, *pool, *pos, *ctx.rng)) break;
        ++ctx.counts[ctx.counts.size() - 1];  // failed attempt
      }
      ++ctx.counts[cycle_count(std::span<const std::uint32_t>(*im)) - 1];
    };
  };
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "lines") return OutputFormat::lines;
  throw std::invalid_argument("unknown format '" + name + "' (csv|json|lines)");
}

double default_epsilon() { return 0.5 * std::exp(-1.0); }

// ----- exact ------------------------------------------------------------------

void cmd_exact(const ExactParams& p, const CommonConfig& c, std::ostream& out) {
  if (p.n < 2 || p.n > 1024)
    throw std::invalid_argument("exact: n must be in 2..1024");
  WallClock clock;
  const CycleCountDistribution dist = cycle_count_distribution(p.n);
  const BigCount dn = rencontres(p.n);
  const NormalApproximation na = normal_approximation_params(p.n);

  std::vector<BigCount> dnk(p.n / 2);
  for (std::uint32_t k = 1; k <= p.n / 2; ++k) dnk[k - 1] = dnk_recursion(p.n, k);

  const bool even = p.n % 2 == 0;
  const bool with_pm_prob = even && p.n >= 4;
  BigCount pm_count;
  double pm_exact = 0, pm_asym = 0;
  BigCount perm_odds;
  if (even) {
    pm_count = perfect_matching_count(p.n);
    perm_odds = factorial(p.n) / pm_count;  // odds a uniform permutation is a matching
  }
  if (with_pm_prob) {
    pm_exact = perfect_matching_probability(p.n, MatchingProbability::exact);
    pm_asym = perfect_matching_probability(p.n, MatchingProbability::asymptotic);
  }

  if (c.format == OutputFormat::json) {
    json j = base_metadata("exact", c);
    j["n"] = p.n;
    j["d_n"] = to_decimal(dn);
    json rows = json::array();
    for (std::uint32_t k = 1; k <= p.n / 2; ++k)
      rows.push_back({{"k", k}, {"d_n_k", to_decimal(dnk[k - 1])}, {"nu", dist.nu[k - 1]}});
    j["rows"] = std::move(rows);
    if (even) {
      j["perfect_matching_count"] = to_decimal(pm_count);
      j["permutation_matching_odds"] = to_decimal(perm_odds);
    }
    if (with_pm_prob) {
      j["perfect_matching_probability_exact"] = pm_exact;
      j["perfect_matching_probability_asymptotic"] = pm_asym;
    }
    j["normal_approximation"] = {{"exact_mean", na.exact_mean},
                                 {"exact_sd", na.exact_sd},
                                 {"approx_mean", na.approx_mean},
                                 {"approx_sd", na.approx_sd}};
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "exact", c);
  pre.kv("n", static_cast<std::uint64_t>(p.n));
  pre.kv("d_n", to_decimal(dn));
  if (even) {
    pre.kv("perfect_matching_count", to_decimal(pm_count));
    pre.kv("permutation_matching_odds", to_decimal(perm_odds));
  }
  if (with_pm_prob) {
    pre.kv("perfect_matching_probability_exact", pm_exact);
    pre.kv("perfect_matching_probability_asymptotic", pm_asym);
  }
  pre.kv("exact_mean", na.exact_mean);
  pre.kv("exact_sd", na.exact_sd);
  pre.kv("approx_mean", na.approx_mean);
  pre.kv("approx_sd", na.approx_sd);
  out << "k,d_n_k,nu\n";
  for (std::uint32_t k = 1; k <= p.n / 2; ++k)
    out << k << "," << to_decimal(dnk[k - 1]) << "," << fmt(dist.nu[k - 1]) << "\n";
}

// ----- sample -----------------------------------------------------------------

void cmd_sample(const SampleParams& p, const CommonConfig& c, std::ostream& out) {
  const std::string& alg = p.algorithm;
  if (alg != "t" && alg != "s" && alg != "sattolo" && alg != "reject" && alg != "matching")
    throw std::invalid_argument("sample: algorithm must be t|s|sattolo|reject|matching");
  if (p.count < 1) throw std::invalid_argument("sample: count must be >= 1");
  const std::uint64_t mix = p.mix ? p.mix : 2 * static_cast<std::uint64_t>(p.n);
  if (alg == "t" && p.n < 4) throw std::invalid_argument("sample: algorithm t needs n >= 4");
  if (alg == "matching" && (p.n < 4 || p.n % 2 != 0))
    throw std::invalid_argument("sample: matching needs even n >= 4");
  if ((alg == "s" || alg == "sattolo" || alg == "reject") && p.n < 2)
    throw std::invalid_argument("sample: n must be >= 2");

  WallClock clock;
  Rng rng(c.seed);
  std::uint64_t attempts = 0;  // SIS attempts including failures

  auto draw = [&](std::uint32_t /*unused*/) -> Permutation {
    if (alg == "t") {
      WalkConfig cfg;
      cfg.n = p.n;
      cfg.mix = mix;
      return restricted_transposition_walk(cfg, rng);
    }
    if (alg == "matching") return perfect_matching_sampler(p.n, mix, rng);
    if (alg == "sattolo") return sattolo(p.n, rng);
    if (alg == "reject") return rejection_sampler(p.n, rng);
    SisRetryOutcome o = sis_retry(p.n, rng);
    attempts += o.attempts;
    return std::move(o.result);
  };

  if (c.format == OutputFormat::json) {
    json j = base_metadata("sample", c);
    j["algorithm"] = alg;
    j["n"] = p.n;
    j["count"] = p.count;
    if (alg == "t" || alg == "matching") j["mix"] = mix;
    json perms = json::array();
    for (std::uint64_t s = 0; s < p.count; ++s) perms.push_back(draw(0).one_line());
    j["permutations"] = std::move(perms);
    if (alg == "s") {
      j["attempted"] = attempts;
      j["completed_attempted_ratio"] =
          static_cast<double>(p.count) / static_cast<double>(attempts);
    }
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "sample", c);
  pre.kv("algorithm", alg);
  pre.kv("n", static_cast<std::uint64_t>(p.n));
  pre.kv("count", p.count);
  if (alg == "t" || alg == "matching") pre.kv("mix", mix);

  if (c.format == OutputFormat::lines) {
    for (std::uint64_t s = 0; s < p.count; ++s) out << draw(0).one_line() << "\n";
  } else {
    out << "index,cycles,permutation\n";
    for (std::uint64_t s = 0; s < p.count; ++s) {
      Permutation perm = draw(0);
      out << s << "," << cycle_count(perm) << "," << perm.one_line() << "\n";
    }
  }
  if (alg == "s") {
    out << "# attempted: " << attempts << "\n";
    out << "# completed_attempted_ratio: "
        << fmt(static_cast<double>(p.count) / static_cast<double>(attempts)) << "\n";
  }
}

// ----- table1 -----------------------------------------------------------------

void cmd_table1(const Table1Params& p, const CommonConfig& c, std::ostream& out) {
  if (p.n < 4) throw std::invalid_argument("table1: n must be >= 4");
  if (p.count < 10'000) throw std::invalid_argument("table1: count must be >= 10000");
  std::vector<std::uint64_t> mixes = p.mix_list;
  if (mixes.empty()) mixes = {p.n, 2ull * p.n};

  WallClock clock;
  const CycleCountDistribution nu = cycle_count_distribution(p.n);
  const std::uint32_t K = p.n / 2;

  struct Column {
    std::string name;
    std::vector<std::uint64_t> counts;  // K bins
    std::uint64_t failed_attempts = 0;  // SIS only
    GofResult gof;
  };
  std::vector<Column> cols;

  std::uint64_t stream_base = 0;
  for (std::uint64_t mix : mixes) {
    const std::string key = "table1;n=" + std::to_string(p.n) + ";count=" +
                            std::to_string(p.count) + ";col=t_mix_" + std::to_string(mix) +
                            ";seed=" + std::to_string(c.seed) +
                            ";workers=" + std::to_string(c.workers);
    auto r = counting_experiment(key, K, p.count, c.seed, c.workers, stream_base,
                                 walk_step_factory(p.n, mix),
                                 p.checkpoint.empty() ? "" : p.checkpoint + ".t" +
                                                                std::to_string(mix));
    Column col;
    col.name = "t_mix_" + std::to_string(mix);
    col.counts = std::move(r.counts);
    cols.push_back(std::move(col));
    stream_base += c.workers;
  }
  {
    const std::string key = "table1;n=" + std::to_string(p.n) + ";count=" +
                            std::to_string(p.count) + ";col=s;seed=" + std::to_string(c.seed) +
                            ";workers=" + std::to_string(c.workers);
    auto r = counting_experiment(key, K + 1, p.count, c.seed, c.workers, stream_base,
                                 sis_step_factory(p.n),
                                 p.checkpoint.empty() ? "" : p.checkpoint + ".s");
    Column col;
    col.name = "s";
    col.failed_attempts = r.counts[K];
    r.counts.resize(K);
    col.counts = std::move(r.counts);
    cols.push_back(std::move(col));
  }

  for (auto& col : cols) {
    EmpiricalMeasure m(p.n);
    for (std::uint32_t k = 1; k <= K; ++k)
      if (col.counts[k - 1]) m.add_cycle_count(k, col.counts[k - 1]);
    col.gof = chi_square_gof(m, nu);
  }

  const double s_ratio =
      static_cast<double>(p.count) /
      static_cast<double>(p.count + cols.back().failed_attempts);

  if (c.format == OutputFormat::json) {
    json j = base_metadata("table1", c);
    j["n"] = p.n;
    j["count"] = p.count;
    j["mix_list"] = mixes;
    json rows = json::array();
    for (std::uint32_t k = 1; k <= K; ++k) {
      json row;
      row["k"] = k;
      for (const auto& col : cols)
        row[col.name] =
            static_cast<double>(col.counts[k - 1]) / static_cast<double>(p.count);
      row["exact"] = nu.nu[k - 1];
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    json gofs;
    for (const auto& col : cols)
      gofs[col.name] = {{"statistic", col.gof.statistic},
                        {"dof", col.gof.dof},
                        {"p_value", col.gof.p_value}};
    j["chi_square"] = std::move(gofs);
    j["s_completed_attempted_ratio"] = s_ratio;
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "table1", c);
  pre.kv("n", static_cast<std::uint64_t>(p.n));
  pre.kv("count", p.count);
  for (const auto& col : cols)
    pre.kv("chi2_p_" + col.name, col.gof.p_value);
  pre.kv("s_completed_attempted_ratio", s_ratio);
  out << "k";
  for (const auto& col : cols) out << "," << col.name;
  out << ",exact\n";
  for (std::uint32_t k = 1; k <= K; ++k) {
    out << k;
    for (const auto& col : cols)
      out << ","
          << fmt(static_cast<double>(col.counts[k - 1]) / static_cast<double>(p.count));
    out << "," << fmt(nu.nu[k - 1]) << "\n";
  }
}

// ----- mixing -----------------------------------------------------------------

void cmd_mixing(const MixingParams& p, const CommonConfig& c, std::ostream& out) {
  if (p.n_list.empty()) throw std::invalid_argument("mixing: need at least one n");
  if (p.runs < 1000) throw std::invalid_argument("mixing: runs must be >= 1000");
  const double eps = (p.epsilon > 0) ? p.epsilon : default_epsilon();

  WallClock clock;
  std::vector<MixingResult> results;
  std::uint64_t stream_base = 0;
  for (std::uint32_t n : p.n_list) {
    const std::uint64_t max_t =
        p.max_t ? p.max_t
                : static_cast<std::uint64_t>(
                      std::ceil(8.0 * std::sqrt(static_cast<double>(n)) * std::log(n)));
    MixingResult r = mixing_time(n, eps, p.runs, max_t, c.seed, c.workers,
                                 TrajectoryAveraging::time_average, stream_base);
    results.push_back(std::move(r));
    stream_base += c.workers;
  }

  std::vector<FitPoint> pts;
  for (const auto& r : results)
    if (r.mixed && r.t_mix >= 1) pts.push_back({static_cast<double>(r.n),
                                                static_cast<double>(r.t_mix)});
  std::optional<FitResult> fit;
  if (pts.size() >= 2) {
    bool distinct = false;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].n != pts[0].n) distinct = true;
    if (distinct) fit = fit_mixing_law(pts);
  }

  auto sqrt_law = [](std::uint32_t n) {
    return std::llround(std::sqrt(static_cast<double>(n)) * 2.0 * std::log(n));
  };
  auto exponent_a = [](const MixingResult& r) {
    return std::log(static_cast<double>(r.t_mix)) / std::log(static_cast<double>(r.n)) -
           std::log(2.0 * std::log(static_cast<double>(r.n))) /
               std::log(static_cast<double>(r.n));
  };

  if (c.format == OutputFormat::json) {
    json j = base_metadata("mixing", c);
    j["epsilon"] = eps;
    j["runs"] = p.runs;
    json rows = json::array();
    for (const auto& r : results) {
      json row;
      row["n"] = r.n;
      row["mixed"] = r.mixed;
      row["t_mix"] = r.t_mix;
      row["sqrt_n_log_n2"] = sqrt_law(r.n);
      if (r.mixed && r.t_mix >= 1) row["exponent_a"] = exponent_a(r);
      row["trajectory"] = r.trajectory;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (fit)
      j["fit"] = {{"a", fit->a}, {"c", fit->c}, {"residual", fit->residual}};
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "mixing", c);
  pre.kv("epsilon", eps);
  pre.kv("runs", p.runs);
  if (fit) {
    pre.kv("fit_a", fit->a);
    pre.kv("fit_c", fit->c);
    pre.kv("fit_residual", fit->residual);
  }
  out << "n,mixed,t_mix,sqrt_n_log_n2,exponent_a\n";
  for (const auto& r : results) {
    out << r.n << "," << (r.mixed ? 1 : 0) << "," << r.t_mix << "," << sqrt_law(r.n) << ",";
    if (r.mixed && r.t_mix >= 1) out << fmt(exponent_a(r));
    out << "\n";
  }

  std::ofstream traj_file;
  std::ostream* traj_out = &out;
  if (!p.trajectory_output.empty()) {
    traj_file.open(p.trajectory_output, std::ios::trunc);
    if (!traj_file) throw std::invalid_argument("mixing: cannot open trajectory output file");
    traj_out = &traj_file;
  } else {
    out << "\n";
  }
  *traj_out << "n,t,d_tv\n";
  for (const auto& r : results)
    for (std::size_t t = 0; t < r.trajectory.size(); ++t)
      *traj_out << r.n << "," << t << "," << fmt(r.trajectory[t]) << "\n";
}

// ----- failure ----------------------------------------------------------------

void cmd_failure(const FailureParams& p, const CommonConfig& c, std::ostream& out) {
  if (p.n_list.empty()) throw std::invalid_argument("failure: need at least one n");
  if (p.samples < 10'000) throw std::invalid_argument("failure: samples must be >= 10000");

  WallClock clock;
  std::vector<FailureReport> reports;
  std::uint64_t stream_base = 0;
  for (std::uint32_t n : p.n_list) {
    if (n < 2) throw std::invalid_argument("failure: every n must be >= 2");
    const std::string key = "failure;n=" + std::to_string(n) + ";samples=" +
                            std::to_string(p.samples) + ";seed=" + std::to_string(c.seed) +
                            ";workers=" + std::to_string(c.workers);
    auto r = counting_experiment(
        key, 1, p.samples, c.seed, c.workers, stream_base,
        [n]() -> StepFn {
          auto im = std::make_shared<std::vector<std::uint32_t>>(n);
          auto pool = std::make_shared<std::vector<std::uint32_t>>(n);
          auto pos = std::make_shared<std::vector<std::uint32_t>>(n);
          return [im, pool, pos](StepContext& ctx) {
            if (!detail::sis_fill(*im, *pool, *pos, *ctx.rng)) ++ctx.counts[0];
          };
        },
        p.checkpoint.empty() ? "" : p.checkpoint + ".n" + std::to_string(n));
    FailureReport rep;
    rep.n = n;
    rep.samples = p.samples;
    rep.failures = r.counts[0];
    rep.rate = static_cast<double>(rep.failures) / static_cast<double>(p.samples);
    rep.std_error = std::sqrt(rep.rate * (1.0 - rep.rate) / static_cast<double>(p.samples));
    rep.bound_one_over_n = 1.0 / n;
    rep.bound_refined = (n >= 3) ? refined_failure_bound(n) : 0.0;
    reports.push_back(rep);
    stream_base += c.workers;
  }

  if (c.format == OutputFormat::json) {
    json j = base_metadata("failure", c);
    j["samples"] = p.samples;
    json rows = json::array();
    for (const auto& r : reports)
      rows.push_back({{"n", r.n},
                      {"samples", r.samples},
                      {"failures", r.failures},
                      {"rate", r.rate},
                      {"std_error", r.std_error},
                      {"one_over_n", r.bound_one_over_n},
                      {"refined_bound", r.bound_refined}});
    j["rows"] = std::move(rows);
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "failure", c);
  pre.kv("samples", p.samples);
  out << "n,samples,failures,rate,std_error,one_over_n,refined_bound\n";
  for (const auto& r : reports)
    out << r.n << "," << r.samples << "," << r.failures << "," << fmt(r.rate) << ","
        << fmt(r.std_error) << "," << fmt(r.bound_one_over_n) << "," << fmt(r.bound_refined)
        << "\n";
}

// ----- uniformity ---------------------------------------------------------------

void cmd_uniformity(const UniformityParams& p, const CommonConfig& c, std::ostream& out) {
  SamplerKind kind;
  if (p.sampler == "s")
    kind = SamplerKind::sis;
  else if (p.sampler == "reject")
    kind = SamplerKind::rejection;
  else if (p.sampler == "t")
    kind = SamplerKind::walk;
  else if (p.sampler == "sattolo")
    kind = SamplerKind::sattolo;
  else
    throw std::invalid_argument("uniformity: sampler must be s|reject|t|sattolo");
  if (p.n < 4 || p.n > 11) throw std::invalid_argument("uniformity: n must be in 4..11");

  WallClock clock;
  const UniformityResult r = uniformity_experiment(p.n, p.multiplier, kind, c.seed);

  if (c.format == OutputFormat::json) {
    json j = base_metadata("uniformity", c);
    j["n"] = r.n;
    j["sampler"] = p.sampler;
    j["multiplier"] = r.multiplier;
    j["d_n"] = r.dn;
    j["total_samples"] = r.total_samples;
    j["mean"] = r.mean;
    j["sd"] = r.sd;
    j["min_count"] = r.min_count;
    j["max_count"] = r.max_count;
    j["full_coverage"] = r.full_coverage;
    json rows = json::array();
    for (const auto& [lo, cnt] : r.histogram) rows.push_back({{"bin_start", lo}, {"count", cnt}});
    j["histogram"] = std::move(rows);
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "uniformity", c);
  pre.kv("n", static_cast<std::uint64_t>(p.n));
  pre.kv("sampler", p.sampler);
  pre.kv("multiplier", r.multiplier);
  pre.kv("d_n", r.dn);
  pre.kv("total_samples", r.total_samples);
  pre.kv("mean", r.mean);
  pre.kv("sd", r.sd);
  pre.kv("min_count", static_cast<std::uint64_t>(r.min_count));
  pre.kv("max_count", static_cast<std::uint64_t>(r.max_count));
  pre.kv("full_coverage", r.full_coverage ? "true" : "false");
  out << "bin_start,count\n";
  for (const auto& [lo, cnt] : r.histogram) out << lo << "," << cnt << "\n";
}

// ----- collisions ----------------------------------------------------------------

void cmd_collisions(const CollisionParams& p, const CommonConfig& c, std::ostream& out) {
  if (p.n < 4) throw std::invalid_argument("collisions: n must be >= 4");
  if (p.samples < 1) throw std::invalid_argument("collisions: samples must be >= 1");

  WallClock clock;
  const CollisionResult r = repeat_collision_check(p.n, p.samples, c.seed);
  const BigCount dn = rencontres(p.n);

  if (c.format == OutputFormat::json) {
    json j = base_metadata("collisions", c);
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["repeats"] = r.repeats;
    j["d_n"] = to_decimal(dn);
    j["wall_time_s"] = clock.seconds();
    out << j.dump(2) << "\n";
    return;
  }

  Preamble pre(out, true);
  emit_common_preamble(pre, "collisions", c);
  pre.kv("d_n", to_decimal(dn));
  out << "n,samples,repeats\n";
  out << r.n << "," << r.samples << "," << r.repeats << "\n";
}

}  // namespace derange::cli
