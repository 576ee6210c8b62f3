#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "derange/combinatorics.hpp"
#include "derange/permutation.hpp"
#include "derange/rng.hpp"
#include "derange/samplers.hpp"

using namespace derange;

namespace {

Permutation perm(std::initializer_list<std::uint32_t> one_based) {
  std::vector<std::uint32_t> v(one_based);
  return Permutation::from_one_line(v);
}

double binom_sigma(double p, double n) { return std::sqrt(n * p * (1 - p)); }

}  // namespace

TEST_CASE("fixed initial derangements") {
  CHECK(cyclic_derangement(4).one_line() == "2 3 4 1");
  CHECK(cycle_count(cyclic_derangement(9)) == 1);
  CHECK(adjacent_involution(6).one_line() == "2 1 4 3 6 5");
  CHECK(is_fixed_point_free_involution(adjacent_involution(10)));
  CHECK_THROWS_AS(adjacent_involution(5), std::invalid_argument);
}

TEST_CASE("sattolo basics") {
  Rng rng(1);
  CHECK(sattolo(2, rng).one_line() == "2 1");
  for (int rep = 0; rep < 100; ++rep) {
    const Permutation p = sattolo(12, rng);
    CHECK(cycle_count(p) == 1);
    CHECK(is_derangement(p));
  }
  const std::uint64_t before = rng.index_draws();
  sattolo(37, rng);
  CHECK(rng.index_draws() - before == 36);  // exactly n-1 draws
}

TEST_CASE("sattolo is uniform over the 6 cyclic derangements of 4 labels") {
  Rng rng(2);
  std::map<std::string, std::uint64_t> freq;
  const std::uint64_t N = 1'000'000;
  for (std::uint64_t i = 0; i < N; ++i) ++freq[sattolo(4, rng).one_line()];
  CHECK(freq.size() == 6);  // [4 1] = 3! = 6
  const double expect = N / 6.0, s = binom_sigma(1.0 / 6, N);
  for (const auto& [line, count] : freq)
    CHECK(std::fabs(static_cast<double>(count) - expect) < 5 * s);
}

TEST_CASE("restricted swap: the admissibility condition") {
  // sigma = 2341, proposal (i=1, j=2) in 1-based terms: sigma_1 = 2 = j, rejected
  std::vector<std::uint32_t> im = {1, 2, 3, 0};
  CHECK(attempt_restricted_swap(im, 0, 1) == StepOutcome::rejected);
  CHECK(im == std::vector<std::uint32_t>{1, 2, 3, 0});
  // proposal (i=1, j=3): both clauses pass, swap gives 4321
  CHECK(attempt_restricted_swap(im, 0, 2) == StepOutcome::split);
  CHECK(Permutation::from_images(im).one_line() == "4 3 2 1");
  CHECK(is_derangement(im));
  // i == j is vacuous but allowed
  CHECK(attempt_restricted_swap(im, 1, 1) == StepOutcome::vacuous);
}

TEST_CASE("walk consumes exactly 2*mix index draws") {
  Rng rng(3);
  WalkConfig cfg;
  cfg.n = 16;
  cfg.mix = 100;
  const std::uint64_t before = rng.index_draws();
  restricted_transposition_walk(cfg, rng);
  CHECK(rng.index_draws() - before == 200);
}

TEST_CASE("walk validation") {
  Rng rng(4);
  WalkConfig cfg;
  cfg.n = 3;
  cfg.mix = 10;
  CHECK_THROWS_AS(restricted_transposition_walk(cfg, rng), std::invalid_argument);
  cfg.n = 8;
  cfg.mix = 3;  // below ceil(n/2) with the cyclic start
  CHECK_THROWS_AS(restricted_transposition_walk(cfg, rng), std::invalid_argument);
  cfg.mix = 4;
  CHECK(is_derangement(restricted_transposition_walk(cfg, rng)));
  cfg.initial = WalkConfig::Initial::involution;
  cfg.n = 7;
  CHECK_THROWS_AS(restricted_transposition_walk(cfg, rng), std::invalid_argument);
  cfg.initial = WalkConfig::Initial::given;
  cfg.n = 4;
  cfg.start = Permutation::identity(4);
  CHECK_THROWS_AS(restricted_transposition_walk(cfg, rng), std::invalid_argument);
}

TEST_CASE("walk closure: output is a derangement for any mix and start") {
  Rng rng(5);
  for (std::uint32_t n : {4u, 5u, 8u, 17u, 33u, 64u}) {
    for (std::uint64_t mix : {0ull, 1ull, 3ull, 10ull, 100ull}) {
      WalkConfig cfg;
      cfg.n = n;
      cfg.mix = mix;
      cfg.initial = WalkConfig::Initial::given;
      cfg.start = rejection_sampler(n, rng);
      const Permutation out = restricted_transposition_walk(cfg, rng);
      CHECK(is_derangement(out));
    }
  }
}

TEST_CASE("walk reachability: k-1 accepted splits reach every cycle count") {
  for (std::uint32_t n : {6u, 9u, 16u}) {
    std::vector<std::uint32_t> im(n);
    for (std::uint32_t i = 0; i < n; ++i) im[i] = (i + 1) % n;
    std::uint32_t k = 1;
    while (k < n / 2) {
      bool advanced = false;
      for (std::uint32_t i = 0; i < n && !advanced; ++i) {
        for (std::uint32_t j = i + 1; j < n && !advanced; ++j) {
          if (im[i] == j || im[j] == i) continue;
          if (!same_cycle(im, i, j)) continue;
          CHECK(attempt_restricted_swap(im, i, j) == StepOutcome::split);
          ++k;
          CHECK(cycle_count(im) == k);
          CHECK(is_derangement(im));
          advanced = true;
        }
      }
      REQUIRE(advanced);
    }
    CHECK(k == n / 2);
  }
}

TEST_CASE("matching walk stays inside the involution class") {
  Rng rng(6);
  for (int rep = 0; rep < 10'000; ++rep) {
    const Permutation p = perfect_matching_sampler(8, 16, rng);
    REQUIRE(is_fixed_point_free_involution(p));
  }
}

TEST_CASE("matching walk is uniform over the 3 matchings of 4 labels") {
  Rng rng(7);
  std::map<std::string, std::uint64_t> freq;
  const std::uint64_t N = 300'000;
  for (std::uint64_t i = 0; i < N; ++i) ++freq[perfect_matching_sampler(4, 8, rng).one_line()];
  CHECK(freq.size() == 3);
  const double s = binom_sigma(1.0 / 3, N);
  for (const auto& [line, count] : freq)
    CHECK(std::fabs(static_cast<double>(count) - N / 3.0) < 5 * s);
}

TEST_CASE("matching walk covers essentially all 945 matchings of 10 labels") {
  Rng rng(8);
  std::set<std::string> seen;
  for (int i = 0; i < 1'000'000; ++i) seen.insert(perfect_matching_sampler(10, 20, rng).one_line());
  CHECK(perfect_matching_count(10) == 945);
  CHECK(seen.size() >= 940);
  CHECK(seen.size() <= 945);
}

TEST_CASE("sis: n=2 always completes with 21") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const SisOutcome o = sis_derangement(2, rng);
    REQUIRE(!o.failed());
    CHECK(o.result->one_line() == "2 1");
  }
}

TEST_CASE("sis: exact outcome probabilities at n=3") {
  Rng rng(10);
  const std::uint64_t N = 1'000'000;
  std::uint64_t c312 = 0, c231 = 0, cfail = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    const SisOutcome o = sis_derangement(3, rng);
    if (o.failed())
      ++cfail;
    else if (o.result->one_line() == "3 1 2")
      ++c312;
    else if (o.result->one_line() == "2 3 1")
      ++c231;
    else
      FAIL("unexpected derangement");
  }
  CHECK(std::fabs(c312 - N * 0.50) < 5 * binom_sigma(0.50, N));
  CHECK(std::fabs(c231 - N * 0.25) < 5 * binom_sigma(0.25, N));
  CHECK(std::fabs(cfail - N * 0.25) < 5 * binom_sigma(0.25, N));
}

TEST_CASE("sis outputs are derangements and draw counts are recorded") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const SisOutcome o = sis_derangement(16, rng);
    if (!o.failed()) {
      CHECK(is_derangement(*o.result));
      CHECK(o.draws >= 15);
    } else {
      CHECK(o.draws >= 15);
    }
  }
}

TEST_CASE("sis_retry reports attempts") {
  Rng rng(12);
  std::uint64_t attempts = 0;
  const std::uint64_t N = 200'000;
  for (std::uint64_t i = 0; i < N; ++i) {
    const SisRetryOutcome o = sis_retry(3, rng);
    CHECK(is_derangement(o.result));
    attempts += o.attempts;
  }
  // completed/attempted ratio should be ~3/4 at n=3
  const double ratio = static_cast<double>(N) / static_cast<double>(attempts);
  CHECK(std::fabs(ratio - 0.75) < 0.005);
}

TEST_CASE("rejection sampler: uniform over D_3 and correct acceptance rate at n=12") {
  Rng rng(13);
  std::uint64_t c231 = 0, c312 = 0;
  const std::uint64_t N = 200'000;
  for (std::uint64_t i = 0; i < N; ++i) {
    const Permutation p = rejection_sampler(3, rng);
    CHECK(is_derangement(p));
    if (p.one_line() == "2 3 1")
      ++c231;
    else
      ++c312;
  }
  CHECK(std::fabs(c231 - N * 0.5) < 5 * binom_sigma(0.5, N));

  // acceptance rate over 10^6 uniform permutations of 12 labels
  const double p_accept = ratio_to_double(rencontres(12), factorial(12));
  std::uint64_t accepted = 0;
  const std::uint64_t M = 1'000'000;
  std::vector<std::uint32_t> buf(12);
  for (std::uint64_t i = 0; i < M; ++i) {
    detail::fisher_yates_fill(buf, rng);
    if (is_derangement(buf)) ++accepted;
  }
  CHECK(std::fabs(static_cast<double>(accepted) - M * p_accept) <
        5 * binom_sigma(p_accept, M));
  CHECK(p_accept == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}
