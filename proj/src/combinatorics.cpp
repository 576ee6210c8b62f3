#include "derange/combinatorics.hpp"

#include <cassert>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "derange/errors.hpp"

namespace derange {
namespace {

// Bottom-up triangles, grown on demand and only appended to. Guarded by a
// mutex; construction cost dwarfs the lock overhead and read access after
// warm-up is contention-free in practice (experiments look values up once).
class Tables {
 public:
  static Tables& instance() {
    static Tables t;
    return t;
  }

  BigCount rencontres(std::uint32_t n) {
    std::scoped_lock lock(mu_);
    grow_rencontres(n);
    return d_[n];
  }

  BigCount stirling(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0;
    std::scoped_lock lock(mu_);
    grow_stirling(n);
    return s_[n][k];
  }

  BigCount dnk(std::uint32_t n, std::uint32_t k) {
    if (k > n / 2) return 0;
    std::scoped_lock lock(mu_);
    grow_dnk(n);
    return dk_[n][k];
  }

 private:
  Tables() {
    d_ = {BigCount(1), BigCount(0)};
    s_.push_back({BigCount(1)});
  }

  void grow_rencontres(std::uint32_t n) {
    while (d_.size() <= n) {
      std::size_t m = d_.size() - 1;  // have d_0..d_m, compute d_{m+1}
      d_.push_back(BigCount(m) * (d_[m] + d_[m - 1]));
    }
  }

  // [n+1 k] = n [n k] + [n k-1]; [0 0] = 1, [n 0] = 0 for n >= 1.
  void grow_stirling(std::uint32_t n) {
    while (s_.size() <= n) {
      std::size_t m = s_.size() - 1;  // rows 0..m present, build row m+1
      const auto& prev = s_[m];
      std::vector<BigCount> row(m + 2);
      row[0] = 0;
      for (std::size_t k = 1; k <= m + 1; ++k) {
        BigCount v = (k <= m) ? BigCount(BigCount(m) * prev[k]) : BigCount(0);
        v += prev[k - 1];
        row[k] = v;
      }
      s_.push_back(std::move(row));
    }
  }

  // d_{n+1}^(k) = n (d_n^(k) + d_{n-1}^(k-1)); d_0^(0) = 1, d_n^(0) = 0 for
  // n >= 1, d_n^(k) = 0 for k > floor(n/2). Row n stores k = 0..floor(n/2).
  void grow_dnk(std::uint32_t n) {
    if (dk_.empty()) {
      dk_.push_back({BigCount(1)});     // n = 0
      dk_.push_back({BigCount(0)});     // n = 1
    }
    while (dk_.size() <= n) {
      std::size_t m = dk_.size() - 1;  // rows 0..m, build row m+1
      const auto& rm = dk_[m];
      const auto& rp = dk_[m - 1];
      std::vector<BigCount> row((m + 1) / 2 + 1);
      row[0] = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        BigCount v = (k < rm.size()) ? rm[k] : BigCount(0);
        if (k - 1 < rp.size()) v += rp[k - 1];
        row[k] = BigCount(m) * v;
      }
      dk_.push_back(std::move(row));
    }
  }

  std::mutex mu_;
  std::vector<BigCount> d_;
  std::vector<std::vector<BigCount>> s_;
  std::vector<std::vector<BigCount>> dk_;
};

}  // namespace

BigCount rencontres(std::uint32_t n) { return Tables::instance().rencontres(n); }

BigCount stirling_first_unsigned(std::uint32_t n, std::uint32_t k) {
  return Tables::instance().stirling(n, k);
}

BigCount dnk_inclusion_exclusion(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  auto& tables = Tables::instance();
  BigCount sum = 0;  // signed partial sums
  for (std::uint32_t j = 0; j <= k; ++j) {
    BigCount term = binomial(n, j) * tables.stirling(n - j, k - j);
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sgn(sum) < 0)
    throw internal_consistency_error("dnk_inclusion_exclusion: negative total for n=" +
                                     std::to_string(n) + " k=" + std::to_string(k));
  return sum;
}

BigCount dnk_recursion(std::uint32_t n, std::uint32_t k) { return Tables::instance().dnk(n, k); }

CycleCountDistribution cycle_count_distribution(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("cycle_count_distribution: n must be >= 2");
  const BigCount dn = rencontres(n);
  CycleCountDistribution dist;
  dist.n = n;
  dist.nu.resize(n / 2);
  for (std::uint32_t k = 1; k <= n / 2; ++k) {
    BigCount via_rec = dnk_recursion(n, k);
    BigCount via_ie = dnk_inclusion_exclusion(n, k);
    if (via_rec != via_ie)
      throw internal_consistency_error("d_n^(k) routes disagree at n=" + std::to_string(n) +
                                       " k=" + std::to_string(k));
    dist.nu[k - 1] = ratio_to_double(via_rec, dn);
  }
  return dist;
}

BigCount cauchy_count(const CycleType& type) {
  const std::uint64_t n = type.weighted_sum();
  if (n == 0 || n > (1u << 24))
    throw std::invalid_argument("cauchy_count: cycle type has invalid weight");
  if (type.a.size() > n)
    throw std::invalid_argument("cauchy_count: type vector longer than sum of k*a_k");
  BigCount den = 1;
  for (std::size_t k = 1; k <= type.a.size(); ++k) {
    const std::uint32_t ak = type.a[k - 1];
    if (ak == 0) continue;
    BigCount kp;
    mpz_ui_pow_ui(kp.get_mpz_t(), k, ak);
    den *= kp * factorial(ak);
  }
  BigCount num = factorial(static_cast<std::uint32_t>(n));
  assert(num % den == 0);
  return num / den;
}

BigCount perfect_matching_count(std::uint32_t n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("perfect_matching_count: n must be even and >= 2");
  BigCount r = factorial(n);
  BigCount pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n / 2);
  r /= pow2 * factorial(n / 2);
  return r;
}

double perfect_matching_probability(std::uint32_t n, MatchingProbability mode) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("perfect_matching_probability: n must be even and >= 4");
  if (mode == MatchingProbability::exact)
    return ratio_to_double(perfect_matching_count(n), rencontres(n));
  // (e / sqrt(pi n)) sqrt((e/n)^n), evaluated in log space to avoid underflow.
  const double ln = std::log(static_cast<double>(n));
  return std::exp(1.0 - 0.5 * std::log(M_PI * n) + 0.5 * n * (1.0 - ln));
}

std::vector<double> cycle_count_distribution_fp(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("cycle_count_distribution_fp: n must be >= 2");
  // Same recursion as dnk_recursion but on ratios nu_m(k) = d_m^(k)/d_m:
  //   nu_{m+1}(k) = (nu_m(k) + rho_m nu_{m-1}(k-1)) / (1 + rho_m)
  // with rho_m = d_{m-1}/d_m, rho_{m+1} = 1/(m (1 + rho_m)), rho_2 = 0.
  // All quantities stay in [0,1]; the update is a convex combination, so
  // rounding errors do not amplify.
  const std::size_t half = n / 2;
  std::vector<double> prev(half + 1, 0.0);  // nu_1 (d_1 = 0; unused since rho_2 = 0)
  std::vector<double> cur(half + 1, 0.0);   // nu_2
  cur[1] = 1.0;
  double rho = 0.0;  // rho_2
  for (std::uint32_t m = 2; m < n; ++m) {
    std::vector<double> next(half + 1, 0.0);
    const double scale = 1.0 / (1.0 + rho);
    for (std::size_t k = 1; k <= std::min<std::size_t>(half, (m + 1) / 2); ++k)
      next[k] = (cur[k] + rho * prev[k - 1]) * scale;
    rho = 1.0 / (m * (1.0 + rho));
    prev.swap(cur);
    cur.swap(next);
  }
  return std::vector<double>(cur.begin() + 1, cur.end());
}

NormalApproximation normal_approximation_params(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("normal_approximation_params: n must be >= 2");
  std::vector<double> nu;
  if (n <= kExactDistributionCap) {
    nu = cycle_count_distribution(n).nu;
  } else {
    nu = cycle_count_distribution_fp(n);
  }
  double m1 = 0, m2 = 0;
  for (std::size_t k = 1; k <= nu.size(); ++k) {
    m1 += static_cast<double>(k) * nu[k - 1];
    m2 += static_cast<double>(k) * static_cast<double>(k) * nu[k - 1];
  }
  NormalApproximation out;
  out.exact_mean = m1;
  out.exact_sd = std::sqrt(std::max(0.0, m2 - m1 * m1));
  out.approx_mean = std::log(static_cast<double>(n));
  out.approx_sd = std::sqrt(out.approx_mean);
  return out;
}

}  // namespace derange
