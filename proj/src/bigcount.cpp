#include "derange/bigcount.hpp"

#include <cmath>
#include <stdexcept>

namespace derange {

BigCount factorial(std::uint32_t n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigCount binomial(std::uint32_t n, std::uint32_t k) {
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount double_factorial_odd(std::uint32_t n) {
  BigCount r = 1;
  for (std::uint32_t t = n; t >= 2; t -= 2) r *= t;
  return r;
}

double ratio_to_double(const BigCount& num, const BigCount& den) {
  if (sgn(den) <= 0) throw std::invalid_argument("ratio_to_double: denominator must be positive");
  if (sgn(num) < 0 || num > den)
    throw std::invalid_argument("ratio_to_double: ratio must lie in [0, 1]");
  // q = round(num * 2^64 / den), then q * 2^-64.
  BigCount q = num << 65;
  q /= den;
  q += 1;
  q >>= 1;
  // q <= 2^64; mpz -> double is exact for q < 2^53 and correctly truncated
  // above, leaving the overall error below one double ulp of the ratio.
  return std::ldexp(q.get_d(), -64);
}

std::string to_decimal(const BigCount& v) { return v.get_str(); }

}  // namespace derange
